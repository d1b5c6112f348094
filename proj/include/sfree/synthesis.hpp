#ifndef SFREE_SYNTHESIS_HPP
#define SFREE_SYNTHESIS_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "sfree/dfa.hpp"
#include "sfree/homomorphism.hpp"
#include "sfree/local_divisor.hpp"
#include "sfree/monoid.hpp"
#include "sfree/sf_expr.hpp"

namespace sfree {

// Token used for monoid element `x` when elements act as letters.
std::string element_token(Element x);

// Re-reads an expression over a sub-alphabet B as an expression over
// A ⊇ B: every All (denoting B*) becomes All \ ⋃_{b ∈ A∖B} All.b.All.
// Throws AlphabetError if `e` mentions a letter outside B or B ⊄ A.
SfExpr embed_expr(const SfExpr& e, const Alphabet& sub, const Alphabet& full);

struct SynthesisOptions {
	bool simplify = true;
	std::size_t max_monoid = default_monoid_cap;
};

struct SynthesisStats {
	std::size_t calls = 0;       // synthesize invocations, memo hits included
	std::size_t memo_hits = 0;
	std::size_t max_depth = 0;
	std::size_t local_divisors = 0;
};

// One synthesis computation. Results are memoized per (monoid table,
// alphabet, letter images, target), so a context must not be shared between
// threads; separate contexts are independent.
class Synthesizer {
public:
	explicit Synthesizer(SynthesisOptions options = {}) : options_(options) {}

	// Star-free expression over h.alphabet() denoting phi^-1(p).
	// Throws SynthesisError if the monoid is not aperiodic or p is not an
	// element, CapacityError if the monoid exceeds the cap.
	SfExpr synthesize(const Homomorphism& h, Element p);

	// Translation of an expression over T = phi(B*) (letters are element
	// tokens) into the words of (B*c)* it describes, c being letter `c` of
	// h's alphabet and B the remaining letters.
	SfExpr sigma_inverse(const SfExpr& k, const Homomorphism& h, Letter c);

	struct MemoEntry {
		Homomorphism morphism;
		Element target;
		SfExpr expression;
	};
	// Every distinct (morphism, target) solved so far, in first-solve order.
	std::vector<MemoEntry> memo_entries() const;

	// Every monoid whose local divisor was built during synthesis.
	const std::vector<FiniteMonoid>& divisor_bases() const noexcept { return divisor_bases_; }

	const SynthesisStats& stats() const noexcept { return stats_; }

private:
	using Key = std::tuple<std::vector<Element>, Element, std::vector<std::string>, std::vector<Element>, Element>;

	SfExpr solve(const Homomorphism& h, Element p, std::size_t depth);
	SfExpr middle(const Homomorphism& h, Letter c, const Homomorphism& restricted, const LocalDivisor& ld,
	              Element p2, std::size_t depth);
	SfExpr translate(const SfExpr& k, const Homomorphism& h, Letter c, const Homomorphism& restricted,
	                 std::size_t depth);
	SfExpr embedded(const SfExpr& e, const Alphabet& sub, const Alphabet& full);
	bool aperiodic(const FiniteMonoid& m);
	const LocalDivisor& divisor_at(const FiniteMonoid& m, Element c);
	SfExpr finish(SfExpr e);

	SynthesisOptions options_;
	SynthesisStats stats_;
	std::map<Key, std::size_t> memo_;
	std::vector<MemoEntry> entries_;
	std::map<std::pair<std::vector<Element>, Element>, bool> aperiodic_cache_;
	std::map<std::tuple<std::vector<Element>, Element, Element>, LocalDivisor> divisors_;
	std::vector<FiniteMonoid> divisor_bases_;
	std::map<std::pair<std::vector<std::string>, std::vector<std::string>>, SfExpr> sub_star_;
	std::map<std::tuple<const void*, std::vector<std::string>, std::vector<std::string>>, std::pair<SfExpr, SfExpr>>
		embed_cache_;
	Simplifier simplifier_;
};

// Convenience wrapper: a fresh Synthesizer per call.
SfExpr synthesize(const Homomorphism& h, Element p, SynthesisOptions options = {});

struct StarFreenessVerdict {
	bool star_free = false;
	std::size_t monoid_size = 0;
	std::optional<AperiodicityWitness> witness;
	std::vector<std::pair<Element, SfExpr>> expressions; // one per element of mu(L)
	std::optional<SfExpr> expression;                    // their union
	SynthesisStats stats;
};

// Minimizes, computes the syntactic monoid, tests aperiodicity and, when
// aperiodic, synthesizes phi^-1(p) for each p in mu(L).
StarFreenessVerdict decide_star_free(const Dfa& input, SynthesisOptions options = {});

// Same decision for a language given by a morphism and accepting elements.
StarFreenessVerdict decide_star_free(const Homomorphism& h, const std::vector<Element>& accepting,
                                     SynthesisOptions options = {});

// For w = v1 c ... vk c with every vi free of c: computes psi(sigma(w)) by
// folding the local divisor product over psi_image(phi(vi)) and compares it
// with phi(c w) and with phi(c) . phi(w). Throws AlphabetError if w is not of
// that shape.
bool commuting_diagram_check(const Homomorphism& h, Letter c, const Word& w);

} // namespace sfree

#endif
