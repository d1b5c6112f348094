#ifndef SFREE_MONOID_HPP
#define SFREE_MONOID_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sfree {

using Element = std::size_t;

inline constexpr std::size_t default_monoid_cap = 64;

// Finite monoid given by its multiplication table over 0..n-1.
// Construction checks associativity and both identity laws exhaustively.
class FiniteMonoid {
public:
	// `table[x * n + y]` is x.y
	FiniteMonoid(std::size_t n, std::vector<Element> table, Element identity);

	static FiniteMonoid trivial() { return FiniteMonoid(1, {0}, 0); }

	std::size_t size() const noexcept { return n_; }
	Element identity() const noexcept { return identity_; }
	Element multiply(Element x, Element y) const { return table_[x * n_ + y]; }
	Element power(Element x, std::size_t k) const;
	bool contains(Element x) const noexcept { return x < n_; }

	// Row-major table, usable as a structural key.
	const std::vector<Element>& table() const noexcept { return table_; }

	friend bool operator==(const FiniteMonoid&, const FiniteMonoid&) = default;

private:
	std::size_t n_;
	std::vector<Element> table_;
	Element identity_;
};

FiniteMonoid validate_monoid(const std::vector<std::vector<Element>>& table, Element identity);

// x^index = x^(index + period) with index minimal and period >= 2.
struct AperiodicityWitness {
	Element element;
	std::size_t index;
	std::size_t period;
};

// Checks x^|M| = x^(|M|+1) for every x; the first failing element (by index)
// is reported together with its index and period.
std::optional<AperiodicityWitness> is_aperiodic(const FiniteMonoid& m);

// x^k = x^(k+d), x^k != x^(k+1), d >= 2, all read from the table.
bool witness_holds(const FiniteMonoid& m, const AperiodicityWitness& w);

// True iff xy = 1 forces x = y = 1.
bool unit_factorization_check(const FiniteMonoid& m);

// Text format: "n identity" on the first line, then n rows of n indices.
FiniteMonoid parse_monoid_text(std::string_view text);
std::string render_monoid_text(const FiniteMonoid& m);

} // namespace sfree

#endif
