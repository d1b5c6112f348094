#ifndef SFREE_SF_EXPR_HPP
#define SFREE_SF_EXPR_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>

#include "sfree/alphabet.hpp"
#include "sfree/dfa.hpp"

namespace sfree {

// Star-free expression. The core constructors are All (the full free monoid
// over the binding alphabet), single letters, union, difference and
// concatenation; Empty and Epsilon are sugar with fixed desugarings
//   Empty   = All \ All
//   Epsilon = All \ (⋃_a All . a . All)
//
// Letters are opaque tokens, so the same tree type is used over concrete
// alphabets and over alphabets of monoid elements. Nodes are immutable and
// shared: subtrees produced by synthesis form a DAG.
class SfExpr {
public:
	enum class Kind { All, Empty, Epsilon, Letter, Union, Difference, Concat };

	static SfExpr all();
	static SfExpr empty();
	static SfExpr epsilon();
	static SfExpr letter(std::string token);
	static SfExpr alt(SfExpr lhs, SfExpr rhs);
	static SfExpr diff(SfExpr lhs, SfExpr rhs);
	static SfExpr concat(SfExpr lhs, SfExpr rhs);

	Kind kind() const noexcept { return node_->kind; }
	bool is(Kind k) const noexcept { return node_->kind == k; }
	const std::string& token() const noexcept { return node_->token; }
	const SfExpr& lhs() const { return node_->children->first; }
	const SfExpr& rhs() const { return node_->children->second; }
	bool is_binary() const noexcept { return node_->children != nullptr; }

	// Identity of the shared node, for memoization.
	const void* id() const noexcept { return node_.get(); }
	std::size_t hash() const noexcept { return node_->hash; }

	friend bool operator==(const SfExpr& x, const SfExpr& y);

private:
	struct Node {
		Kind kind;
		std::string token;
		std::shared_ptr<const std::pair<SfExpr, SfExpr>> children;
		std::size_t hash = 0;
	};
	explicit SfExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
	static SfExpr binary(Kind kind, SfExpr lhs, SfExpr rhs);

	std::shared_ptr<const Node> node_;
};

// Left-nested union; Empty for an empty list.
SfExpr union_of(const std::vector<SfExpr>& terms);

// Letter tokens mentioned anywhere in `e`.
std::set<std::string> letters_of(const SfExpr& e);

// Rewrites Empty and Epsilon into the five core constructors over `alphabet`.
SfExpr desugar(const SfExpr& e, const Alphabet& alphabet);

// Evaluates expressions to minimal DFAs, caching results per shared node.
class ExprEvaluator {
public:
	explicit ExprEvaluator(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

	const Dfa& eval(const SfExpr& e);
	const Alphabet& alphabet() const noexcept { return alphabet_; }

private:
	Alphabet alphabet_;
	std::unordered_map<const void*, std::pair<SfExpr, Dfa>> cache_;
};

// Minimal DFA of the denoted language; throws AlphabetError on unbound letters.
Dfa eval_expr(const SfExpr& e, const Alphabet& alphabet);

// Pumping bound: n(All) = 0, n(a) = 2, union and difference take the max,
// concatenation adds both sides plus one. Sugar nodes count as their
// desugarings over a nonempty alphabet (Empty 0, Epsilon 4). Saturates at
// UINT64_MAX.
std::uint64_t n_bound(const SfExpr& e);

struct SfMetrics {
	std::uint64_t node_count;   // size of the expression as a tree (saturating)
	std::uint64_t dag_nodes;    // distinct shared nodes
	std::uint64_t concat_depth; // max number of nested concatenations on a path
	std::uint64_t n_bound;
};

SfMetrics metrics(const SfExpr& e);

// Grammar:
//   expr := term (('|' | '\') term)*      left-associative
//   term := atom ('.' atom)*              left-associative
//   atom := 'ALL' | 'EMPTY' | 'EPS' | letter | '\'' token '\'' | '(' expr ')'
// A bare letter is one character other than the operators, parentheses,
// quote and blanks; longer alphanumeric runs must be quoted.
std::string render_expr(const SfExpr& e);
SfExpr parse_expr(std::string_view text);
// Also checks every letter against `alphabet`.
SfExpr parse_expr(std::string_view text, const Alphabet& alphabet);

// Local rewrites only: X\X, Empty\X -> Empty; X\Empty -> X; X|Empty, Empty|X,
// X|X -> X; X.Empty, Empty.X -> Empty; X.Epsilon, Epsilon.X -> X.
SfExpr simplify(const SfExpr& e);

// Memoizing form of `simplify` for callers that simplify many overlapping DAGs.
class Simplifier {
public:
	SfExpr operator()(const SfExpr& e);

private:
	std::unordered_map<const void*, std::pair<SfExpr, SfExpr>> cache_;
};

} // namespace sfree

#endif
