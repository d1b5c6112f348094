#ifndef SFREE_REGEX_HPP
#define SFREE_REGEX_HPP

#include <memory>
#include <string>
#include <string_view>

#include "sfree/alphabet.hpp"
#include "sfree/dfa.hpp"

namespace sfree {

// Input-side regular expressions. Grammar:
//   union  := concat ('|' concat)*
//   concat := star star*
//   star   := atom '*'*
//   atom   := letter | '_' (epsilon) | '#' (empty set) | '(' union ')'
// Letters are single characters of the declared alphabet; blanks are ignored.
class Regex {
public:
	enum class Kind { Empty, Epsilon, Letter, Union, Concat, Star };

	static Regex empty();
	static Regex epsilon();
	static Regex letter(Letter a);
	static Regex alt(Regex lhs, Regex rhs);
	static Regex concat(Regex lhs, Regex rhs);
	static Regex star(Regex inner);

	Kind kind() const noexcept { return node_->kind; }
	Letter letter() const noexcept { return node_->letter; }
	const Regex& lhs() const { return *node_->lhs; }
	const Regex& rhs() const { return *node_->rhs; }

	friend bool operator==(const Regex& x, const Regex& y);

private:
	struct Node {
		Kind kind;
		Letter letter = 0;
		std::shared_ptr<const Regex> lhs = nullptr;
		std::shared_ptr<const Regex> rhs = nullptr;
	};
	explicit Regex(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
	std::shared_ptr<const Node> node_;
};

Regex parse_regex(std::string_view text, const Alphabet& alphabet);
std::string render_regex(const Regex& r, const Alphabet& alphabet);

// Minimal complete DFA (canonical numbering) of the denoted language.
Dfa regex_to_dfa(const Regex& r, const Alphabet& alphabet);

} // namespace sfree

#endif
