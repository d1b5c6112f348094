#ifndef SFREE_ALPHABET_HPP
#define SFREE_ALPHABET_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sfree {

using Letter = std::size_t; // index into an Alphabet
using Word = std::vector<Letter>;

// Ordered finite set of distinct, nonempty letter tokens. The declared order
// is significant: it drives word enumeration and the synthesis letter choice.
class Alphabet {
public:
	Alphabet() = default;
	explicit Alphabet(std::vector<std::string> letters);

	// Splits `text` into UTF-8 code points, one letter each.
	static Alphabet from_chars(std::string_view text);

	std::size_t size() const noexcept { return letters_.size(); }
	bool empty() const noexcept { return letters_.empty(); }
	const std::vector<std::string>& letters() const noexcept { return letters_; }
	const std::string& operator[](Letter i) const { return letters_.at(i); }

	std::optional<Letter> find(std::string_view token) const;
	Letter index_of(std::string_view token) const; // throws AlphabetError
	bool contains(std::string_view token) const { return find(token).has_value(); }

	// Sub-alphabet keeping declared order.
	Alphabet without(Letter removed) const;
	bool is_subset_of(const Alphabet& other) const;

	// Parses a word written as juxtaposed single-character letters.
	Word parse_word(std::string_view text) const;
	std::string render_word(std::span<const Letter> word) const;

	friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
	std::vector<std::string> letters_;
};

// Splits a UTF-8 string into code points (invalid bytes pass through singly).
std::vector<std::string> utf8_chars(std::string_view text);

} // namespace sfree

#endif
