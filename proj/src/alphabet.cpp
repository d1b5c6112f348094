#include "sfree/alphabet.hpp"

#include <algorithm>

#include "sfree/error.hpp"

namespace sfree {

std::vector<std::string> utf8_chars(std::string_view text) {
	std::vector<std::string> out;
	std::size_t i = 0;
	while (i < text.size()) {
		auto lead = static_cast<unsigned char>(text[i]);
		std::size_t len = 1;
		if (lead >= 0xF0) len = 4;
		else if (lead >= 0xE0) len = 3;
		else if (lead >= 0xC0) len = 2;
		len = std::min(len, text.size() - i);
		out.emplace_back(text.substr(i, len));
		i += len;
	}
	return out;
}

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
	for (std::size_t i = 0; i < letters_.size(); ++i) {
		if (letters_[i].empty())
			throw AlphabetError("empty letter token");
		for (std::size_t j = 0; j < i; ++j)
			if (letters_[i] == letters_[j])
				throw AlphabetError("duplicate letter '" + letters_[i] + "'");
	}
}

Alphabet Alphabet::from_chars(std::string_view text) {
	return Alphabet(utf8_chars(text));
}

std::optional<Letter> Alphabet::find(std::string_view token) const {
	auto it = std::find(letters_.begin(), letters_.end(), token);
	if (it == letters_.end()) return std::nullopt;
	return static_cast<Letter>(it - letters_.begin());
}

Letter Alphabet::index_of(std::string_view token) const {
	if (auto i = find(token)) return *i;
	throw AlphabetError("letter '" + std::string(token) + "' not in alphabet");
}

Alphabet Alphabet::without(Letter removed) const {
	std::vector<std::string> kept;
	for (Letter i = 0; i < letters_.size(); ++i)
		if (i != removed) kept.push_back(letters_[i]);
	return Alphabet(std::move(kept));
}

bool Alphabet::is_subset_of(const Alphabet& other) const {
	return std::all_of(letters_.begin(), letters_.end(),
	                   [&](const std::string& l) { return other.contains(l); });
}

Word Alphabet::parse_word(std::string_view text) const {
	Word w;
	for (const auto& ch : utf8_chars(text)) w.push_back(index_of(ch));
	return w;
}

std::string Alphabet::render_word(std::span<const Letter> word) const {
	std::string out;
	for (Letter l : word) out += letters_.at(l);
	return out;
}

} // namespace sfree
