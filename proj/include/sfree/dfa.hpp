#ifndef SFREE_DFA_HPP
#define SFREE_DFA_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "sfree/alphabet.hpp"

namespace sfree {

using State = std::size_t;

// Complete deterministic finite automaton. Immutable once built; the
// constructor rejects partial transition tables and out-of-range states.
class Dfa {
public:
	// `delta` is row-major: delta[s * alphabet.size() + j] is the successor of s on letter j.
	Dfa(Alphabet alphabet, std::size_t states, State initial,
	    std::vector<bool> accepting, std::vector<State> delta);

	// Single-state automata for the universal and the empty language.
	static Dfa universal(Alphabet alphabet);
	static Dfa empty(Alphabet alphabet);
	// Minimal automata for {ε} and {a}.
	static Dfa epsilon(Alphabet alphabet);
	static Dfa letter(Alphabet alphabet, Letter a);

	const Alphabet& alphabet() const noexcept { return alphabet_; }
	std::size_t num_states() const noexcept { return states_; }
	State initial() const noexcept { return initial_; }
	bool is_accepting(State s) const { return accepting_.at(s); }
	State next(State s, Letter a) const { return delta_[s * alphabet_.size() + a]; }

	State run(State from, std::span<const Letter> word) const;
	bool accepts(std::span<const Letter> word) const;

	friend bool operator==(const Dfa&, const Dfa&) = default;

private:
	Alphabet alphabet_;
	std::size_t states_;
	State initial_;
	std::vector<bool> accepting_;
	std::vector<State> delta_;
};

enum class Combine { Union, Difference, Intersection, Concatenation };

// Minimal complete DFA with canonical numbering: states in breadth-first
// order from the initial state, successors visited in alphabet order.
Dfa minimize(const Dfa& d);

Dfa complement(const Dfa& d);

// Result is minimized. Throws AlphabetError if the alphabets differ.
Dfa combine(Combine kind, const Dfa& lhs, const Dfa& rhs);

// Canonical-form comparison.
bool equivalent(const Dfa& lhs, const Dfa& rhs);
// Independent route: search the product for a reachable state accepted by
// exactly one side.
bool symmetric_difference_empty(const Dfa& lhs, const Dfa& rhs);

bool is_empty_language(const Dfa& d);

// A shortest (then lexicographically least) word accepted by exactly one side.
std::optional<Word> distinguishing_word(const Dfa& lhs, const Dfa& rhs);

// All accepted words of length <= maxlen in length-lexicographic order.
std::vector<Word> enumerate_members(const Dfa& d, std::size_t maxlen);

// JSON interchange: {"alphabet":[..],"states":m,"initial":i,"accepting":[..],"delta":[[..],..]}
nlohmann::json to_json(const Dfa& d);
Dfa dfa_from_json(const nlohmann::json& j);

} // namespace sfree

#endif
