#include "sfree/dfa.hpp"

#include <algorithm>
#include <map>

#include "sfree/error.hpp"

namespace sfree {

Dfa::Dfa(Alphabet alphabet, std::size_t states, State initial,
         std::vector<bool> accepting, std::vector<State> delta)
	: alphabet_(std::move(alphabet)), states_(states), initial_(initial),
	  accepting_(std::move(accepting)), delta_(std::move(delta)) {
	if (states_ == 0)
		throw DfaError("automaton needs at least one state");
	if (initial_ >= states_)
		throw DfaError("initial state " + std::to_string(initial_) + " out of range");
	if (accepting_.size() != states_)
		throw DfaError("accepting vector has wrong length");
	if (delta_.size() != states_ * alphabet_.size())
		throw DfaError("transition table is not total");
	for (State t : delta_)
		if (t >= states_)
			throw DfaError("transition target " + std::to_string(t) + " out of range");
}

Dfa Dfa::universal(Alphabet alphabet) {
	std::vector<State> delta(alphabet.size(), 0);
	return Dfa(std::move(alphabet), 1, 0, {true}, std::move(delta));
}

Dfa Dfa::empty(Alphabet alphabet) {
	std::vector<State> delta(alphabet.size(), 0);
	return Dfa(std::move(alphabet), 1, 0, {false}, std::move(delta));
}

Dfa Dfa::epsilon(Alphabet alphabet) {
	std::vector<State> delta(2 * alphabet.size(), 1);
	return minimize(Dfa(std::move(alphabet), 2, 0, {true, false}, std::move(delta)));
}

Dfa Dfa::letter(Alphabet alphabet, Letter a) {
	if (a >= alphabet.size()) throw AlphabetError("letter index outside alphabet");
	// 0 start, 1 accepting, 2 sink
	std::vector<State> delta(3 * alphabet.size(), 2);
	delta[a] = 1;
	return minimize(Dfa(std::move(alphabet), 3, 0, {false, true, false}, std::move(delta)));
}

State Dfa::run(State from, std::span<const Letter> word) const {
	State s = from;
	for (Letter a : word) {
		if (a >= alphabet_.size())
			throw AlphabetError("letter index " + std::to_string(a) + " outside alphabet");
		s = next(s, a);
	}
	return s;
}

bool Dfa::accepts(std::span<const Letter> word) const {
	return accepting_[run(initial_, word)];
}

Dfa minimize(const Dfa& d) {
	const std::size_t k = d.alphabet().size();

	// reachable states, BFS order
	std::vector<State> order;
	std::vector<bool> seen(d.num_states(), false);
	order.push_back(d.initial());
	seen[d.initial()] = true;
	for (std::size_t i = 0; i < order.size(); ++i)
		for (Letter a = 0; a < k; ++a) {
			State t = d.next(order[i], a);
			if (!seen[t]) {
				seen[t] = true;
				order.push_back(t);
			}
		}

	// Moore refinement over reachable states
	std::vector<std::size_t> block(d.num_states(), 0);
	for (State s : order) block[s] = d.is_accepting(s) ? 1 : 0;
	std::size_t blocks = 0;
	for (;;) {
		std::map<std::vector<std::size_t>, std::size_t> ids;
		std::vector<std::size_t> refined(d.num_states(), 0);
		for (State s : order) {
			std::vector<std::size_t> sig;
			sig.reserve(k + 1);
			sig.push_back(block[s]);
			for (Letter a = 0; a < k; ++a) sig.push_back(block[d.next(s, a)]);
			auto [it, _] = ids.emplace(std::move(sig), ids.size());
			refined[s] = it->second;
		}
		block = std::move(refined);
		if (ids.size() == blocks) break;
		blocks = ids.size();
	}

	// canonical renumbering: BFS over blocks from the initial block
	std::vector<State> representative(blocks, 0);
	for (auto it = order.rbegin(); it != order.rend(); ++it) representative[block[*it]] = *it;
	std::vector<std::size_t> number(blocks, blocks);
	std::vector<std::size_t> queue{block[d.initial()]};
	number[queue.front()] = 0;
	for (std::size_t i = 0; i < queue.size(); ++i)
		for (Letter a = 0; a < k; ++a) {
			std::size_t b = block[d.next(representative[queue[i]], a)];
			if (number[b] == blocks) {
				number[b] = queue.size();
				queue.push_back(b);
			}
		}

	std::vector<bool> accepting(blocks);
	std::vector<State> delta(blocks * k);
	for (std::size_t b = 0; b < blocks; ++b) {
		State rep = representative[b];
		accepting[number[b]] = d.is_accepting(rep);
		for (Letter a = 0; a < k; ++a)
			delta[number[b] * k + a] = number[block[d.next(rep, a)]];
	}
	return Dfa(d.alphabet(), blocks, 0, std::move(accepting), std::move(delta));
}

Dfa complement(const Dfa& d) {
	std::vector<bool> accepting(d.num_states());
	std::vector<State> delta;
	delta.reserve(d.num_states() * d.alphabet().size());
	for (State s = 0; s < d.num_states(); ++s) {
		accepting[s] = !d.is_accepting(s);
		for (Letter a = 0; a < d.alphabet().size(); ++a) delta.push_back(d.next(s, a));
	}
	return Dfa(d.alphabet(), d.num_states(), d.initial(), std::move(accepting), std::move(delta));
}

namespace {

void require_same_alphabet(const Dfa& lhs, const Dfa& rhs) {
	if (lhs.alphabet() != rhs.alphabet())
		throw AlphabetError("automata are over different alphabets");
}

// Reachable part of the product automaton; acceptance decided by `accept`.
template <typename Accept>
Dfa product(const Dfa& lhs, const Dfa& rhs, Accept accept) {
	const std::size_t k = lhs.alphabet().size();
	std::map<std::pair<State, State>, State> index;
	std::vector<std::pair<State, State>> states{{lhs.initial(), rhs.initial()}};
	index[states.front()] = 0;
	std::vector<State> delta;
	for (std::size_t i = 0; i < states.size(); ++i)
		for (Letter a = 0; a < k; ++a) {
			std::pair<State, State> t{lhs.next(states[i].first, a), rhs.next(states[i].second, a)};
			auto [it, inserted] = index.emplace(t, states.size());
			if (inserted) states.push_back(t);
			delta.push_back(it->second);
		}
	std::vector<bool> accepting;
	for (auto [p, q] : states) accepting.push_back(accept(lhs.is_accepting(p), rhs.is_accepting(q)));
	return Dfa(lhs.alphabet(), states.size(), 0, std::move(accepting), std::move(delta));
}

// Subset construction for the epsilon-free automaton recognizing L(lhs)L(rhs):
// the left part stays deterministic, the right part is tracked as a state set.
Dfa concatenation(const Dfa& lhs, const Dfa& rhs) {
	const std::size_t k = lhs.alphabet().size();
	using Macro = std::pair<State, std::vector<State>>;
	auto normalize = [](std::vector<State>& v) {
		std::sort(v.begin(), v.end());
		v.erase(std::unique(v.begin(), v.end()), v.end());
	};
	auto make = [&](State p, std::vector<State> set) {
		if (lhs.is_accepting(p)) set.push_back(rhs.initial());
		normalize(set);
		return Macro{p, std::move(set)};
	};

	std::map<Macro, State> index;
	std::vector<Macro> states{make(lhs.initial(), {})};
	index[states.front()] = 0;
	std::vector<State> delta;
	for (std::size_t i = 0; i < states.size(); ++i)
		for (Letter a = 0; a < k; ++a) {
			std::vector<State> moved;
			for (State q : states[i].second) moved.push_back(rhs.next(q, a));
			Macro t = make(lhs.next(states[i].first, a), std::move(moved));
			auto [it, inserted] = index.emplace(t, states.size());
			if (inserted) states.push_back(std::move(t));
			delta.push_back(it->second);
		}
	std::vector<bool> accepting;
	for (const auto& [p, set] : states)
		accepting.push_back(std::any_of(set.begin(), set.end(),
		                                [&](State q) { return rhs.is_accepting(q); }));
	return Dfa(lhs.alphabet(), states.size(), 0, std::move(accepting), std::move(delta));
}

} // namespace

Dfa combine(Combine kind, const Dfa& lhs, const Dfa& rhs) {
	require_same_alphabet(lhs, rhs);
	switch (kind) {
	case Combine::Union:
		return minimize(product(lhs, rhs, [](bool x, bool y) { return x || y; }));
	case Combine::Difference:
		return minimize(product(lhs, rhs, [](bool x, bool y) { return x && !y; }));
	case Combine::Intersection:
		return minimize(product(lhs, rhs, [](bool x, bool y) { return x && y; }));
	case Combine::Concatenation:
		return minimize(concatenation(lhs, rhs));
	}
	throw Error("internal", "unknown combine kind");
}

bool equivalent(const Dfa& lhs, const Dfa& rhs) {
	require_same_alphabet(lhs, rhs);
	return minimize(lhs) == minimize(rhs);
}

bool symmetric_difference_empty(const Dfa& lhs, const Dfa& rhs) {
	require_same_alphabet(lhs, rhs);
	return is_empty_language(product(lhs, rhs, [](bool x, bool y) { return x != y; }));
}

bool is_empty_language(const Dfa& d) {
	std::vector<bool> seen(d.num_states(), false);
	std::vector<State> stack{d.initial()};
	seen[d.initial()] = true;
	while (!stack.empty()) {
		State s = stack.back();
		stack.pop_back();
		if (d.is_accepting(s)) return false;
		for (Letter a = 0; a < d.alphabet().size(); ++a) {
			State t = d.next(s, a);
			if (!seen[t]) {
				seen[t] = true;
				stack.push_back(t);
			}
		}
	}
	return true;
}

std::optional<Word> distinguishing_word(const Dfa& lhs, const Dfa& rhs) {
	require_same_alphabet(lhs, rhs);
	Dfa prod = product(lhs, rhs, [](bool x, bool y) { return x != y; });
	// BFS in letter order reaches every state first by its length-lex least word
	std::vector<std::optional<std::pair<State, Letter>>> parent(prod.num_states());
	std::vector<bool> seen(prod.num_states(), false);
	std::vector<State> queue{prod.initial()};
	seen[prod.initial()] = true;
	for (std::size_t i = 0; i < queue.size(); ++i) {
		State s = queue[i];
		if (prod.is_accepting(s)) {
			Word w;
			for (State cur = s; parent[cur]; cur = parent[cur]->first) w.push_back(parent[cur]->second);
			std::reverse(w.begin(), w.end());
			return w;
		}
		for (Letter a = 0; a < prod.alphabet().size(); ++a) {
			State t = prod.next(s, a);
			if (!seen[t]) {
				seen[t] = true;
				parent[t] = std::make_pair(s, a);
				queue.push_back(t);
			}
		}
	}
	return std::nullopt;
}

std::vector<Word> enumerate_members(const Dfa& d, std::size_t maxlen) {
	const std::size_t n = d.num_states();
	const std::size_t k = d.alphabet().size();
	// reach[r][s]: an accepting state is reachable from s in at most r steps
	std::vector<std::vector<bool>> reach(maxlen + 1, std::vector<bool>(n));
	for (State s = 0; s < n; ++s) reach[0][s] = d.is_accepting(s);
	for (std::size_t r = 1; r <= maxlen; ++r)
		for (State s = 0; s < n; ++s) {
			bool ok = reach[r - 1][s];
			for (Letter a = 0; a < k && !ok; ++a) ok = reach[r - 1][d.next(s, a)];
			reach[r][s] = ok;
		}

	std::vector<Word> out;
	Word word;
	// exact-length words, lexicographic, pruned by `reach`
	auto visit = [&](auto&& self, State s, std::size_t remaining) -> void {
		if (remaining == 0) {
			if (d.is_accepting(s)) out.push_back(word);
			return;
		}
		for (Letter a = 0; a < k; ++a) {
			State t = d.next(s, a);
			if (!reach[remaining - 1][t]) continue;
			word.push_back(a);
			self(self, t, remaining - 1);
			word.pop_back();
		}
	};
	for (std::size_t len = 0; len <= maxlen; ++len)
		if (reach[len][d.initial()]) visit(visit, d.initial(), len);
	return out;
}

nlohmann::json to_json(const Dfa& d) {
	nlohmann::json j;
	j["alphabet"] = d.alphabet().letters();
	j["states"] = d.num_states();
	j["initial"] = d.initial();
	auto accepting = nlohmann::json::array();
	for (State s = 0; s < d.num_states(); ++s)
		if (d.is_accepting(s)) accepting.push_back(s);
	j["accepting"] = accepting;
	auto delta = nlohmann::json::array();
	for (State s = 0; s < d.num_states(); ++s) {
		auto row = nlohmann::json::array();
		for (Letter a = 0; a < d.alphabet().size(); ++a) row.push_back(d.next(s, a));
		delta.push_back(row);
	}
	j["delta"] = delta;
	return j;
}

Dfa dfa_from_json(const nlohmann::json& j) {
	try {
		Alphabet alphabet(j.at("alphabet").get<std::vector<std::string>>());
		auto states = j.at("states").get<std::size_t>();
		auto initial = j.at("initial").get<State>();
		std::vector<bool> accepting(states, false);
		for (const auto& s : j.at("accepting")) {
			auto idx = s.get<State>();
			if (idx >= states)
				throw DfaError("accepting state " + std::to_string(idx) + " out of range");
			accepting[idx] = true;
		}
		const auto& rows = j.at("delta");
		if (!rows.is_array() || rows.size() != states)
			throw DfaError("delta must have one row per state");
		std::vector<State> delta;
		for (const auto& row : rows) {
			if (!row.is_array() || row.size() != alphabet.size())
				throw DfaError("delta row must have one entry per letter");
			for (const auto& t : row) delta.push_back(t.get<State>());
		}
		return Dfa(std::move(alphabet), states, initial, std::move(accepting), std::move(delta));
	} catch (const nlohmann::json::exception& e) {
		throw DfaError(std::string("malformed DFA JSON: ") + e.what());
	}
}

} // namespace sfree
