#include "sfree/regex.hpp"

#include <algorithm>
#include <map>

#include "sfree/error.hpp"

namespace sfree {

Regex Regex::empty() { return Regex(std::make_shared<const Node>(Node{Kind::Empty})); }
Regex Regex::epsilon() { return Regex(std::make_shared<const Node>(Node{Kind::Epsilon})); }
Regex Regex::letter(Letter a) { return Regex(std::make_shared<const Node>(Node{Kind::Letter, a})); }

Regex Regex::alt(Regex lhs, Regex rhs) {
	return Regex(std::make_shared<const Node>(Node{Kind::Union, 0,
		std::make_shared<const Regex>(std::move(lhs)), std::make_shared<const Regex>(std::move(rhs))}));
}

Regex Regex::concat(Regex lhs, Regex rhs) {
	return Regex(std::make_shared<const Node>(Node{Kind::Concat, 0,
		std::make_shared<const Regex>(std::move(lhs)), std::make_shared<const Regex>(std::move(rhs))}));
}

Regex Regex::star(Regex inner) {
	return Regex(std::make_shared<const Node>(Node{Kind::Star, 0,
		std::make_shared<const Regex>(std::move(inner)), nullptr}));
}

bool operator==(const Regex& x, const Regex& y) {
	if (x.node_ == y.node_) return true;
	if (x.kind() != y.kind()) return false;
	switch (x.kind()) {
	case Regex::Kind::Empty:
	case Regex::Kind::Epsilon:
		return true;
	case Regex::Kind::Letter:
		return x.letter() == y.letter();
	case Regex::Kind::Star:
		return x.lhs() == y.lhs();
	default:
		return x.lhs() == y.lhs() && x.rhs() == y.rhs();
	}
}

namespace {

class RegexParser {
public:
	RegexParser(std::string_view text, const Alphabet& alphabet)
		: chars_(utf8_chars(text)), alphabet_(alphabet) {}

	Regex parse() {
		Regex r = parse_union();
		skip_blanks();
		if (pos_ < chars_.size()) fail("unexpected '" + chars_[pos_] + "'");
		return r;
	}

private:
	void skip_blanks() {
		while (pos_ < chars_.size() && (chars_[pos_] == " " || chars_[pos_] == "\t")) ++pos_;
	}
	bool at(std::string_view s) {
		skip_blanks();
		return pos_ < chars_.size() && chars_[pos_] == s;
	}
	bool starts_atom() {
		skip_blanks();
		if (pos_ >= chars_.size()) return false;
		const auto& ch = chars_[pos_];
		return ch != "|" && ch != ")" && ch != "*";
	}
	[[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

	Regex parse_union() {
		Regex r = parse_concat();
		while (at("|")) {
			++pos_;
			r = Regex::alt(std::move(r), parse_concat());
		}
		return r;
	}

	Regex parse_concat() {
		if (!starts_atom()) fail(pos_ < chars_.size() ? "expected expression before '" + chars_[pos_] + "'"
		                                              : "unexpected end of input");
		Regex r = parse_star();
		while (starts_atom()) r = Regex::concat(std::move(r), parse_star());
		return r;
	}

	Regex parse_star() {
		Regex r = parse_atom();
		while (at("*")) {
			++pos_;
			r = Regex::star(std::move(r));
		}
		return r;
	}

	Regex parse_atom() {
		skip_blanks();
		const std::string& ch = chars_[pos_];
		if (ch == "(") {
			++pos_;
			Regex r = parse_union();
			if (!at(")")) fail("expected ')'");
			++pos_;
			return r;
		}
		if (ch == "_") {
			++pos_;
			return Regex::epsilon();
		}
		if (ch == "#") {
			++pos_;
			return Regex::empty();
		}
		auto letter = alphabet_.find(ch);
		if (!letter) fail("letter '" + ch + "' not in alphabet");
		++pos_;
		return Regex::letter(*letter);
	}

	std::vector<std::string> chars_;
	const Alphabet& alphabet_;
	std::size_t pos_ = 0;
};

int precedence(Regex::Kind k) {
	switch (k) {
	case Regex::Kind::Union: return 0;
	case Regex::Kind::Concat: return 1;
	default: return 2;
	}
}

void render_into(const Regex& r, const Alphabet& alphabet, std::string& out) {
	auto child = [&](const Regex& c, int min_prec) {
		bool paren = precedence(c.kind()) < min_prec;
		if (paren) out += '(';
		render_into(c, alphabet, out);
		if (paren) out += ')';
	};
	switch (r.kind()) {
	case Regex::Kind::Empty: out += '#'; break;
	case Regex::Kind::Epsilon: out += '_'; break;
	case Regex::Kind::Letter: out += alphabet[r.letter()]; break;
	case Regex::Kind::Union:
		child(r.lhs(), 0);
		out += '|';
		child(r.rhs(), 1);
		break;
	case Regex::Kind::Concat:
		child(r.lhs(), 1);
		child(r.rhs(), 2);
		break;
	case Regex::Kind::Star:
		child(r.lhs(), 3);
		out += '*';
		break;
	}
}

// Subset construction of the Kleene closure; the fresh initial macro-state
// accepts the empty word.
Dfa star_dfa(const Dfa& d) {
	const std::size_t k = d.alphabet().size();
	using Macro = std::pair<bool, std::vector<State>>;
	std::map<Macro, State> index;
	std::vector<Macro> states{{true, {d.initial()}}};
	index[states.front()] = 0;
	std::vector<State> delta;
	for (std::size_t i = 0; i < states.size(); ++i)
		for (Letter a = 0; a < k; ++a) {
			std::vector<State> moved;
			bool hit = false;
			for (State q : states[i].second) {
				State t = d.next(q, a);
				moved.push_back(t);
				hit = hit || d.is_accepting(t);
			}
			if (hit) moved.push_back(d.initial());
			std::sort(moved.begin(), moved.end());
			moved.erase(std::unique(moved.begin(), moved.end()), moved.end());
			Macro t{false, std::move(moved)};
			auto [it, inserted] = index.emplace(t, states.size());
			if (inserted) states.push_back(std::move(t));
			delta.push_back(it->second);
		}
	std::vector<bool> accepting;
	for (const auto& [fresh, set] : states)
		accepting.push_back(fresh || std::any_of(set.begin(), set.end(),
		                                         [&](State q) { return d.is_accepting(q); }));
	return minimize(Dfa(d.alphabet(), states.size(), 0, std::move(accepting), std::move(delta)));
}

} // namespace

Regex parse_regex(std::string_view text, const Alphabet& alphabet) {
	return RegexParser(text, alphabet).parse();
}

std::string render_regex(const Regex& r, const Alphabet& alphabet) {
	std::string out;
	render_into(r, alphabet, out);
	return out;
}

Dfa regex_to_dfa(const Regex& r, const Alphabet& alphabet) {
	switch (r.kind()) {
	case Regex::Kind::Empty: return Dfa::empty(alphabet);
	case Regex::Kind::Epsilon: return Dfa::epsilon(alphabet);
	case Regex::Kind::Letter: return Dfa::letter(alphabet, r.letter());
	case Regex::Kind::Union:
		return combine(Combine::Union, regex_to_dfa(r.lhs(), alphabet), regex_to_dfa(r.rhs(), alphabet));
	case Regex::Kind::Concat:
		return combine(Combine::Concatenation, regex_to_dfa(r.lhs(), alphabet),
		               regex_to_dfa(r.rhs(), alphabet));
	case Regex::Kind::Star:
		return star_dfa(regex_to_dfa(r.lhs(), alphabet));
	}
	throw Error("internal", "unknown regex kind");
}

} // namespace sfree
