#include "sfree/sf_expr.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <unordered_set>

#include "sfree/error.hpp"

namespace sfree {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
	return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
	return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max()
	                                                         : a + b;
}

} // namespace

SfExpr SfExpr::all() {
	static const SfExpr node(std::make_shared<const Node>(Node{Kind::All, {}, nullptr, mix(1, 0)}));
	return node;
}

SfExpr SfExpr::empty() {
	static const SfExpr node(std::make_shared<const Node>(Node{Kind::Empty, {}, nullptr, mix(2, 0)}));
	return node;
}

SfExpr SfExpr::epsilon() {
	static const SfExpr node(std::make_shared<const Node>(Node{Kind::Epsilon, {}, nullptr, mix(3, 0)}));
	return node;
}

SfExpr SfExpr::letter(std::string token) {
	if (token.empty()) throw AlphabetError("empty letter token");
	std::size_t h = mix(4, std::hash<std::string>{}(token));
	return SfExpr(std::make_shared<const Node>(Node{Kind::Letter, std::move(token), nullptr, h}));
}

SfExpr SfExpr::binary(Kind kind, SfExpr lhs, SfExpr rhs) {
	std::size_t h = mix(mix(static_cast<std::size_t>(kind) + 16, lhs.hash()), rhs.hash());
	auto children = std::make_shared<const std::pair<SfExpr, SfExpr>>(std::move(lhs), std::move(rhs));
	return SfExpr(std::make_shared<const Node>(Node{kind, {}, std::move(children), h}));
}

SfExpr SfExpr::alt(SfExpr lhs, SfExpr rhs) { return binary(Kind::Union, std::move(lhs), std::move(rhs)); }
SfExpr SfExpr::diff(SfExpr lhs, SfExpr rhs) { return binary(Kind::Difference, std::move(lhs), std::move(rhs)); }
SfExpr SfExpr::concat(SfExpr lhs, SfExpr rhs) { return binary(Kind::Concat, std::move(lhs), std::move(rhs)); }

bool operator==(const SfExpr& x, const SfExpr& y) {
	// pairs already known equal, so shared subtrees are compared once
	std::set<std::pair<const void*, const void*>> proven;
	std::function<bool(const SfExpr&, const SfExpr&)> eq = [&](const SfExpr& a, const SfExpr& b) {
		if (a.id() == b.id()) return true;
		if (a.hash() != b.hash() || a.kind() != b.kind() || a.token() != b.token()) return false;
		if (!a.is_binary()) return true;
		if (proven.count({a.id(), b.id()})) return true;
		bool same = eq(a.lhs(), b.lhs()) && eq(a.rhs(), b.rhs());
		if (same) proven.insert({a.id(), b.id()});
		return same;
	};
	return eq(x, y);
}

SfExpr union_of(const std::vector<SfExpr>& terms) {
	if (terms.empty()) return SfExpr::empty();
	SfExpr acc = terms.front();
	for (std::size_t i = 1; i < terms.size(); ++i) acc = SfExpr::alt(acc, terms[i]);
	return acc;
}

std::set<std::string> letters_of(const SfExpr& e) {
	std::set<std::string> out;
	std::unordered_set<const void*> seen;
	std::vector<SfExpr> stack{e};
	while (!stack.empty()) {
		SfExpr cur = stack.back();
		stack.pop_back();
		if (!seen.insert(cur.id()).second) continue;
		if (cur.is(SfExpr::Kind::Letter)) out.insert(cur.token());
		if (cur.is_binary()) {
			stack.push_back(cur.lhs());
			stack.push_back(cur.rhs());
		}
	}
	return out;
}

SfExpr desugar(const SfExpr& e, const Alphabet& alphabet) {
	const SfExpr all = SfExpr::all();
	const SfExpr nothing = SfExpr::diff(all, all);
	std::vector<SfExpr> containing;
	for (const auto& a : alphabet.letters())
		containing.push_back(SfExpr::concat(SfExpr::concat(all, SfExpr::letter(a)), all));
	const SfExpr eps = SfExpr::diff(all, containing.empty() ? nothing : union_of(containing));

	std::unordered_map<const void*, SfExpr> memo;
	std::function<SfExpr(const SfExpr&)> go = [&](const SfExpr& x) -> SfExpr {
		switch (x.kind()) {
		case SfExpr::Kind::Empty: return nothing;
		case SfExpr::Kind::Epsilon: return eps;
		case SfExpr::Kind::All:
		case SfExpr::Kind::Letter: return x;
		default: break;
		}
		if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
		SfExpr l = go(x.lhs()), r = go(x.rhs());
		SfExpr out = x.is(SfExpr::Kind::Union)        ? SfExpr::alt(l, r)
		             : x.is(SfExpr::Kind::Difference) ? SfExpr::diff(l, r)
		                                              : SfExpr::concat(l, r);
		memo.emplace(x.id(), out);
		return out;
	};
	return go(e);
}

const Dfa& ExprEvaluator::eval(const SfExpr& e) {
	if (auto it = cache_.find(e.id()); it != cache_.end()) return it->second.second;
	Dfa result = [&] {
		switch (e.kind()) {
		case SfExpr::Kind::All: return Dfa::universal(alphabet_);
		case SfExpr::Kind::Empty: return Dfa::empty(alphabet_);
		case SfExpr::Kind::Epsilon: return Dfa::epsilon(alphabet_);
		case SfExpr::Kind::Letter: {
			auto a = alphabet_.find(e.token());
			if (!a) throw AlphabetError("letter '" + e.token() + "' is not bound by the alphabet");
			return Dfa::letter(alphabet_, *a);
		}
		case SfExpr::Kind::Union:
			return combine(Combine::Union, Dfa(eval(e.lhs())), eval(e.rhs()));
		case SfExpr::Kind::Difference:
			return combine(Combine::Difference, Dfa(eval(e.lhs())), eval(e.rhs()));
		case SfExpr::Kind::Concat:
			return combine(Combine::Concatenation, Dfa(eval(e.lhs())), eval(e.rhs()));
		}
		throw Error("internal", "unknown expression kind");
	}();
	auto [it, _] = cache_.emplace(e.id(), std::make_pair(e, std::move(result)));
	return it->second.second;
}

Dfa eval_expr(const SfExpr& e, const Alphabet& alphabet) {
	ExprEvaluator evaluator(alphabet);
	return evaluator.eval(e);
}

std::uint64_t n_bound(const SfExpr& e) {
	std::unordered_map<const void*, std::uint64_t> memo;
	std::function<std::uint64_t(const SfExpr&)> go = [&](const SfExpr& x) -> std::uint64_t {
		switch (x.kind()) {
		case SfExpr::Kind::All: return 0;
		case SfExpr::Kind::Empty: return 0;   // All \ All
		case SfExpr::Kind::Epsilon: return 4; // All \ (All . a . All)
		case SfExpr::Kind::Letter: return 2;
		default: break;
		}
		if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
		std::uint64_t l = go(x.lhs()), r = go(x.rhs());
		std::uint64_t out = x.is(SfExpr::Kind::Concat) ? sat_add(sat_add(l, r), 1) : std::max(l, r);
		memo.emplace(x.id(), out);
		return out;
	};
	return go(e);
}

SfMetrics metrics(const SfExpr& e) {
	struct Info {
		std::uint64_t nodes, depth;
	};
	std::unordered_map<const void*, Info> memo;
	std::function<Info(const SfExpr&)> go = [&](const SfExpr& x) -> Info {
		if (!x.is_binary()) return {1, 0};
		if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
		Info l = go(x.lhs()), r = go(x.rhs());
		Info out{sat_add(sat_add(l.nodes, r.nodes), 1),
		         std::max(l.depth, r.depth) + (x.is(SfExpr::Kind::Concat) ? 1 : 0)};
		memo.emplace(x.id(), out);
		return out;
	};
	Info top = go(e);
	std::uint64_t leaves = 0;
	{
		std::unordered_set<const void*> seen;
		std::vector<SfExpr> stack{e};
		while (!stack.empty()) {
			SfExpr cur = stack.back();
			stack.pop_back();
			if (!seen.insert(cur.id()).second) continue;
			if (cur.is_binary()) {
				stack.push_back(cur.lhs());
				stack.push_back(cur.rhs());
			}
		}
		leaves = seen.size();
	}
	return SfMetrics{top.nodes, leaves, top.depth, n_bound(e)};
}

namespace {

bool is_operator_char(std::string_view ch) {
	return ch == "." || ch == "|" || ch == "\\" || ch == "(" || ch == ")" || ch == "'" || ch == " " ||
	       ch == "\t" || ch == "\n" || ch == "\r";
}

bool is_word_char(char ch) {
	return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '_';
}

void render_letter(const std::string& token, std::string& out) {
	auto chars = utf8_chars(token);
	if (chars.size() == 1 && !is_operator_char(chars.front())) {
		out += token;
		return;
	}
	if (token.find('\'') != std::string::npos)
		throw AlphabetError("letter token '" + token + "' cannot be rendered (contains a quote)");
	out += '\'';
	out += token;
	out += '\'';
}

void render_into(const SfExpr& e, std::string& out) {
	switch (e.kind()) {
	case SfExpr::Kind::All: out += "ALL"; return;
	case SfExpr::Kind::Empty: out += "EMPTY"; return;
	case SfExpr::Kind::Epsilon: out += "EPS"; return;
	case SfExpr::Kind::Letter: render_letter(e.token(), out); return;
	default: break;
	}
	// only a left operand of the same operator goes without parentheses
	auto child = [&](const SfExpr& c, bool left) {
		bool paren = c.is_binary() && !(left && c.kind() == e.kind());
		if (paren) out += '(';
		render_into(c, out);
		if (paren) out += ')';
	};
	child(e.lhs(), true);
	out += e.is(SfExpr::Kind::Union) ? " | " : e.is(SfExpr::Kind::Difference) ? " \\ " : " . ";
	child(e.rhs(), false);
}

class ExprParser {
public:
	explicit ExprParser(std::string_view text) : text_(text) {}

	SfExpr parse() {
		SfExpr e = parse_expr();
		skip_blanks();
		if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
		return e;
	}

private:
	void skip_blanks() {
		while (pos_ < text_.size() &&
		       (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
			++pos_;
	}
	bool accept(char ch) {
		skip_blanks();
		if (pos_ < text_.size() && text_[pos_] == ch) {
			++pos_;
			return true;
		}
		return false;
	}
	[[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

	SfExpr parse_expr() {
		SfExpr e = parse_term();
		for (;;) {
			if (accept('|')) e = SfExpr::alt(std::move(e), parse_term());
			else if (accept('\\')) e = SfExpr::diff(std::move(e), parse_term());
			else return e;
		}
	}

	SfExpr parse_term() {
		SfExpr e = parse_atom();
		while (accept('.')) e = SfExpr::concat(std::move(e), parse_atom());
		return e;
	}

	SfExpr parse_atom() {
		skip_blanks();
		if (pos_ >= text_.size()) fail("unexpected end of input");
		if (accept('(')) {
			SfExpr e = parse_expr();
			if (!accept(')')) fail("expected ')'");
			return e;
		}
		if (accept('\'')) {
			std::size_t close = text_.find('\'', pos_);
			if (close == std::string_view::npos) fail("unterminated quoted letter");
			if (close == pos_) fail("empty quoted letter");
			std::string token(text_.substr(pos_, close - pos_));
			pos_ = close + 1;
			return SfExpr::letter(std::move(token));
		}
		if (is_word_char(text_[pos_])) {
			std::size_t start = pos_;
			while (pos_ < text_.size() && is_word_char(text_[pos_])) ++pos_;
			std::string_view word = text_.substr(start, pos_ - start);
			if (word == "ALL") return SfExpr::all();
			if (word == "EMPTY") return SfExpr::empty();
			if (word == "EPS") return SfExpr::epsilon();
			if (word.size() == 1) return SfExpr::letter(std::string(word));
			pos_ = start;
			fail("multi-character letter '" + std::string(word) + "' must be quoted");
		}
		std::string ch = utf8_chars(text_.substr(pos_)).front();
		if (is_operator_char(ch)) fail("unexpected '" + ch + "'");
		pos_ += ch.size();
		return SfExpr::letter(std::move(ch));
	}

	std::string_view text_;
	std::size_t pos_ = 0;
};

} // namespace

std::string render_expr(const SfExpr& e) {
	std::string out;
	render_into(e, out);
	return out;
}

SfExpr parse_expr(std::string_view text) { return ExprParser(text).parse(); }

SfExpr parse_expr(std::string_view text, const Alphabet& alphabet) {
	SfExpr e = parse_expr(text);
	for (const auto& token : letters_of(e))
		if (!alphabet.contains(token))
			throw AlphabetError("letter '" + token + "' is not bound by the alphabet");
	return e;
}

SfExpr Simplifier::operator()(const SfExpr& e) {
	using K = SfExpr::Kind;
	if (!e.is_binary()) return e;
	if (auto it = cache_.find(e.id()); it != cache_.end()) return it->second.second;
	SfExpr l = (*this)(e.lhs());
	SfExpr r = (*this)(e.rhs());
	SfExpr out = [&]() -> SfExpr {
		switch (e.kind()) {
		case K::Difference:
			if (l.is(K::Empty) || l == r) return SfExpr::empty();
			if (r.is(K::Empty)) return l;
			break;
		case K::Union:
			if (r.is(K::Empty) || l == r) return l;
			if (l.is(K::Empty)) return r;
			break;
		case K::Concat:
			if (l.is(K::Empty) || r.is(K::Empty)) return SfExpr::empty();
			if (r.is(K::Epsilon)) return l;
			if (l.is(K::Epsilon)) return r;
			break;
		default: break;
		}
		if (l.id() == e.lhs().id() && r.id() == e.rhs().id()) return e;
		return e.is(K::Union) ? SfExpr::alt(l, r) : e.is(K::Difference) ? SfExpr::diff(l, r) : SfExpr::concat(l, r);
	}();
	cache_.emplace(e.id(), std::make_pair(e, out));
	return out;
}

SfExpr simplify(const SfExpr& e) {
	Simplifier s;
	return s(e);
}

} // namespace sfree
