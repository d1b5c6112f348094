#include "sfree/synthesis.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <unordered_map>

#include "sfree/error.hpp"

namespace sfree {

std::string element_token(Element x) { return "m" + std::to_string(x); }

namespace {

using EmbedMemo = std::unordered_map<const void*, std::pair<SfExpr, SfExpr>>;

std::optional<Element> parse_element_token(const std::string& token) {
	if (token.size() < 2 || token[0] != 'm') return std::nullopt;
	Element x = 0;
	auto [ptr, ec] = std::from_chars(token.data() + 1, token.data() + token.size(), x);
	if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
	return x;
}

// B* written over A.
SfExpr sub_star(const Alphabet& sub, const Alphabet& full) {
	if (!sub.is_subset_of(full))
		throw AlphabetError("embedding needs a sub-alphabet of the target alphabet");
	std::vector<SfExpr> forbidden;
	for (const auto& b : full.letters())
		if (!sub.contains(b))
			forbidden.push_back(SfExpr::concat(SfExpr::concat(SfExpr::all(), SfExpr::letter(b)), SfExpr::all()));
	if (forbidden.empty()) return SfExpr::all();
	return SfExpr::diff(SfExpr::all(), union_of(forbidden));
}

SfExpr embed_with(const SfExpr& e, const SfExpr& star, const Alphabet& sub, EmbedMemo& memo) {
	switch (e.kind()) {
	case SfExpr::Kind::All: return star;
	case SfExpr::Kind::Empty:
	case SfExpr::Kind::Epsilon: return e;
	case SfExpr::Kind::Letter:
		if (!sub.contains(e.token()))
			throw AlphabetError("letter '" + e.token() + "' is outside the embedded alphabet");
		return e;
	default: break;
	}
	if (auto it = memo.find(e.id()); it != memo.end()) return it->second.second;
	SfExpr l = embed_with(e.lhs(), star, sub, memo);
	SfExpr r = embed_with(e.rhs(), star, sub, memo);
	SfExpr out = e.is(SfExpr::Kind::Union)        ? SfExpr::alt(l, r)
	             : e.is(SfExpr::Kind::Difference) ? SfExpr::diff(l, r)
	                                              : SfExpr::concat(l, r);
	memo.emplace(e.id(), std::make_pair(e, out));
	return out;
}

} // namespace

SfExpr embed_expr(const SfExpr& e, const Alphabet& sub, const Alphabet& full) {
	SfExpr star = sub_star(sub, full);
	EmbedMemo memo;
	return embed_with(e, star, sub, memo);
}

SfExpr Synthesizer::embedded(const SfExpr& e, const Alphabet& sub, const Alphabet& full) {
	if (sub == full) return e;
	auto letters = std::make_pair(sub.letters(), full.letters());
	auto star = sub_star_.find(letters);
	if (star == sub_star_.end()) star = sub_star_.emplace(letters, sub_star(sub, full)).first;
	auto key = std::make_tuple(e.id(), sub.letters(), full.letters());
	if (auto it = embed_cache_.find(key); it != embed_cache_.end()) return it->second.second;
	EmbedMemo memo;
	SfExpr out = embed_with(e, star->second, sub, memo);
	embed_cache_.emplace(key, std::make_pair(e, out));
	return out;
}

bool Synthesizer::aperiodic(const FiniteMonoid& m) {
	auto key = std::make_pair(m.table(), m.identity());
	auto it = aperiodic_cache_.find(key);
	if (it == aperiodic_cache_.end()) it = aperiodic_cache_.emplace(key, !is_aperiodic(m).has_value()).first;
	return it->second;
}

const LocalDivisor& Synthesizer::divisor_at(const FiniteMonoid& m, Element c) {
	auto key = std::make_tuple(m.table(), m.identity(), c);
	auto it = divisors_.find(key);
	if (it == divisors_.end()) {
		it = divisors_.emplace(key, LocalDivisor(m, c)).first;
		++stats_.local_divisors;
		if (std::find(divisor_bases_.begin(), divisor_bases_.end(), m) == divisor_bases_.end())
			divisor_bases_.push_back(m);
	}
	return it->second;
}

SfExpr Synthesizer::finish(SfExpr e) { return options_.simplify ? simplifier_(e) : e; }

SfExpr Synthesizer::synthesize(const Homomorphism& h, Element p) { return solve(h, p, 0); }

SfExpr Synthesizer::solve(const Homomorphism& h, Element p, std::size_t depth) {
	const FiniteMonoid& m = h.monoid();
	++stats_.calls;
	stats_.max_depth = std::max(stats_.max_depth, depth);
	if (m.size() > options_.max_monoid)
		throw CapacityError("monoid of size " + std::to_string(m.size()) + " exceeds the cap of " +
		                    std::to_string(options_.max_monoid));
	if (!m.contains(p)) throw SynthesisError("target " + std::to_string(p) + " is not a monoid element");

	Key key{m.table(), m.identity(), h.alphabet().letters(), h.letter_images(), p};
	if (auto it = memo_.find(key); it != memo_.end()) {
		++stats_.memo_hits;
		return entries_[it->second].expression;
	}
	if (!aperiodic(m)) throw SynthesisError("monoid is not aperiodic");

	auto remember = [&](SfExpr e) {
		memo_.emplace(std::move(key), entries_.size());
		entries_.push_back(MemoEntry{h, p, e});
		return e;
	};

	if (!h.image_contains(p)) return remember(SfExpr::empty());

	const auto& images = h.letter_images();
	auto pick = std::find_if(images.begin(), images.end(), [&](Element x) { return x != m.identity(); });
	if (pick == images.end()) return remember(SfExpr::all()); // phi(A*) = {1} and p = 1

	const Letter c = static_cast<Letter>(pick - images.begin());
	const Homomorphism restricted = h.restrict_without(c);
	const Alphabet& full = h.alphabet();
	const Alphabet& sub = restricted.alphabet();
	const std::vector<Element>& generated = restricted.image();
	const LocalDivisor& ld = divisor_at(m, h.image_of(c));

	auto over_b = [&](Element x) { return embedded(solve(restricted, x, depth + 1), sub, full); };

	std::vector<SfExpr> terms;
	if (restricted.image_contains(p)) {
		SfExpr e = over_b(p);
		if (!e.is(SfExpr::Kind::Empty)) terms.push_back(e);
	}
	for (Element p2 : ld.carrier()) {
		std::optional<SfExpr> mid;
		for (Element p1 : generated) {
			for (Element p3 : generated) {
				if (m.multiply(m.multiply(p1, p2), p3) != p) continue;
				SfExpr left = over_b(p1);
				if (left.is(SfExpr::Kind::Empty)) continue;
				SfExpr right = over_b(p3);
				if (right.is(SfExpr::Kind::Empty)) continue;
				if (!mid) mid = middle(h, c, restricted, ld, p2, depth);
				if (mid->is(SfExpr::Kind::Empty)) break;
				terms.push_back(SfExpr::concat(SfExpr::concat(left, *mid), right));
			}
			if (mid && mid->is(SfExpr::Kind::Empty)) break;
		}
	}
	return remember(finish(union_of(terms)));
}

// phi^-1(p2) ∩ cA* ∩ A*c = c . sigma^-1(psi^-1(p2))
SfExpr Synthesizer::middle(const Homomorphism& h, Letter c, const Homomorphism& restricted,
                           const LocalDivisor& ld, Element p2, std::size_t depth) {
	const FiniteMonoid& m = h.monoid();
	const std::vector<Element>& generated = restricted.image();
	if (ld.divisor().size() >= m.size())
		throw SynthesisError("recursion measure violated: local divisor is not smaller than its base");

	std::vector<std::string> tokens;
	std::vector<Element> images;
	for (Element t : generated) {
		tokens.push_back(element_token(t));
		images.push_back(*ld.from_base(psi_image(h, c, t)));
	}
	Homomorphism over_t(Alphabet(std::move(tokens)), std::make_shared<const FiniteMonoid>(ld.divisor()),
	                    std::move(images));
	SfExpr k = solve(over_t, *ld.from_base(p2), depth + 1);
	if (k.is(SfExpr::Kind::Empty)) return k;
	return finish(SfExpr::concat(SfExpr::letter(h.alphabet()[c]), translate(k, h, c, restricted, depth)));
}

SfExpr Synthesizer::sigma_inverse(const SfExpr& k, const Homomorphism& h, Letter c) {
	if (c >= h.alphabet().size()) throw AlphabetError("letter index outside alphabet");
	return translate(k, h, c, h.restrict_without(c), 0);
}

SfExpr Synthesizer::translate(const SfExpr& k, const Homomorphism& h, Letter c, const Homomorphism& restricted,
                              std::size_t depth) {
	const Alphabet& full = h.alphabet();
	const SfExpr letter_c = SfExpr::letter(full[c]);
	std::unordered_map<const void*, SfExpr> memo;
	std::function<SfExpr(const SfExpr&)> go = [&](const SfExpr& x) -> SfExpr {
		switch (x.kind()) {
		case SfExpr::Kind::All: // (B*c)* = A*c ∪ {1}
			return SfExpr::alt(SfExpr::concat(SfExpr::all(), letter_c), SfExpr::epsilon());
		case SfExpr::Kind::Empty:
		case SfExpr::Kind::Epsilon: return x;
		case SfExpr::Kind::Letter: {
			auto t = parse_element_token(x.token());
			if (!t || !restricted.image_contains(*t))
				throw AlphabetError("letter '" + x.token() + "' is not an element of the submonoid");
			return SfExpr::concat(embedded(solve(restricted, *t, depth + 1), restricted.alphabet(), full), letter_c);
		}
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
	return go(k);
}

std::vector<Synthesizer::MemoEntry> Synthesizer::memo_entries() const { return entries_; }

SfExpr synthesize(const Homomorphism& h, Element p, SynthesisOptions options) {
	Synthesizer s(options);
	return s.synthesize(h, p);
}

StarFreenessVerdict decide_star_free(const Homomorphism& h, const std::vector<Element>& accepting,
                                     SynthesisOptions options) {
	StarFreenessVerdict verdict;
	verdict.monoid_size = h.monoid().size();
	if (h.monoid().size() > options.max_monoid)
		throw CapacityError("monoid of size " + std::to_string(h.monoid().size()) + " exceeds the cap of " +
		                    std::to_string(options.max_monoid));
	verdict.witness = is_aperiodic(h.monoid());
	if (verdict.witness) return verdict;

	verdict.star_free = true;
	Synthesizer synth(options);
	std::vector<SfExpr> parts;
	for (Element p : accepting) {
		SfExpr e = synth.synthesize(h, p);
		verdict.expressions.emplace_back(p, e);
		parts.push_back(e);
	}
	SfExpr all = union_of(parts);
	verdict.expression = options.simplify ? simplify(all) : all;
	verdict.stats = synth.stats();
	return verdict;
}

StarFreenessVerdict decide_star_free(const Dfa& input, SynthesisOptions options) {
	TransitionMonoid tm = transition_monoid(minimize(input), options.max_monoid);
	return decide_star_free(tm.morphism, tm.accepting, options);
}

bool commuting_diagram_check(const Homomorphism& h, Letter c, const Word& w) {
	if (c >= h.alphabet().size()) throw AlphabetError("letter index outside alphabet");
	if (!w.empty() && w.back() != c) throw AlphabetError("word is not a product of blocks ending in c");
	const FiniteMonoid& m = h.monoid();
	const Element cc = h.image_of(c);
	LocalDivisor ld(m, cc);

	Element acc = *ld.from_base(cc);
	Word block;
	for (Letter a : w) {
		if (a != c) {
			block.push_back(a);
			continue;
		}
		Element t = h.evaluate(block); // sigma contributes phi_c(block)
		acc = ld.divisor().multiply(acc, *ld.from_base(psi_image(h, c, t)));
		block.clear();
	}
	Word cw{c};
	cw.insert(cw.end(), w.begin(), w.end());
	Element direct = h.evaluate(cw);
	Element tau = m.multiply(cc, h.evaluate(w));
	return ld.to_base(acc) == direct && direct == tau;
}

} // namespace sfree
