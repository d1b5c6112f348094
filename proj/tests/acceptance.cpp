// Acceptance suite: one line per criterion, non-zero exit if any fails.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "corpus.hpp"
#include "oracles.hpp"
#include "sfree/cli.hpp"
#include "sfree/synthesis.hpp"

using namespace sfree;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
	bool pass = true;
	std::string detail;

	void fail(const std::string& why) {
		if (pass) detail = why;
		pass = false;
	}
};

struct Synthesized {
	corpus::Language lang;
	Dfa input;
	TransitionMonoid tm;
	StarFreenessVerdict verdict;
	std::vector<FiniteMonoid> bases;
};

std::vector<Synthesized> synthesize_corpus() {
	std::vector<Synthesized> out;
	for (const auto& lang : corpus::aperiodic()) {
		Dfa d = lang.dfa();
		auto tm = transition_monoid(d);
		Synthesizer synth;
		StarFreenessVerdict v;
		v.star_free = !is_aperiodic(tm.monoid());
		v.monoid_size = tm.monoid().size();
		if (v.star_free) {
			std::vector<SfExpr> parts;
			for (Element p : tm.accepting) parts.push_back(synth.synthesize(tm.morphism, p));
			v.expression = union_of(parts);
		}
		out.push_back({lang, d, tm, v, synth.divisor_bases()});
	}
	return out;
}

Element power(const FiniteMonoid& m, Element x, std::size_t n) {
	Element r = m.identity();
	for (std::size_t i = 0; i < n; ++i) r = m.multiply(r, x);
	return r;
}

bool associative(const FiniteMonoid& m) {
	for (Element x = 0; x < m.size(); ++x)
		for (Element y = 0; y < m.size(); ++y)
			for (Element z = 0; z < m.size(); ++z)
				if (m.multiply(m.multiply(x, y), z) != m.multiply(x, m.multiply(y, z))) return false;
	return true;
}

bool identity_law(const FiniteMonoid& m) {
	for (Element x = 0; x < m.size(); ++x)
		if (m.multiply(m.identity(), x) != x || m.multiply(x, m.identity()) != x) return false;
	return true;
}

bool brute_aperiodic(const FiniteMonoid& m) {
	for (Element x = 0; x < m.size(); ++x)
		if (power(m, x, m.size()) != power(m, x, m.size() + 1)) return false;
	return true;
}

Letter chosen_letter(const Homomorphism& h) {
	for (Letter a = 0; a < h.alphabet().size(); ++a)
		if (h.image_of(a) != h.monoid().identity()) return a;
	return 0;
}

std::string cli(const std::vector<std::string>& args, int& code) {
	std::ostringstream out, err;
	code = run_cli(args, out, err);
	return out.str() + err.str();
}

Outcome criterion1(const std::vector<Synthesized>& runs) {
	Outcome o;
	for (const auto& r : runs) {
		if (r.lang.letters().size() > 3 || r.tm.monoid().size() > 10) o.fail(r.lang.name + " outside corpus limits");
		if (!r.verdict.star_free || !r.verdict.expression) {
			o.fail(r.lang.name + " not recognized as star-free");
			continue;
		}
		if (!equivalent(eval_expr(*r.verdict.expression, r.lang.letters()), minimize(r.input)))
			o.fail(r.lang.name + " synthesized expression differs");
		// the packaged decision procedure agrees
		auto v = decide_star_free(r.input);
		if (!v.star_free || !equivalent(eval_expr(*v.expression, r.lang.letters()), r.input))
			o.fail(r.lang.name + " decide_star_free differs");
	}
	if (runs.size() < 10) o.fail("corpus has fewer than 10 languages");
	o.detail = o.pass ? std::to_string(runs.size()) + " languages exactly equivalent" : o.detail;
	return o;
}

Outcome criterion2() {
	Outcome o;
	for (const auto& lang : corpus::periodic()) {
		int code = 0;
		auto text = cli({"analyze", "--regex", lang.regex, "--alphabet", lang.alphabet, "--json"}, code);
		if (code != 1) {
			o.fail(lang.name + ": analyze exit code " + std::to_string(code));
			continue;
		}
		auto doc = nlohmann::json::parse(text);
		if (doc["verdict"] != "not-star-free" || doc["witness"].is_null()) {
			o.fail(lang.name + ": no witness reported");
			continue;
		}
		Element x = doc["witness"]["element"];
		std::size_t k = doc["witness"]["index"], d = doc["witness"]["period"];
		const auto tm = transition_monoid(lang.dfa());
		const auto& m = tm.monoid();
		if (x >= m.size() || d < 2) {
			o.fail(lang.name + ": malformed witness");
			continue;
		}
		// x^k = x^(k+d), and no smaller shift returns to x^k
		bool valid = power(m, x, k) == power(m, x, k + d);
		for (std::size_t j = 1; j < d; ++j) valid = valid && power(m, x, k) != power(m, x, k + j);
		if (!valid) o.fail(lang.name + ": witness does not hold in the table");
	}
	if (o.pass) o.detail = std::to_string(corpus::periodic().size()) + " periodic languages, witnesses validated";
	return o;
}

Outcome criterion3(const std::vector<Synthesized>& runs) {
	Outcome o;
	std::size_t monoids = 0, divisors = 0;
	auto audit = [&](const FiniteMonoid& m, const std::string& name) {
		++monoids;
		for (Element c = 0; c < m.size(); ++c) {
			if (c == m.identity()) continue;
			LocalDivisor ld(m, c);
			const auto& md = ld.divisor();
			++divisors;
			if (!associative(md)) o.fail(name + ": divisor not associative");
			if (!identity_law(md) || ld.to_base(md.identity()) != c) o.fail(name + ": divisor identity wrong");
			if (!brute_aperiodic(md)) o.fail(name + ": divisor not aperiodic");
			if (md.size() >= m.size()) o.fail(name + ": divisor not smaller");
			// the product agrees with the definition
			auto naive = oracle::naive_local_divisor(m, c);
			if (naive.carrier != ld.carrier()) o.fail(name + ": carrier differs from cM ∩ Mc");
			for (std::size_t i = 0; i < md.size(); ++i)
				for (std::size_t j = 0; j < md.size(); ++j)
					if (ld.to_base(md.multiply(i, j)) != naive.product.at({ld.carrier()[i], ld.carrier()[j]}))
						o.fail(name + ": divisor product differs");
		}
	};
	for (const auto& r : runs) {
		audit(r.tm.monoid(), r.lang.name);
		for (const auto& base : r.bases) audit(base, r.lang.name + " (recursive)");
	}
	if (o.pass) o.detail = std::to_string(divisors) + " local divisors over " + std::to_string(monoids) + " monoids";
	return o;
}

Outcome criterion4(const std::vector<Synthesized>& runs) {
	Outcome o;
	std::mt19937 rng(20240601);
	std::size_t checked = 0;
	for (const auto& r : runs) {
		const auto& h = r.tm.morphism;
		const Letter c = chosen_letter(h);
		const std::size_t k = h.alphabet().size();
		std::uniform_int_distribution<std::size_t> len(0, 12);
		std::uniform_int_distribution<Letter> letter(0, k - 1);
		const auto& m = h.monoid();
		const Element cc = h.image_of(c);
		auto naive = oracle::naive_local_divisor(m, cc);
		for (int i = 0; i < 100; ++i) {
			Word w(len(rng));
			for (auto& x : w) x = letter(rng);
			if (!w.empty()) w.back() = c;
			++checked;
			// fold c phi(v) c over the blocks with the definitional product
			Element folded = cc, block = m.identity();
			for (Letter x : w) {
				if (x != c) {
					block = m.multiply(block, h.image_of(x));
					continue;
				}
				folded = naive.product.at({folded, m.multiply(m.multiply(cc, block), cc)});
				block = m.identity();
			}
			Word cw{c};
			cw.insert(cw.end(), w.begin(), w.end());
			if (folded != h.evaluate(cw) || !commuting_diagram_check(h, c, w))
				o.fail(r.lang.name + ": diagram fails on \"" + h.alphabet().render_word(w) + "\"");
		}
	}
	if (o.pass) o.detail = std::to_string(checked) + " words in (B*c)*";
	return o;
}

Outcome criterion5() {
	Outcome o;
	std::size_t pairs = 0;
	for (const auto& [regex, alphabet] : {std::pair{"(ab)*", "ab"}, std::pair{"(b|ab)*(a|_)", "ab"},
	                                      std::pair{"(a|b)*ab", "ab"}, std::pair{"a*b*", "ab"}}) {
		auto sigma = Alphabet::from_chars(alphabet);
		auto tm = transition_monoid(regex_to_dfa(parse_regex(regex, sigma), sigma));
		const auto& h = tm.morphism;
		const Letter c = 0;
		std::vector<Letter> others{1};
		auto t = image_submonoid(h, others);
		if (t.size() > 4 || t.size() < 2) {
			o.fail(std::string(regex) + ": |T| = " + std::to_string(t.size()));
			continue;
		}
		std::vector<std::string> tokens;
		for (Element x : t) tokens.push_back(element_token(x));
		Alphabet t_alpha(tokens);
		auto L = [&](std::size_t i) { return SfExpr::letter(tokens[i % tokens.size()]); };
		std::vector<std::pair<SfExpr, SfExpr>> cases{
			{L(0), L(1)},
			{SfExpr::all(), L(1)},
			{L(1), SfExpr::all()},
			{SfExpr::epsilon(), SfExpr::alt(L(0), L(1))},
			{SfExpr::diff(SfExpr::all(), SfExpr::concat(SfExpr::all(), L(1))), SfExpr::concat(L(1), L(2))},
			{SfExpr::concat(L(1), SfExpr::all()), SfExpr::diff(SfExpr::all(), L(0))},
		};
		Synthesizer synth;
		for (const auto& [k1, k2] : cases) {
			++pairs;
			SfExpr joint = synth.sigma_inverse(SfExpr::concat(k1, k2), h, c);
			Dfa lhs = eval_expr(joint, sigma);
			Dfa rhs = combine(Combine::Concatenation, eval_expr(synth.sigma_inverse(k1, h, c), sigma),
			                  eval_expr(synth.sigma_inverse(k2, h, c), sigma));
			if (!equivalent(lhs, rhs)) o.fail(std::string(regex) + ": concatenation identity fails");
			Dfa semantic = oracle::sigma_preimage_dfa(h, c, t, eval_expr(SfExpr::concat(k1, k2), t_alpha));
			if (!equivalent(lhs, semantic)) o.fail(std::string(regex) + ": translation differs from its meaning");
		}
	}
	if (o.pass) o.detail = std::to_string(pairs) + " expression pairs";
	return o;
}

Outcome criterion6(const std::vector<Synthesized>& runs) {
	Outcome o;
	const auto words = oracle::all_words(2, 3);
	std::size_t exprs = 0;
	for (const auto& r : runs) {
		if (r.lang.letters().size() != 2 || !r.verdict.expression) continue;
		++exprs;
		const auto& e = *r.verdict.expression;
		Dfa d = eval_expr(e, r.lang.letters());
		std::uint64_t n = n_bound(e);
		for (const auto& p : words)
			for (const auto& u : words)
				for (const auto& q : words)
					if (oracle::accepts_pumped(d, p, u, n, q) != oracle::accepts_pumped(d, p, u, n + 1, q))
						o.fail(r.lang.name + ": pumping at n(E) = " + std::to_string(n) + " changes membership");
	}
	auto tmp = std::filesystem::temp_directory_path() / "sfree_acceptance_bound.sf";
	for (const auto& [text, expected] : {std::pair{"ALL", "0\n"}, std::pair{"a", "2\n"}, std::pair{"a . b", "5\n"}}) {
		std::ofstream(tmp) << text;
		int code = 0;
		auto got = cli({"bound", "--expr", tmp.string()}, code);
		if (code != 0 || got != expected) o.fail(std::string("bound ") + text + " printed " + got);
	}
	std::filesystem::remove(tmp);
	if (o.pass) o.detail = std::to_string(exprs) + " expressions, spot values 0/2/5";
	return o;
}

Outcome criterion7(const std::vector<Synthesized>& runs) {
	Outcome o;
	for (const auto& r : runs) {
		if (!r.verdict.expression) {
			o.fail(r.lang.name + ": no expression");
			continue;
		}
		auto from_regex = enumerate_members(r.input, 8);
		auto from_expr = enumerate_members(eval_expr(*r.verdict.expression, r.lang.letters()), 8);
		if (from_regex != from_expr) o.fail(r.lang.name + ": members up to length 8 differ");
		// and against a matcher that never builds an automaton
		std::vector<Word> direct;
		auto parsed = r.lang.parsed();
		for (const auto& w : oracle::all_words(r.lang.letters().size(), 8))
			if (oracle::regex_matches(parsed, w)) direct.push_back(w);
		if (direct != from_expr) o.fail(r.lang.name + ": direct matcher disagrees");
	}
	if (o.pass) o.detail = std::to_string(runs.size()) + " languages agree on all words of length <= 8";
	return o;
}

Outcome criterion8(const std::vector<Synthesized>& runs) {
	Outcome o;
	for (const auto& r : runs)
		if (!unit_factorization_check(r.tm.monoid())) o.fail(r.lang.name + ": unit factorization fails");
	if (unit_factorization_check(validate_monoid({{0, 1}, {1, 0}}, 0))) o.fail("passes on Z2");
	if (o.pass) o.detail = "holds on " + std::to_string(runs.size()) + " aperiodic monoids, fails on Z2";
	return o;
}

} // namespace

int main() {
	bool all = true;
	auto report = [&](int n, const std::string& title, double limit, const std::function<Outcome()>& body) {
		auto start = Clock::now();
		Outcome o;
		try {
			o = body();
		} catch (const std::exception& e) {
			o.fail(std::string("exception: ") + e.what());
		}
		double secs = std::chrono::duration<double>(Clock::now() - start).count();
		if (limit > 0 && secs >= limit) o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(limit) + " s");
		all = all && o.pass;
		std::ostringstream line;
		line.precision(3);
		line << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << title << " (" << std::fixed << secs
		     << " s) " << o.detail;
		std::cout << line.str() << std::endl;
	};

	std::vector<Synthesized> runs;
	report(1, "synthesized expressions equal their languages", 120, [&] {
		runs = synthesize_corpus();
		return criterion1(runs);
	});
	report(2, "periodic languages rejected with valid witnesses", 0, criterion2);
	report(3, "local divisors are smaller aperiodic monoids", 10, [&] { return criterion3(runs); });
	report(4, "commuting diagram on random block words", 0, [&] { return criterion4(runs); });
	report(5, "translation preserves concatenation", 0, criterion5);
	report(6, "pumping bound holds", 60, [&] { return criterion6(runs); });
	report(7, "membership agrees up to length 8", 0, [&] { return criterion7(runs); });
	report(8, "unit factorization self-check", 0, [&] { return criterion8(runs); });
	return all ? 0 : 1;
}
