#include "sfree/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "sfree/error.hpp"
#include "sfree/homomorphism.hpp"
#include "sfree/regex.hpp"
#include "sfree/synthesis.hpp"

namespace sfree {

namespace {

using nlohmann::json;

class IoError : public Error {
public:
	explicit IoError(const std::string& what) : Error("io_error", what) {}
};

class UsageError : public Error {
public:
	explicit UsageError(const std::string& what) : Error("usage", what) {}
};

std::string read_file(const std::string& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) throw IoError("cannot read '" + path + "'");
	std::ostringstream buf;
	buf << in.rdbuf();
	return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
	std::ofstream out(path, std::ios::binary);
	if (!out) throw IoError("cannot write '" + path + "'");
	out << text;
}

std::string trim(std::string s) {
	auto blank = [](unsigned char ch) { return std::isspace(ch) != 0; };
	s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), blank));
	s.erase(std::find_if_not(s.rbegin(), s.rend(), blank).base(), s.end());
	return s;
}

// Letters of a regex in sorted order, ignoring operators.
std::set<std::string> regex_letters(const std::string& text) {
	static const std::set<std::string> syntax{"(", ")", "|", "*", "_", "#", " ", "\t"};
	std::set<std::string> out;
	for (auto& ch : utf8_chars(text))
		if (!syntax.count(ch)) out.insert(ch);
	return out;
}

Alphabet sorted_alphabet(const std::set<std::string>& letters) {
	return Alphabet(std::vector<std::string>(letters.begin(), letters.end()));
}

std::optional<Alphabet> declared_alphabet(const std::string& text) {
	if (text.empty()) return std::nullopt;
	if (text.find(',') != std::string::npos) {
		std::vector<std::string> letters;
		std::stringstream in(text);
		for (std::string tok; std::getline(in, tok, ',');) letters.push_back(trim(tok));
		return Alphabet(std::move(letters));
	}
	return Alphabet::from_chars(text);
}

struct LanguageSource {
	enum class Kind { Regex, Dfa, Expr } kind;
	std::string value; // regex text or file path
};

struct Language {
	Dfa dfa;
	std::string label;
};

Dfa load_dfa_file(const std::string& path) {
	json j;
	try {
		j = json::parse(read_file(path));
	} catch (const json::parse_error& e) {
		throw DfaError(std::string("malformed DFA JSON: ") + e.what());
	}
	return dfa_from_json(j);
}

Language load_language(const LanguageSource& src, const Alphabet& alphabet) {
	switch (src.kind) {
	case LanguageSource::Kind::Regex:
		return {regex_to_dfa(parse_regex(src.value, alphabet), alphabet), "regex " + src.value};
	case LanguageSource::Kind::Dfa: {
		Dfa d = load_dfa_file(src.value);
		if (d.alphabet() != alphabet) throw AlphabetError("DFA '" + src.value + "' uses a different alphabet");
		return {minimize(d), "dfa " + src.value};
	}
	case LanguageSource::Kind::Expr:
		return {eval_expr(parse_expr(read_file(src.value), alphabet), alphabet), "expr " + src.value};
	}
	throw Error("internal", "unknown language source");
}

// Alphabet shared by all sources: --alphabet if given, else the first DFA's,
// else the sorted letters of all regexes and expressions.
Alphabet resolve_alphabet(const std::vector<LanguageSource>& sources, const std::string& declared) {
	if (auto a = declared_alphabet(declared)) return *a;
	for (const auto& s : sources)
		if (s.kind == LanguageSource::Kind::Dfa) return load_dfa_file(s.value).alphabet();
	std::set<std::string> letters;
	for (const auto& s : sources) {
		if (s.kind == LanguageSource::Kind::Regex) {
			auto found = regex_letters(s.value);
			letters.insert(found.begin(), found.end());
		} else {
			auto found = letters_of(parse_expr(read_file(s.value)));
			letters.insert(found.begin(), found.end());
		}
	}
	return sorted_alphabet(letters);
}

// "a=1,b=2" with letters in the given order.
std::pair<Alphabet, std::vector<Element>> parse_letter_map(const std::string& text) {
	std::vector<std::string> letters;
	std::vector<Element> images;
	std::stringstream in(text);
	for (std::string item; std::getline(in, item, ',');) {
		auto eq = item.find('=');
		if (eq == std::string::npos) throw UsageError("letter map entries look like 'a=1'");
		letters.push_back(trim(item.substr(0, eq)));
		try {
			images.push_back(static_cast<Element>(std::stoul(item.substr(eq + 1))));
		} catch (const std::exception&) {
			throw UsageError("bad element index in letter map entry '" + item + "'");
		}
	}
	return {Alphabet(std::move(letters)), std::move(images)};
}

std::vector<Element> parse_element_list(const std::string& text) {
	std::vector<Element> out;
	std::stringstream in(text);
	for (std::string item; std::getline(in, item, ',');) {
		item = trim(item);
		if (item.empty()) continue;
		try {
			out.push_back(static_cast<Element>(std::stoul(item)));
		} catch (const std::exception&) {
			throw UsageError("bad element index '" + item + "'");
		}
	}
	return out;
}

json witness_json(const std::optional<AperiodicityWitness>& w) {
	if (!w) return nullptr;
	return json{{"element", w->element}, {"index", w->index}, {"period", w->period}};
}

json metrics_json(const SfMetrics& m) {
	return json{{"node_count", m.node_count},
	            {"dag_nodes", m.dag_nodes},
	            {"concat_depth", m.concat_depth},
	            {"n_bound", m.n_bound}};
}

std::string aperiodic_line(const StarFreenessVerdict& v) {
	if (!v.witness) return "aperiodic: yes";
	return "aperiodic: no; witness element " + std::to_string(v.witness->element) + " index " +
	       std::to_string(v.witness->index) + " period " + std::to_string(v.witness->period);
}

struct InputOptions {
	std::string regex, dfa, monoid, letters, accept, alphabet;
};

void add_input_options(CLI::App* cmd, InputOptions& in, bool allow_monoid) {
	auto* r = cmd->add_option("--regex", in.regex, "regular expression over single-character letters");
	auto* d = cmd->add_option("--dfa", in.dfa, "DFA JSON file");
	r->excludes(d);
	cmd->add_option("--alphabet", in.alphabet, "alphabet, e.g. 'abc' or 'a,b,c'");
	if (allow_monoid) {
		auto* m = cmd->add_option("--monoid", in.monoid, "monoid table file");
		m->excludes(r)->excludes(d);
		cmd->add_option("--letters", in.letters, "letter images for --monoid, e.g. 'a=1,b=2'");
		cmd->add_option("--accept", in.accept, "accepting elements for --monoid, e.g. '1,3'");
	}
}

LanguageSource single_source(const InputOptions& in) {
	if (!in.regex.empty()) return {LanguageSource::Kind::Regex, in.regex};
	if (!in.dfa.empty()) return {LanguageSource::Kind::Dfa, in.dfa};
	throw UsageError("exactly one of --regex or --dfa is required");
}

// Runs the decision procedure for regex/DFA/monoid input.
StarFreenessVerdict decide(const InputOptions& in, SynthesisOptions options, bool synthesize) {
	if (!in.monoid.empty()) {
		auto monoid = std::make_shared<const FiniteMonoid>(parse_monoid_text(read_file(in.monoid)));
		if (in.letters.empty()) {
			if (synthesize) throw UsageError("--monoid synthesis needs --letters and --accept");
			StarFreenessVerdict v;
			v.monoid_size = monoid->size();
			if (monoid->size() > options.max_monoid)
				throw CapacityError("monoid of size " + std::to_string(monoid->size()) + " exceeds the cap of " +
				                    std::to_string(options.max_monoid));
			v.witness = is_aperiodic(*monoid);
			v.star_free = !v.witness;
			return v;
		}
		auto [alphabet, images] = parse_letter_map(in.letters);
		Homomorphism h(std::move(alphabet), monoid, std::move(images));
		auto accepting = parse_element_list(in.accept);
		for (Element p : accepting)
			if (!monoid->contains(p)) throw MonoidError("accepting element " + std::to_string(p) + " out of range");
		if (!synthesize) {
			StarFreenessVerdict v;
			v.monoid_size = monoid->size();
			v.witness = is_aperiodic(*monoid);
			v.star_free = !v.witness;
			return v;
		}
		return decide_star_free(h, accepting, options);
	}
	auto src = single_source(in);
	Alphabet alphabet = resolve_alphabet({src}, in.alphabet);
	Dfa d = load_language(src, alphabet).dfa;
	if (!synthesize) {
		TransitionMonoid tm = transition_monoid(minimize(d), options.max_monoid);
		StarFreenessVerdict v;
		v.monoid_size = tm.monoid().size();
		v.witness = is_aperiodic(tm.monoid());
		v.star_free = !v.witness;
		return v;
	}
	return decide_star_free(d, options);
}

json verdict_json(const StarFreenessVerdict& v) {
	json j;
	j["verdict"] = v.star_free ? "star-free" : "not-star-free";
	j["monoid_size"] = v.monoid_size;
	j["witness"] = witness_json(v.witness);
	j["expression"] = v.expression ? json(render_expr(*v.expression)) : json(nullptr);
	j["metrics"] = v.expression ? metrics_json(metrics(*v.expression)) : json(nullptr);
	return j;
}

int cmd_analyze(const InputOptions& in, bool as_json, std::size_t cap, std::ostream& out) {
	SynthesisOptions options;
	options.max_monoid = cap;
	StarFreenessVerdict v = decide(in, options, false);
	if (as_json) {
		out << verdict_json(v).dump() << '\n';
	} else {
		out << "monoid size: " << v.monoid_size << '\n' << aperiodic_line(v) << '\n';
	}
	return v.star_free ? 0 : 1;
}

int cmd_synthesize(const InputOptions& in, bool as_json, bool no_simplify, std::size_t cap,
                   const std::string& output, std::ostream& out) {
	SynthesisOptions options;
	options.simplify = !no_simplify;
	options.max_monoid = cap;
	StarFreenessVerdict v = decide(in, options, true);
	std::string text = v.expression ? render_expr(*v.expression) : std::string();
	if (v.expression && !output.empty()) write_file(output, text + "\n");
	if (as_json) {
		out << verdict_json(v).dump() << '\n';
	} else {
		out << "monoid size: " << v.monoid_size << '\n' << aperiodic_line(v) << '\n';
		if (v.expression) {
			SfMetrics m = metrics(*v.expression);
			out << "expression: " << text << '\n'
			    << "metrics: node_count " << m.node_count << ", dag_nodes " << m.dag_nodes << ", concat_depth "
			    << m.concat_depth << ", n_bound " << m.n_bound << '\n';
		} else {
			out << "refused: language is not star-free\n";
		}
	}
	return v.star_free ? 0 : 1;
}

int cmd_verify(const InputOptions& in, const std::string& expr_path, std::ostream& out) {
	auto src = single_source(in);
	Alphabet alphabet = resolve_alphabet({src}, in.alphabet);
	Dfa target = load_language(src, alphabet).dfa;
	Dfa candidate = load_language({LanguageSource::Kind::Expr, expr_path}, alphabet).dfa;
	if (equivalent(target, candidate)) {
		out << "equivalent: yes\n";
		return 0;
	}
	Word w = *distinguishing_word(target, candidate);
	out << "equivalent: no; shortest counterexample \"" << alphabet.render_word(w) << "\" (length " << w.size()
	    << ")\n";
	return 1;
}

int cmd_bound(const std::string& expr_path, std::ostream& out) {
	SfExpr e = parse_expr(read_file(expr_path));
	out << n_bound(e) << '\n';
	return 0;
}

int cmd_oracle(const std::vector<LanguageSource>& sources, const std::string& declared, std::size_t maxlen,
               std::ostream& out) {
	if (sources.size() != 2) throw UsageError("oracle needs exactly two of --regex/--dfa/--expr");
	Alphabet alphabet = resolve_alphabet(sources, declared);
	Language first = load_language(sources[0], alphabet);
	Language second = load_language(sources[1], alphabet);
	auto xs = enumerate_members(first.dfa, maxlen);
	auto ys = enumerate_members(second.dfa, maxlen);
	auto before = [](const Word& a, const Word& b) {
		return a.size() != b.size() ? a.size() < b.size() : a < b;
	};
	std::size_t i = 0, j = 0;
	while (i < xs.size() || j < ys.size()) {
		bool take_x = j == ys.size() || (i < xs.size() && before(xs[i], ys[j]));
		bool take_y = i == xs.size() || (j < ys.size() && before(ys[j], xs[i]));
		if (!take_x && !take_y) {
			++i;
			++j;
			continue;
		}
		const Word& w = take_x ? xs[i] : ys[j];
		out << "disagreement at \"" << alphabet.render_word(w) << "\": " << first.label << " "
		    << (take_x ? "accepts" : "rejects") << ", " << second.label << " " << (take_x ? "rejects" : "accepts")
		    << '\n';
		return 1;
	}
	out << "agree on all words up to length " << maxlen << " (" << xs.size() << " members)\n";
	return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
	CLI::App app{"Star-freeness decision and star-free expression synthesis", "sfree"};
	app.require_subcommand(1);

	InputOptions analyze_in, synth_in, verify_in;
	bool analyze_json = false, synth_json = false, no_simplify = false;
	std::size_t analyze_cap = default_monoid_cap, synth_cap = default_monoid_cap;
	std::string synth_output, verify_expr, bound_expr, oracle_alphabet;
	std::size_t maxlen = 8;
	std::vector<std::string> oracle_regex, oracle_dfa, oracle_expr;

	auto* analyze = app.add_subcommand("analyze", "report syntactic monoid size and aperiodicity");
	add_input_options(analyze, analyze_in, true);
	analyze->add_flag("--json", analyze_json, "emit one JSON object");
	analyze->add_option("--max-monoid", analyze_cap, "monoid size cap");

	auto* synth = app.add_subcommand("synthesize", "synthesize a star-free expression");
	add_input_options(synth, synth_in, true);
	synth->add_flag("--json", synth_json, "emit one JSON object");
	synth->add_flag("--no-simplify", no_simplify, "keep the raw construction");
	synth->add_option("--max-monoid", synth_cap, "monoid size cap");
	synth->add_option("-o,--output", synth_output, "also write the expression to this file");

	auto* verify = app.add_subcommand("verify", "check a star-free expression against a language");
	add_input_options(verify, verify_in, false);
	verify->add_option("--expr", verify_expr, "expression file")->required();

	auto* bound = app.add_subcommand("bound", "print the pumping bound n(E) of an expression");
	bound->add_option("--expr", bound_expr, "expression file")->required();

	auto* oracle = app.add_subcommand("oracle", "compare two languages on all short words");
	auto* o_regex = oracle->add_option("--regex", oracle_regex, "regular expression");
	auto* o_dfa = oracle->add_option("--dfa", oracle_dfa, "DFA JSON file");
	auto* o_expr = oracle->add_option("--expr", oracle_expr, "expression file");
	oracle->add_option("--maxlen", maxlen, "maximum word length")->required();
	oracle->add_option("--alphabet", oracle_alphabet, "alphabet, e.g. 'abc' or 'a,b,c'");

	try {
		std::vector<std::string> reversed(args.rbegin(), args.rend());
		app.parse(reversed);
	} catch (const CLI::CallForHelp&) {
		out << app.help();
		return 0;
	} catch (const CLI::ParseError& e) {
		err << "error: usage: " << e.what() << '\n';
		return 2;
	}

	try {
		if (analyze->parsed()) return cmd_analyze(analyze_in, analyze_json, analyze_cap, out);
		if (synth->parsed()) return cmd_synthesize(synth_in, synth_json, no_simplify, synth_cap, synth_output, out);
		if (verify->parsed()) return cmd_verify(verify_in, verify_expr, out);
		if (bound->parsed()) return cmd_bound(bound_expr, out);
		if (oracle->parsed()) {
			std::vector<LanguageSource> sources;
			std::map<CLI::Option*, std::size_t> used;
			for (CLI::Option* opt : oracle->parse_order()) {
				std::size_t i = used[opt]++;
				if (opt == o_regex) sources.push_back({LanguageSource::Kind::Regex, oracle_regex.at(i)});
				else if (opt == o_dfa) sources.push_back({LanguageSource::Kind::Dfa, oracle_dfa.at(i)});
				else if (opt == o_expr) sources.push_back({LanguageSource::Kind::Expr, oracle_expr.at(i)});
			}
			return cmd_oracle(sources, oracle_alphabet, maxlen, out);
		}
	} catch (const Error& e) {
		err << "error: " << e.code() << ": " << e.what() << '\n';
		return 2;
	} catch (const std::exception& e) {
		err << "error: internal: " << e.what() << '\n';
		return 2;
	}
	return 2;
}

} // namespace sfree
