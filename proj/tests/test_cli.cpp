#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "sfree/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
	int code;
	std::string out;
	std::string err;
};

Run run(std::vector<std::string> args) {
	std::ostringstream out, err;
	int code = sfree::run_cli(args, out, err);
	return {code, out.str(), err.str()};
}

// Scratch directory removed at scope exit.
struct Scratch {
	fs::path dir;
	Scratch() : dir(fs::temp_directory_path() / ("sfree_cli_" + std::to_string(std::random_device{}()))) {
		fs::create_directories(dir);
	}
	~Scratch() { fs::remove_all(dir); }
	std::string file(const std::string& name, const std::string& content) const {
		auto p = dir / name;
		std::ofstream(p) << content;
		return p.string();
	}
	std::string path(const std::string& name) const { return (dir / name).string(); }
};

bool contains(const std::string& haystack, const std::string& needle) {
	return haystack.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("analyze") {
	auto even = run({"analyze", "--regex", "(aa)*"});
	CHECK(even.code == 1);
	CHECK(contains(even.out, "monoid size: 2"));
	CHECK(contains(even.out, "aperiodic: no; witness element 1 index 1 period 2"));

	auto abstar = run({"analyze", "--regex", "(ab)*"});
	CHECK(abstar.code == 0);
	CHECK(abstar.out == "monoid size: 6\naperiodic: yes\n");

	auto j = run({"analyze", "--regex", "(aa)*", "--json"});
	CHECK(j.code == 1);
	auto doc = nlohmann::json::parse(j.out);
	CHECK(doc["verdict"] == "not-star-free");
	CHECK(doc["monoid_size"] == 2);
	CHECK(doc["witness"]["period"] == 2);
	CHECK(doc["expression"].is_null());
}

TEST_CASE("synthesize then verify") {
	Scratch s;
	auto out = s.path("abstar.sf");
	auto r = run({"synthesize", "--regex", "(ab)*", "-o", out});
	CHECK(r.code == 0);
	CHECK(contains(r.out, "expression: "));
	CHECK(contains(r.out, "metrics: node_count "));
	REQUIRE(fs::exists(out));

	auto v = run({"verify", "--regex", "(ab)*", "--expr", out});
	CHECK(v.code == 0);
	CHECK(v.out == "equivalent: yes\n");

	auto wrong = run({"verify", "--regex", "(ab)*a", "--expr", out});
	CHECK(wrong.code == 1);
	CHECK(wrong.out == "equivalent: no; shortest counterexample \"\" (length 0)\n");

	auto refused = run({"synthesize", "--regex", "(aa)*"});
	CHECK(refused.code == 1);
	CHECK(contains(refused.out, "refused: language is not star-free"));

	auto j = run({"synthesize", "--regex", "a*b*", "--json"});
	CHECK(j.code == 0);
	auto doc = nlohmann::json::parse(j.out);
	CHECK(doc["verdict"] == "star-free");
	CHECK(doc["witness"].is_null());
	CHECK(doc["metrics"]["node_count"].get<int>() > 0);
	auto expr = s.file("ab.sf", doc["expression"].get<std::string>());
	CHECK(run({"verify", "--regex", "a*b*", "--expr", expr}).code == 0);

	auto raw = run({"synthesize", "--regex", "a*b*", "--no-simplify", "--json"});
	CHECK(raw.code == 0);
	CHECK(nlohmann::json::parse(raw.out)["metrics"]["node_count"] >= doc["metrics"]["node_count"]);
}

TEST_CASE("DFA input") {
	Scratch s;
	auto dfa = s.file("even.json", R"({"alphabet":["a"],"states":2,"initial":0,"accepting":[0],"delta":[[1],[0]]})");
	CHECK(run({"analyze", "--dfa", dfa}).code == 1);
	auto one = s.file("one.json", R"({"alphabet":["a","b"],"states":3,"initial":0,"accepting":[1],"delta":[[1,2],[2,2],[2,2]]})");
	auto r = run({"synthesize", "--dfa", one});
	CHECK(r.code == 0);
	auto bad = s.file("bad.json", R"({"alphabet":["a"],"states":1})");
	auto b = run({"analyze", "--dfa", bad});
	CHECK(b.code == 2);
	CHECK(contains(b.err, "error: invalid_dfa:"));
}

TEST_CASE("monoid input") {
	Scratch s;
	// {1, 0}: a maps to the zero, accept the zero -> a+ over {a}
	auto m = s.file("zero.txt", "2 0\n0 1\n1 1\n");
	auto r = run({"synthesize", "--monoid", m, "--letters", "a=1", "--accept", "1"});
	CHECK(r.code == 0);
	CHECK(contains(r.out, "monoid size: 2"));
	auto z2 = s.file("z2.txt", "2 0\n0 1\n1 0\n");
	CHECK(run({"analyze", "--monoid", z2}).code == 1);
	auto broken = s.file("broken.txt", "3 0\n0 1 2\n1 1 1\n2 2 1\n");
	auto b = run({"analyze", "--monoid", broken});
	CHECK(b.code == 2);
	CHECK(contains(b.err, "error: invalid_monoid: not associative at ("));
}

TEST_CASE("bound") {
	Scratch s;
	auto run_bound = [&](const std::string& text) { return run({"bound", "--expr", s.file("e.sf", text)}); };
	CHECK(run_bound("a . b").out == "5\n");
	CHECK(run_bound("ALL").out == "0\n");
	CHECK(run_bound("a").out == "2\n");
	CHECK(run_bound("a | (ALL \\ b)").out == "2\n");
	auto bad = run_bound("a . ");
	CHECK(bad.code == 2);
	CHECK(contains(bad.err, "error: parse_error:"));
}

TEST_CASE("oracle") {
	Scratch s;
	auto agree = run({"oracle", "--regex", "(ab)*", "--regex", "(ab)*|#", "--maxlen", "6"});
	CHECK(agree.code == 0);
	CHECK(agree.out == "agree on all words up to length 6 (4 members)\n");

	auto differ = run({"oracle", "--regex", "a*", "--regex", "(aa)*", "--maxlen", "4"});
	CHECK(differ.code == 1);
	CHECK(contains(differ.out, "disagreement at \"a\""));

	auto e = s.file("e.sf", "ALL \\ (ALL . b . ALL)");
	auto mixed = run({"oracle", "--expr", e, "--regex", "a*", "--alphabet", "ab", "--maxlen", "5"});
	CHECK(mixed.code == 0);

	CHECK(run({"oracle", "--regex", "a", "--maxlen", "3"}).code == 2);
}

TEST_CASE("errors exit with code 2") {
	auto none = run({"analyze"});
	CHECK(none.code == 2);
	CHECK(contains(none.err, "error: usage:"));
	CHECK(run({"analyze", "--regex", "(a"}).code == 2);
	CHECK(run({"analyze", "--regex", "a", "--alphabet", "b"}).code == 2);
	CHECK(run({"frobnicate"}).code == 2);
	auto missing = run({"verify", "--regex", "a", "--expr", "/nonexistent/e.sf"});
	CHECK(missing.code == 2);
	CHECK(contains(missing.err, "error: io_error:"));
	auto cap = run({"analyze", "--regex", "(ab)*", "--max-monoid", "3"});
	CHECK(cap.code == 2);
	CHECK(contains(cap.err, "error: monoid_cap:"));
	auto help = run({"--help"});
	CHECK(help.code == 0);
	CHECK(contains(help.out, "synthesize"));
}
