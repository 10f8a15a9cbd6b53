#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "selfref/cli.hpp"

using namespace selfref;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("encode") {
  Run r = run({"encode", "--scheme", "prime", "S0"});
  CHECK(r.code == 0);
  CHECK(r.out == "24\n");
  CHECK(run({"encode", "S"}).code == 2);  // "S" alone is not a term
  Run bad = run({"encode", "--scheme", "prime", "S("});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("parse error") != std::string::npos);
  CHECK(run({"encode", "--scheme", "beta", "0"}).out == std::to_string(oracle::seqNumber({1}, 1000)) + "\n");
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"chain", "--bogus"}).code == 2);
  CHECK(run({"chain", "--scheme", "godel"}).code == 2);
  CHECK(run({"chain", "--max-steps", "0"}).code == 2);
  CHECK(run({"chain", "--format", "xml"}).code == 2);
  CHECK(run({"decode", "10"}).code == 2);
  CHECK(run({"decode", "ten"}).code == 2);
  CHECK(run({"sb", "24"}).code == 2);
  CHECK(run({"seqnum", "--scheme", "beta", "--mu-cutoff", "10", "4", "0", "2"}).code == 2);
  CHECK(run({"expand-appendix", "--scheme", "beta"}).code == 2);
}

TEST_CASE("small commands") {
  CHECK(run({"decode", "24"}).out == "S0\n");
  CHECK(run({"numeral", "1"}).out == "24\n");
  CHECK(run({"numeral", "8"}).out == "20989466479219044807000\n");
  CHECK(run({"beta", "0", "3"}).out == "0\n");
  CHECK(run({"sb", "1033121304", "17", "2"}).out == "24\n");
  CHECK(run({"sub", "3"}).code == 0);
  CHECK(run({"diag", "24"}).out == "24\n");
  CHECK(run({"--version"}).code == 0);
}

TEST_CASE("chain json") {
  Run r = run({"chain", "--scheme", "prime", "--max-steps", "5", "--format", "json"});
  CHECK(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["command"] == "chain");
  CHECK(j["version"] == "0.1.0");
  CHECK(j["config"]["maxSteps"] == "5");
  CHECK(j["result"]["strictlyIncreasing"] == true);
  CHECK(j["result"]["entries"][0]["exact"] == "8");
  CHECK(j["result"]["entries"][4].contains("lowerBoundLog2"));
}

TEST_CASE("checks exit 0 when clean, 3 when not") {
  CHECK(run({"lemma1", "--bound", "50"}).code == 0);
  CHECK(run({"nonid", "--bound", "50", "--scheme", "beta"}).code == 0);
  CHECK(run({"expand-seq"}).code == 0);
  CHECK(run({"expand-sub"}).code == 0);
  CHECK(run({"expand-appendix"}).code == 0);
  CHECK(run({"arrays"}).code == 0);
  // A beta cutoff too small to encode the seed pair leaves the expansion inconclusive.
  Run r = run({"expand-sub", "--scheme", "beta", "--mu-cutoff", "10"});
  CHECK(r.code == 3);
  CHECK(r.out.find("Inconclusive") != std::string::npos);
}

TEST_CASE("json output round-trips byte for byte") {
  const std::vector<std::vector<std::string>> commands{
      {"encode", "Ex0(x0=Sx1)"}, {"decode", "24"},   {"numeral", "8"},         {"beta", "122", "1"},
      {"seqnum", "3", "1"},      {"sub", "17"},      {"sb", "1033121304", "17", "2"}, {"diag", "1033121304"},
      {"chain"},                 {"lemma1", "--bound", "20"},  {"nonid", "--bound", "20"}, {"expand-seq"},
      {"expand-sub", "--sub-reading", "outer-num"}, {"expand-appendix"}, {"arrays", "--grid-size", "2"}};
  for (auto args : commands) {
    args.push_back("--format");
    args.push_back("json");
    Run r = run(args);
    INFO(args[0]);
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j.dump(2) + "\n" == r.out);
    CHECK(run(args).out == r.out);
    // no native JSON numbers anywhere
    std::function<void(const Json&)> walk = [&](const Json& v) {
      CHECK_FALSE(v.is_number());
      if (v.is_structured())
        for (const auto& c : v) walk(c);
    };
    walk(j);
  }
}

TEST_CASE("seed terms file") {
  const std::string path = "selfref_seed_terms.txt";
  {
    std::ofstream f(path);
    f << "# seed list\nSx0\n\n(x0*x0)\n";
  }
  Run r = run({"arrays", "--seed-terms", path, "--grid-size", "2", "--sigma-row", "1", "--format", "json"});
  CHECK(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["result"]["bundle"]["terms"].size() == 2);
  CHECK(j["result"]["diagonal"]["cell"] == "(S0*S0)");
  {
    std::ofstream f(path);
    f << "S0\n";
  }
  CHECK(run({"arrays", "--seed-terms", path}).code == 2);  // no free x0
  std::remove(path.c_str());
  CHECK(run({"arrays", "--seed-terms", "/nonexistent/terms"}).code == 2);
  CHECK(run({"arrays", "--sigma-row", "9"}).code == 2);
}
