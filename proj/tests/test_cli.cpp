#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  json parsed() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = tnf::cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("fixprob reports both closed forms and the estimate") {
  const auto r = run({"fixprob", "--alpha", R"({"weights":{"1":"1/2","2":"1/2"}})", "--g",
                      "(1 2)(3 4 5)", "--samples", "20000", "--seed", "5"});
  REQUIRE(r.code == 0);
  const json j = r.parsed();
  CHECK(j["paper_value"] == "1/8");
  CHECK(j["full_value"] == "1/8");
  CHECK(j["exhaustive_value"] == "1/8");
  CHECK(j["seed"] == 5);
  CHECK(j["mode"] == "rational");
  CHECK(run({"--seed", "5", "fixprob", "--alpha", R"({"1":"1/2","2":"1/2"})", "--g",
             "(1 2)(3 4 5)", "--samples", "20000"})
            .parsed()["mc_estimate"] == j["mc_estimate"]);
}

TEST_CASE("stochastic commands need a seed") {
  const auto r = run({"sample", "--alpha", R"({"1":"1"})", "--n", "4"});
  CHECK(r.code == 2);
  CHECK(json::parse(r.err)["kind"] == "usage");
  CHECK(run({"finetti", "--alpha", R"({"1":"1"})", "--n", "4"}).code == 2);
}

TEST_CASE("usage and domain errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"classify", "--alpha", R"({"1":"1/2","2":"1/3"})"}).code == 1);
  CHECK(run({"character", "--alpha", R"({"1":"1"})", "--g", "(1 1)"}).code == 1);
  CHECK(run({"classify", "--alpha", R"({"1":0.5,"2":0.5})"}).code == 1);
  CHECK(run({"--mode", "float", "classify", "--alpha", R"({"1":0.5,"2":0.5})"}).code == 0);
  const auto big = run({"lattice", "enumerate", "--n", "6"});
  CHECK(big.code == 1);
  CHECK(big.err.find("cap") != std::string::npos);
  CHECK(run({"part-l", "--m", "3", "--block", "3"}).code == 1);
}

TEST_CASE("alpha output round-trips as input") {
  const auto r = run({"classify", "--alpha", R"({"weights":{"2":"1/3","1":"2/3"}})"});
  REQUIRE(r.code == 0);
  const json alpha = r.parsed()["alpha"];
  const auto again = run({"classify", "--alpha", alpha.dump()});
  REQUIRE(again.code == 0);
  CHECK(again.parsed()["alpha"] == alpha);
  CHECK(again.parsed()["sequence_action"]["class"] == "TNF");
}

TEST_CASE("sample output round-trips through young") {
  const auto r = run({"sample", "--alpha", R"({"1":"1/2","-1":"1/4","0":"1/4"})", "--n", "12",
                      "--seed", "9"});
  REQUIRE(r.code == 0);
  const json j = r.parsed();
  CHECK(j["self_normalizing"] == false);
  const auto y = run({"young", "--partition", j["partition"].dump()});
  REQUIRE(y.code == 0);
  CHECK(y.parsed()["normalizer"] == j["normalizer"]);
}

TEST_CASE("character and part-l") {
  const auto c = run({"character", "--alpha", R"({"-1":"1"})", "--g", "(1 2)"});
  REQUIRE(c.code == 0);
  CHECK(c.parsed()["character"] == "-1");
  const auto p = run({"part-l", "--m", "10"});
  REQUIRE(p.code == 0);
  CHECK(p.parsed()["overlap"] == "1/19");
  CHECK(run({"part-l", "--m", "3", "--samples", "100"}).code == 2);
}

TEST_CASE("lattice commands") {
  const auto e = run({"lattice", "enumerate", "--n", "3"});
  REQUIRE(e.code == 0);
  CHECK(e.parsed()["subgroup_count"] == 6);
  CHECK(e.parsed()["class_count"] == 4);
  const auto h = run({"lattice", "hierarchy", "--n", "3", "--start", "(1 2 3)"});
  REQUIRE(h.code == 0);
  CHECK(h.parsed()["steps"] == 1);
  CHECK(run({"lattice", "hierarchy", "--n", "3", "--start", "#0"}).parsed()["steps"] == 1);
  CHECK(run({"lattice", "hierarchy", "--n", "3", "--start", "#99"}).code == 1);
}

TEST_CASE("csv output") {
  const auto r = run({"--csv", "fixprob", "--alpha", R"({"1":"1"})", "--g", "(1 2)", "--samples",
                      "10", "--seed", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("row,length", 0) == 0);
}
