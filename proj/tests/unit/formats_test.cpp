#include <string>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "epgr/awning.hpp"
#include "epgr/classify.hpp"
#include "epgr/graph.hpp"
#include "epgr/rainbow.hpp"
#include "test_support.hpp"

using namespace epgr;

TEST_SUITE("formats") {

TEST_CASE("enum spellings are stable") {
  CHECK(std::string(to_string(Strategy::TwoMax)) == "TWO_MAX");
  CHECK(std::string(to_string(Strategy::StarIcn1)) == "STAR_ICN1");
  CHECK(std::string(to_string(Strategy::StarIcn3)) == "STAR_ICN3");
  CHECK(std::string(to_string(Strategy::InvmaxEqMax)) == "INVMAX_EQ_MAX");
  CHECK(std::string(to_string(Strategy::DistinctWitness)) == "DISTINCT_WITNESS");
  CHECK(std::string(to_string(Strategy::Awning)) == "AWNING");
  CHECK(std::string(to_string(Strategy::InvmaxGe3)) == "INVMAX_GE3");

  CHECK(std::string(to_string(LowerBoundSource::Complete)) == "COMPLETE");
  CHECK(std::string(to_string(LowerBoundSource::Diameter)) == "DIAMETER");
  CHECK(std::string(to_string(LowerBoundSource::Bridges)) == "BRIDGES");
  CHECK(std::string(to_string(LowerBoundSource::IcsTriple)) == "ICS_TRIPLE");
  CHECK(std::string(to_string(LowerBoundSource::Search)) == "SEARCH");

  CHECK(std::string(to_string(AwningVerdict::Found)) == "FOUND");
  CHECK(std::string(to_string(AwningVerdict::None)) == "NONE");
  CHECK(std::string(to_string(AwningVerdict::Unknown)) == "UNKNOWN");
  CHECK(std::string(to_string(AwningVerdict::NotApplicable)) == "NOT_APPLICABLE");

  CHECK(std::string(to_string(Agreement::Match)) == "MATCH");
  CHECK(std::string(to_string(Agreement::Mismatch)) == "MISMATCH");
  CHECK(std::string(to_string(Agreement::Inconclusive)) == "INCONCLUSIVE");
}

TEST_CASE("errors carry their code in the message") {
  Error e(ErrorCode::NotClosed, "row 3 repeats 1");
  CHECK(std::string(e.what()) == "NotClosed: row 3 repeats 1");
  CHECK(e.code() == ErrorCode::NotClosed);

  try {
    parse_group_spec("FROBNICATE 7");
    FAIL("expected a parse error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::ParseError);
    CHECK(std::string(err.what()).rfind("ParseError: ", 0) == 0);
  }
}

TEST_CASE("coloring json lists every edge with its color") {
  SimpleGraph p3 = test::path_graph(3);
  EdgeColoring c{2, {1, 2}};
  nlohmann::json j = nlohmann::json::parse(coloring_json(c, p3));
  CHECK(j["k"] == 2);
  REQUIRE(j["edges"].size() == 2);
  CHECK(j["edges"][0]["u"] == 0);
  CHECK(j["edges"][0]["v"] == 1);
  CHECK(j["edges"][0]["color"] == 1);
  CHECK(j["edges"][1]["u"] == 1);
  CHECK(j["edges"][1]["v"] == 2);
  CHECK(j["edges"][1]["color"] == 2);

  EdgeColoring bad{1, {1}};
  CHECK_THROWS_AS((void)coloring_json(bad, p3), Error);
}

TEST_CASE("rc result json for exact and interval answers") {
  SimpleGraph p3 = test::path_graph(3);
  RcResult r = rc_exact(p3);
  REQUIRE(r.kind == RcKind::Exact);
  nlohmann::json j = nlohmann::json::parse(rc_result_json(r, p3));
  CHECK(j["kind"] == "EXACT");
  CHECK(j["value"] == 2);
  CHECK(j["lower_bound"] == 2);
  CHECK(j["upper_bound"] == 2);
  CHECK(j["lower_bound_source"] == "BRIDGES");
  CHECK(j.contains("certificate"));
  CHECK(j["certificate"]["k"] == 2);
  CHECK(j["certificate"]["edges"].size() == 2);
  CHECK(j.contains("nodes"));
  CHECK(j.contains("colorings_tested"));
  CHECK_FALSE(j.contains("elapsed_seconds"));

  SimpleGraph c5 = test::cycle_graph(5);
  RcBudget tiny;
  tiny.nodes_per_level = 3;
  RcResult partial = rc_exact(c5, tiny);
  REQUIRE(partial.kind == RcKind::Interval);
  nlohmann::json pj = nlohmann::json::parse(rc_result_json(partial, c5));
  CHECK(pj["kind"] == "INTERVAL");
  CHECK_FALSE(pj.contains("value"));
  CHECK(pj["lower_bound"] == 2);
  CHECK(pj["upper_bound"] == 5);
  CHECK(pj["certificate"]["k"] == 5);
}

TEST_CASE("graph json round trips through a parser") {
  FiniteGroup s3 = symmetric_group(3);
  SimpleGraph g = enhanced_power_graph(s3);
  nlohmann::json j = nlohmann::json::parse(graph_json(g, s3.labels()));
  CHECK(j["n"] == 6);
  REQUIRE(j["edges"].size() == 6);
  CHECK(j["labels"].size() == 6);
  CHECK(j["labels"][0] == "e");
  // Edge list is the graph's own lexicographic order.
  CHECK(j["edges"][0][0] == 0);
  CHECK(j["edges"][0][1] == 1);
  for (const auto& e : j["edges"]) {
    CHECK(g.edge_id(e[0].get<int>(), e[1].get<int>()) >= 0);
  }
}

TEST_CASE("awning certificate json spells out rows and sides") {
  FiniteGroup q8 = dicyclic_group(2);
  auto d = maximal_cyclic_subgroups(q8);
  AwningSearchResult found = find_awning(d);
  REQUIRE(found.verdict == AwningVerdict::Found);
  nlohmann::json j = nlohmann::json::parse(awning_certificate_json(*found.certificate));
  CHECK(j["order"] == std::vector<int>{0, 1, 2});
  REQUIRE(j["witnesses"].size() == 3);
  for (const auto& row : j["witnesses"]) {
    CHECK(row.contains("i"));
    CHECK(row.contains("j"));
    CHECK(row.contains("element"));
    bool side_ok = row["side"] == "A" || row["side"] == "B";
    CHECK(side_ok);
  }
  CHECK(j["witnesses"][0]["element"] == 0);
  CHECK(j["witnesses"][2]["element"] == 2);
}

}  // TEST_SUITE
