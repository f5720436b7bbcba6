#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "generators.hpp"
#include "netforge/serialize.hpp"

using namespace netforge;
using namespace netforge::testing;
using nlohmann::json;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "netforge_serialize_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("graphs round trip through both formats") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const Network g = random_graph(std::uniform_int_distribution<int>(0, 15)(rng), 0.3, rng);
    CHECK(graph_from_json(graph_to_json(g)) == g);
    CHECK(graph_from_json(json::parse(graph_to_json(g).dump())) == g);
    CHECK(graph_from_edge_list(graph_to_edge_list(g)) == g);
  }
}

TEST_CASE("edge lists") {
  const Network g = graph_from_edge_list("0 1\n\n1 2\n");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(graph_from_edge_list("# n 5\n0 1\n").node_count() == 5);
  CHECK(graph_to_edge_list(path_graph(3)) == "# n 3\n0 1\n1 2\n");
  CHECK_THROWS_AS(graph_from_edge_list("0 1 2\n"), GraphError);
  CHECK_THROWS_AS(graph_from_edge_list("0 x\n"), GraphError);
  CHECK_THROWS_AS(graph_from_edge_list("# n 2\n0 3\n"), GraphError);
  CHECK_THROWS_AS(graph_from_edge_list("0 1\n1 0\n"), GraphError);
}

TEST_CASE("graph JSON errors") {
  CHECK_THROWS_AS(graph_from_json(json{{"edges", json::array()}}), GraphError);
  CHECK_THROWS_AS(graph_from_json(json{{"n", 2}, {"edges", {{0, 1, 2}}}}), GraphError);
  CHECK_THROWS_AS(graph_from_json(json{{"n", 2}, {"edges", {{0, 0}}}}), GraphError);
  CHECK(graph_to_json(path_graph(3)) == json{{"n", 3}, {"edges", {{0, 1}, {1, 2}}}});
}

TEST_CASE("graph files pick their format") {
  const auto dir = scratch_dir();
  const Network g = star_graph(6);
  write_graph_file((dir / "g.json").string(), g);
  write_graph_file((dir / "g.txt").string(), g);
  std::ifstream json_file(dir / "g.json");
  CHECK(json_file.peek() == '{');
  CHECK(read_graph_file((dir / "g.json").string()) == g);
  CHECK(read_graph_file((dir / "g.txt").string()) == g);
  CHECK_THROWS_AS(read_graph_file((dir / "missing.json").string()), ConfigError);
}

TEST_CASE("params round trip bit for bit") {
  std::mt19937_64 rng(72);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    UtilityParams p;
    if (trial % 2 == 0) {
      p.benefit = BenefitSequence::geometric(unit(rng) * 0.98 + 0.01);
    } else {
      std::vector<double> b{unit(rng) + 1.0};
      for (int i = 0; i < 4; ++i) b.push_back(b.back() * (0.1 + 0.8 * unit(rng)));
      p.benefit = BenefitSequence::explicit_values(b);
    }
    p.c = unit(rng);
    p.c0 = unit(rng);
    p.gamma = unit(rng) * 0.99;
    CHECK(params_from_json(json::parse(params_to_json(p).dump())) == p);
  }
}

TEST_CASE("params precedence and errors") {
  const auto both = params_from_json(json{{"delta", 0.5}, {"b", {0.9, 0.1}}, {"c", 0.2}});
  CHECK_FALSE(both.benefit.delta().has_value());
  CHECK(both.b(1) == 0.9);
  CHECK(params_from_json(json::object()).benefit.delta() == 0.8);
  CHECK_THROWS_AS(params_from_json(json{{"cost", 0.2}}), ConfigError);
  CHECK_THROWS_AS(params_from_json(json{{"gamma", 1.0}}), ConfigError);
  CHECK_THROWS_AS(params_from_json(json{{"c", "cheap"}}), ConfigError);
  CHECK_THROWS_AS(params_from_json(json{{"delta", 1.5}}), ConfigError);
  CHECK_THROWS_AS(params_from_json(json::array()), ConfigError);
}

TEST_CASE("traces round trip") {
  UtilityParams p;
  p.c = 0.3;
  p.gamma = 0.1;
  p.c0 = 0.05;
  ConditionSchedule schedule(p);
  UtilityParams costly = p;
  costly.c = 0.9;
  schedule.set_from(4, costly);
  schedule.set_from(6, p);
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    const FormationTrace trace = run_formation(schedule, 9, Network(1), {0, seed});
    std::stringstream text;
    write_trace(text, trace);
    CHECK(read_trace(text) == trace);
  }
}

TEST_CASE("parameter and level names") {
  for (Parameter x : {Parameter::C, Parameter::C0}) CHECK(parse_parameter(to_string(x)) == x);
  for (Sign s : {Sign::Negative, Sign::Positive}) CHECK(parse_sign(to_string(s)) == s);
  CHECK_THROWS_AS(parse_parameter("gamma"), ConfigError);
  CHECK_THROWS_AS(parse_sign("up"), ConfigError);
  CHECK(levels_to_string({Level::L, Level::M, Level::H}) == "gamma=L;c=M;c0=H");
  CHECK(levels_from_json(json{{"c", "H"}}) == LevelPoint{Level::M, Level::H, Level::M});
  CHECK_THROWS_AS(levels_from_json(json{{"cost", "H"}}), ConfigError);
  CHECK_THROWS_AS(levels_from_json(json{{"c", "X"}}), ConfigError);
}

TEST_CASE("reports") {
  const auto region = region_for(TopologyTarget::star(), BenefitSequence::geometric(0.8));
  const json r = region_report(region, 0.0);
  CHECK(r["target"] == "star");
  CHECK(r["c"][2] == "[)");
  CHECK(r["c"][0].get<double>() == doctest::Approx(0.16));
  CHECK(r["feasible"] == true);
  CHECK_FALSE(r.contains("sigma"));

  const GedResult g = ged_to_target(complete_graph(4), TopologyTarget::star());
  CHECK(ged_to_json(g, false) == json{{"distance", 3}});
  const json w = ged_to_json(g, true);
  CHECK(w["witness"]["deletions"].size() == 3);

  const json wf = welfare_to_json(welfare(star_graph(4), UtilityParams{}));
  CHECK(wf.contains("total"));
}

TEST_CASE("deviation CSV") {
  DeviationSpec spec;
  spec.n_max = 4;
  DeviationResult result;
  SeedOutcome s;
  s.seed = 7;
  s.outcome = classify({{1, 0}, {2, 0}, {4, 0}});
  result.per_seed.push_back(s);
  result.counts[OutcomeKind::A] = 1;
  result.majority = OutcomeKind::A;
  std::ostringstream csv;
  write_deviation_csv_header(csv, spec.n_max);
  write_deviation_csv_rows(csv, spec, result);
  CHECK(csv.str() ==
        "seed,target,param,sign,deviation_node,restore_levels,class,ged@1,ged@2,ged@3,ged@4\n"
        "7,star,c,negative,2,gamma=M;c=M;c0=M,A,0,0,,0\n");
  const json agg = deviation_aggregate(spec, result);
  CHECK(agg["majority"] == "A");
  CHECK(agg["majority_share"] == 1.0);
  CHECK(agg["counts"]["A"] == 1);
}
