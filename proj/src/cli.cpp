#include "netforge/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "netforge/serialize.hpp"

namespace netforge {

using nlohmann::json;

namespace {

struct ParamFlags {
  std::optional<double> delta;
  std::string b;
  std::optional<double> c;
  std::optional<double> c0;
  std::optional<double> gamma;
  std::string params_file;
};

void add_benefit_flags(CLI::App* cmd, ParamFlags& f) {
  cmd->add_option("--delta", f.delta, "geometric decay, b_i = delta^i");
  cmd->add_option("--b", f.b, "explicit comma-separated b_1,b_2,...");
}

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
  add_benefit_flags(cmd, f);
  cmd->add_option("--c", f.c, "link cost");
  cmd->add_option("--c0", f.c0, "entry factor");
  cmd->add_option("--gamma", f.gamma, "intermediation rent share");
  cmd->add_option("--params", f.params_file, "JSON params file");
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& ex) {
    throw ConfigError("'" + path + "' is not valid JSON: " + ex.what());
  }
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ConfigError("bad number '" + item + "' in list");
    }
  }
  return out;
}

BenefitSequence resolve_benefit(const ParamFlags& f) {
  json j = json::object();
  if (f.delta) j["delta"] = *f.delta;
  if (!f.b.empty()) j["b"] = parse_number_list(f.b);
  return benefit_from_json(j);
}

UtilityParams resolve_params(const ParamFlags& f) {
  json j = f.params_file.empty() ? json::object() : load_json_file(f.params_file);
  if (f.delta) {
    j["delta"] = *f.delta;
    j.erase("b");
  }
  if (!f.b.empty()) j["b"] = parse_number_list(f.b);
  if (f.c) j["c"] = *f.c;
  if (f.c0) j["c0"] = *f.c0;
  if (f.gamma) j["gamma"] = *f.gamma;
  return params_from_json(j);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw ConfigError("cannot write '" + path + "'");
  file << text;
}

// ---- experiment config ----

struct DeviationBlock {
  std::vector<int> nodes;
  Parameter parameter = Parameter::C;
  Sign sign = Sign::Negative;
  double fraction = 0.02;
  std::optional<LevelPoint> base_levels;
};

struct OutputPaths {
  std::string trace;
  std::string graph;
  std::string summary;
  std::string csv;
  std::string aggregate;
};

struct ExperimentConfig {
  TopologyTarget target;
  BenefitSequence benefit = BenefitSequence::geometric(0.8);
  std::optional<int> sigma;
  std::optional<json> params;
  std::optional<LevelPoint> levels;
  int n_max = 20;
  std::vector<std::uint64_t> seeds{1};
  bool kstar_base = false;
  int max_steps_per_entry = 0;
  std::optional<DeviationBlock> deviation;
  OutputPaths output;
  int jobs = 0;
};

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("bad value for '") + key + "': " + ex.what());
  }
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"target", "delta", "b", "sigma", "params", "levels", "n_max", "seed", "seeds", "base_graph",
                  "max_steps_per_entry", "deviation", "output", "jobs"},
                 "config");
  ExperimentConfig cfg;
  if (!j.contains("target")) throw ConfigError("config needs a 'target'");
  try {
    cfg.target = parse_target(get_as<std::string>(j, "target"));
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(ex.what());
  }
  json benefit = json::object();
  if (j.contains("delta")) benefit["delta"] = j["delta"];
  if (j.contains("b")) benefit["b"] = j["b"];
  cfg.benefit = benefit_from_json(benefit);
  if (j.contains("sigma")) cfg.sigma = get_as<int>(j, "sigma");

  if (j.contains("params") && j.contains("levels")) throw ConfigError("give either 'params' or 'levels', not both");
  if (j.contains("params")) {
    const json& p = j["params"];
    if (!p.is_object()) throw ConfigError("'params' must be an object");
    reject_unknown(p, {"c", "c0", "gamma"}, "params");
    cfg.params = p;
  }
  if (j.contains("levels")) cfg.levels = levels_from_json(j["levels"]);

  if (j.contains("n_max")) cfg.n_max = get_as<int>(j, "n_max");
  if (cfg.n_max < 1) throw ConfigError("n_max must be at least 1");

  if (j.contains("seed") && j.contains("seeds")) throw ConfigError("give either 'seed' or 'seeds', not both");
  if (j.contains("seed")) cfg.seeds = {get_as<std::uint64_t>(j, "seed")};
  if (j.contains("seeds")) {
    // an integer N means seeds 1..N
    if (j["seeds"].is_number_integer()) {
      const int count = get_as<int>(j, "seeds");
      if (count < 1) throw ConfigError("'seeds' count must be positive");
      cfg.seeds.clear();
      for (int s = 1; s <= count; ++s) cfg.seeds.push_back(static_cast<std::uint64_t>(s));
    } else {
      cfg.seeds = get_as<std::vector<std::uint64_t>>(j, "seeds");
      if (cfg.seeds.empty()) throw ConfigError("'seeds' must not be empty");
    }
  }

  if (j.contains("base_graph")) {
    const auto base = get_as<std::string>(j, "base_graph");
    if (base == "kstar") {
      cfg.kstar_base = true;
    } else if (base != "single") {
      throw ConfigError("base_graph must be 'single' or 'kstar'");
    }
  }
  if (cfg.kstar_base && cfg.target.kind != TopologyKind::KStar) {
    throw ConfigError("base_graph 'kstar' only applies to a kstar target");
  }
  if (cfg.target.kind == TopologyKind::KStar && !cfg.kstar_base) {
    throw ConfigError("a kstar target forms from the k-star base graph; set \"base_graph\": \"kstar\"");
  }
  if (j.contains("max_steps_per_entry")) cfg.max_steps_per_entry = get_as<int>(j, "max_steps_per_entry");
  if (cfg.max_steps_per_entry < 0) throw ConfigError("max_steps_per_entry must be non-negative");

  if (j.contains("deviation")) {
    const json& d = j["deviation"];
    if (!d.is_object()) throw ConfigError("'deviation' must be an object");
    reject_unknown(d, {"node", "nodes", "parameter", "sign", "fraction", "base_levels"}, "deviation");
    DeviationBlock block;
    if (d.contains("node") == d.contains("nodes")) throw ConfigError("deviation needs exactly one of 'node', 'nodes'");
    if (d.contains("node")) block.nodes = {get_as<int>(d, "node")};
    if (d.contains("nodes")) block.nodes = get_as<std::vector<int>>(d, "nodes");
    if (block.nodes.empty()) throw ConfigError("deviation 'nodes' must not be empty");
    if (d.contains("parameter")) block.parameter = parse_parameter(get_as<std::string>(d, "parameter"));
    if (d.contains("sign")) block.sign = parse_sign(get_as<std::string>(d, "sign"));
    if (d.contains("fraction")) block.fraction = get_as<double>(d, "fraction");
    if (!(block.fraction > 0.0)) throw ConfigError("deviation fraction must be positive");
    if (d.contains("base_levels")) block.base_levels = levels_from_json(d["base_levels"]);
    cfg.deviation = block;
  }

  if (j.contains("output")) {
    const json& o = j["output"];
    if (!o.is_object()) throw ConfigError("'output' must be an object");
    reject_unknown(o, {"trace", "graph", "summary", "csv", "aggregate"}, "output");
    auto path = [&](const char* key, std::string& dst) {
      if (o.contains(key)) dst = get_as<std::string>(o, key);
    };
    path("trace", cfg.output.trace);
    path("graph", cfg.output.graph);
    path("summary", cfg.output.summary);
    path("csv", cfg.output.csv);
    path("aggregate", cfg.output.aggregate);
  }
  if (j.contains("jobs")) cfg.jobs = get_as<int>(j, "jobs");
  if (cfg.jobs < 0) throw ConfigError("jobs must be non-negative");
  return cfg;
}

void apply_seed_override(ExperimentConfig& cfg, std::optional<std::uint64_t> flag_seed) {
  if (const char* env = std::getenv("NETFORGE_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (env[used] != '\0') throw std::invalid_argument(env);
      cfg.seeds = {v};
    } catch (const std::logic_error&) {
      throw ConfigError(std::string("NETFORGE_SEED is not an unsigned integer: ") + env);
    }
  } else if (flag_seed) {
    cfg.seeds = {*flag_seed};
  }
}

UtilityParams config_params(const ExperimentConfig& cfg) {
  if (cfg.params) {
    json p = *cfg.params;
    if (cfg.benefit.delta()) {
      p["delta"] = *cfg.benefit.delta();
    } else {
      p["b"] = cfg.benefit.explicit_list();
    }
    return params_from_json(p);
  }
  if (cfg.levels) return sample_levels(region_for(cfg.target, cfg.benefit, cfg.sigma), *cfg.levels);
  throw ConfigError("config needs 'params' or 'levels'");
}

std::string seeded_path(const std::string& pattern, std::uint64_t seed, bool many) {
  const auto at = pattern.find("{seed}");
  if (at == std::string::npos) {
    if (many) throw ConfigError("output path '" + pattern + "' needs a {seed} placeholder for several seeds");
    return pattern;
  }
  std::string out = pattern;
  out.replace(at, 6, std::to_string(seed));
  return out;
}

json simulate_summary(const FormationTrace& trace, const TopologyTarget& target, const UtilityParams& final_params) {
  const Network& g = trace.final_graph();
  json stay_outs = json::array();
  for (std::size_t s = 1; s < trace.snapshots.size(); ++s) {
    if (trace.snapshots[s].graph.node_count() == trace.snapshots[s - 1].graph.node_count()) {
      stay_outs.push_back(trace.snapshots[s].entry_index);
    }
  }
  json summary{{"seed", trace.rng_seed},
               {"target", to_string(target)},
               {"n", g.node_count()},
               {"edges", g.edge_count()},
               {"link_alterations", trace.events.size()},
               {"stay_outs", stay_outs},
               {"stable", is_pairwise_stable(g, final_params).stable},
               {"recognized", recognize(g, target)}};
  if (target.kind == TopologyKind::DiameterAtMost) {
    summary["diameter"] = is_connected(g) ? json(diameter(g)) : json(nullptr);
  } else {
    try {
      summary["ged"] = ged_to_target(g, target).distance;
    } catch (const std::invalid_argument&) {
      summary["ged"] = nullptr;  // too few nodes for the family
    }
  }
  return summary;
}

int cmd_simulate(const std::string& config_path, std::optional<std::uint64_t> seed, std::ostream& out) {
  ExperimentConfig cfg = parse_config(load_json_file(config_path));
  apply_seed_override(cfg, seed);
  if (cfg.deviation) throw ConfigError("'deviation' belongs to the deviate subcommand");
  const UtilityParams params = config_params(cfg);
  const ConditionSchedule schedule(params);
  const Network base = cfg.kstar_base ? kstar_base_graph(cfg.target.parameter) : Network(1);
  const bool many = cfg.seeds.size() > 1;

  std::vector<FormationTrace> traces(cfg.seeds.size());
  parallel_for(static_cast<int>(cfg.seeds.size()), cfg.jobs, [&](int i) {
    traces[static_cast<std::size_t>(i)] =
        run_formation(schedule, cfg.n_max, base, {cfg.max_steps_per_entry, cfg.seeds[static_cast<std::size_t>(i)]});
  });

  json summaries = json::array();
  for (const FormationTrace& trace : traces) {
    if (!cfg.output.trace.empty()) {
      std::ostringstream text;
      write_trace(text, trace);
      write_text_file(seeded_path(cfg.output.trace, trace.rng_seed, many), text.str());
    }
    if (!cfg.output.graph.empty()) {
      write_graph_file(seeded_path(cfg.output.graph, trace.rng_seed, many), trace.final_graph());
    }
    summaries.push_back(simulate_summary(trace, cfg.target, schedule.at(trace.snapshots.back().entry_index)));
  }
  const json result = many ? summaries : summaries.front();
  if (!cfg.output.summary.empty()) write_text_file(cfg.output.summary, result.dump(2) + "\n");
  out << result.dump(2) << '\n';
  return 0;
}

int cmd_deviate(const std::string& config_path, std::optional<int> jobs_flag, std::optional<std::uint64_t> seed,
                std::ostream& out) {
  ExperimentConfig cfg = parse_config(load_json_file(config_path));
  apply_seed_override(cfg, seed);
  if (!cfg.deviation) throw ConfigError("deviate needs a 'deviation' block");
  if (!cfg.levels) throw ConfigError("deviate needs 'levels' (the restore levels)");
  if (cfg.params) throw ConfigError("deviate samples parameters from 'levels'; drop 'params'");
  const int jobs = jobs_flag.value_or(cfg.jobs);

  std::ostringstream csv;
  json aggregate = json::array();
  write_deviation_csv_header(csv, cfg.n_max);
  for (int node : cfg.deviation->nodes) {
    DeviationSpec spec;
    spec.target = cfg.target;
    spec.benefit = cfg.benefit;
    spec.sigma = cfg.sigma;
    spec.deviation_node = node;
    spec.parameter = cfg.deviation->parameter;
    spec.sign = cfg.deviation->sign;
    spec.fraction = cfg.deviation->fraction;
    spec.restore_levels = *cfg.levels;
    spec.base_levels = cfg.deviation->base_levels;
    spec.n_max = cfg.n_max;
    spec.seeds = cfg.seeds;
    spec.max_steps_per_entry = cfg.max_steps_per_entry;
    const DeviationResult result = run_deviation(spec, jobs);
    write_deviation_csv_rows(csv, spec, result);
    aggregate.push_back(deviation_aggregate(spec, result));
  }
  if (!cfg.output.csv.empty()) {
    write_text_file(cfg.output.csv, csv.str());
  } else {
    out << csv.str();
  }
  if (!cfg.output.aggregate.empty()) {
    write_text_file(cfg.output.aggregate, aggregate.dump(2) + "\n");
  } else if (!cfg.output.csv.empty()) {
    out << aggregate.dump(2) << '\n';
  }
  return 0;
}

int cmd_stability(const std::string& graph_path, const ParamFlags& flags, std::ostream& out) {
  const Network g = read_graph_file(graph_path);
  const UtilityParams params = resolve_params(flags);
  const StabilityReport report = is_pairwise_stable(g, params);
  json j{{"stable", report.stable}, {"utilities", utilities(g, params)}};
  if (report.witness) {
    j["witness"] = {{"link", {report.witness->u, report.witness->v}},
                    {"move", report.witness_is_edge ? "delete" : "add"},
                    {"actor", report.witness_actor}};
  } else {
    j["witness"] = nullptr;
  }
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_ged(const std::string& graph_path, const std::string& target_text, bool with_witness, std::ostream& out) {
  const Network g = read_graph_file(graph_path);
  const TopologyTarget target = parse_target(target_text);
  json j = ged_to_json(ged_to_target(g, target), with_witness);
  j["target"] = to_string(target);
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_conditions(const std::string& target_text, const ParamFlags& flags, std::optional<int> sigma,
                   const std::string& sample, std::ostream& out) {
  const TopologyTarget target = parse_target(target_text);
  const ConditionRegion region = region_for(target, resolve_benefit(flags), sigma);
  const double gamma = flags.gamma.value_or(region.gamma_range().lo.value);
  json j = region_report(region, gamma);
  if (!sample.empty()) {
    if (sample.size() != 3) throw ConfigError("--sample takes three levels for gamma, c, c0, e.g. MMM");
    LevelPoint levels{parse_level(sample.substr(0, 1)), parse_level(sample.substr(1, 1)),
                      parse_level(sample.substr(2, 1))};
    j["sample"] = params_to_json(sample_levels(region, levels));
  }
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_welfare(const std::string& graph_path, const ParamFlags& flags, std::ostream& out) {
  const Network g = read_graph_file(graph_path);
  out << welfare_to_json(welfare(g, resolve_params(flags))).dump(2) << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulates strategic network formation with entry fees and intermediation rents.", "netforge"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::string graph_path;
  std::string target_text;
  bool with_witness = false;
  std::optional<int> sigma;
  std::string sample;
  ParamFlags flags;

  auto* simulate = app.add_subcommand("simulate", "run seeded formations from a JSON config");
  simulate->add_option("--config", config_path, "experiment config")->required();
  simulate->add_option("--seed", seed, "replace the config seeds with this one");

  auto* stability = app.add_subcommand("stability", "check pairwise stability of a graph");
  stability->add_option("--graph", graph_path, "graph file (JSON or edge list)")->required();
  add_param_flags(stability, flags);

  auto* ged = app.add_subcommand("ged", "edit distance to a target family");
  ged->add_option("graph", graph_path, "graph file")->required();
  ged->add_option("target", target_text, "star | complete | turan | 2star | kstar:K")->required();
  ged->add_flag("--witness", with_witness, "include the edit script");

  auto* conditions = app.add_subcommand("conditions", "sufficient-condition region of a target");
  conditions->add_option("target", target_text, "star | complete | turan | 2star | kstar:K | diam:D")->required();
  add_benefit_flags(conditions, flags);
  conditions->add_option("--gamma", flags.gamma, "gamma at which to evaluate the c and c0 ranges");
  conditions->add_option("--sigma", sigma, "2-star center degree bound");
  conditions->add_option("--sample", sample, "also print parameters at these levels, e.g. MMM");

  auto* welfare_cmd = app.add_subcommand("welfare", "social welfare of a graph");
  welfare_cmd->add_option("--graph", graph_path, "graph file")->required();
  add_param_flags(welfare_cmd, flags);

  auto* deviate = app.add_subcommand("deviate", "deviation study from a JSON config");
  deviate->add_option("--config", config_path, "experiment config with a deviation block")->required();
  deviate->add_option("--jobs", jobs, "parallel formations (0 = all cores)");
  deviate->add_option("--seed", seed, "replace the config seeds with this one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*simulate) return cmd_simulate(config_path, seed, out);
    if (*stability) return cmd_stability(graph_path, flags, out);
    if (*ged) return cmd_ged(graph_path, target_text, with_witness, out);
    if (*conditions) return cmd_conditions(target_text, flags, sigma, sample, out);
    if (*welfare_cmd) return cmd_welfare(graph_path, flags, out);
    if (*deviate) return cmd_deviate(config_path, jobs, seed, out);
  } catch (const StepLimitExceeded& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const InfeasibleRegion& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace netforge
