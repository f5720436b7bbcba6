#include "netforge/serialize.hpp"

#include <fstream>
#include <sstream>

namespace netforge {

using nlohmann::json;

json graph_to_json(const Network& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"n", g.node_count()}, {"edges", std::move(edges)}};
}

Network graph_from_json(const json& j) {
  try {
    Network g(j.at("n").get<int>());
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw GraphError("edge must be a [u, v] pair");
      g.add_edge(e[0].get<int>(), e[1].get<int>());
    }
    return g;
  } catch (const json::exception& ex) {
    throw GraphError(std::string("malformed graph JSON: ") + ex.what());
  }
}

std::string graph_to_edge_list(const Network& g) {
  std::ostringstream os;
  os << "# n " << g.node_count() << '\n';
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
  return os.str();
}

Network graph_from_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::optional<int> declared;
  std::vector<Edge> edges;
  int largest = -1;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::istringstream header(line.substr(first + 1));
      std::string key;
      int value = 0;
      if (header >> key >> value && key == "n") declared = value;
      continue;
    }
    std::istringstream fields(line);
    Edge e{};
    std::string rest;
    if (!(fields >> e.u >> e.v) || (fields >> rest)) {
      throw GraphError("edge list line " + std::to_string(line_no) + ": expected 'u v'");
    }
    largest = std::max({largest, e.u, e.v});
    edges.push_back(e);
  }
  const int n = declared.value_or(largest + 1);
  if (largest >= n) throw GraphError("edge list refers to node ids beyond the declared n");
  return Network(n, edges);
}

Network read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open graph file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return graph_from_json(json::parse(text));
    } catch (const json::parse_error& ex) {
      throw GraphError(std::string("graph file is not valid JSON: ") + ex.what());
    }
  }
  return graph_from_edge_list(text);
}

void write_graph_file(const std::string& path, const Network& g) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  if (path.ends_with(".json")) {
    out << graph_to_json(g).dump() << '\n';
  } else {
    out << graph_to_edge_list(g);
  }
}

json params_to_json(const UtilityParams& p) {
  json j;
  if (p.benefit.delta()) {
    j["delta"] = *p.benefit.delta();
  } else {
    j["b"] = p.benefit.explicit_list();
  }
  j["c"] = p.c;
  j["c0"] = p.c0;
  j["gamma"] = p.gamma;
  return j;
}

BenefitSequence benefit_from_json(const json& j) {
  try {
    if (j.contains("b")) return BenefitSequence::explicit_values(j.at("b").get<std::vector<double>>());
    return BenefitSequence::geometric(j.value("delta", 0.8));
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("bad benefit specification: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(ex.what());
  }
}

UtilityParams params_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("params must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "delta" && key != "b" && key != "c" && key != "c0" && key != "gamma") {
      throw ConfigError("unknown params key '" + key + "'");
    }
  }
  UtilityParams p;
  p.benefit = benefit_from_json(j);
  try {
    p.c = j.value("c", 0.0);
    p.c0 = j.value("c0", 0.0);
    p.gamma = j.value("gamma", 0.0);
    p.validate();
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("bad params: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(ex.what());
  }
  return p;
}

json event_to_json(const Event& e) {
  json j{{"step", e.step}, {"actor", e.move.actor}, {"kind", to_string(e.move.kind)}};
  j["target"] = e.move.target ? json(*e.move.target) : json(nullptr);
  j["accepted"] = e.accepted;
  return j;
}

void write_trace(std::ostream& out, const FormationTrace& trace) {
  out << json{{"rng_seed", trace.rng_seed}}.dump() << '\n';
  // A snapshot closes each entry round, so it goes out just before the next
  // entry decision.
  std::size_t next_snapshot = 0;
  auto flush_snapshot = [&] {
    const Snapshot& s = trace.snapshots[next_snapshot++];
    json snap = graph_to_json(s.graph);
    snap["entry_index"] = s.entry_index;
    out << snap.dump() << '\n';
  };
  for (const Event& e : trace.events) {
    const bool opens_entry = e.move.kind == MoveKind::Enter || e.move.kind == MoveKind::StayOut;
    if (opens_entry && next_snapshot < trace.snapshots.size()) flush_snapshot();
    out << event_to_json(e).dump() << '\n';
  }
  while (next_snapshot < trace.snapshots.size()) flush_snapshot();
}

FormationTrace read_trace(std::istream& in) {
  FormationTrace trace;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    if (j.contains("rng_seed")) {
      trace.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    } else if (j.contains("entry_index")) {
      trace.snapshots.push_back({j.at("entry_index").get<int>(), graph_from_json(j)});
    } else {
      Event e;
      e.step = j.at("step").get<int>();
      e.move.actor = j.at("actor").get<int>();
      e.move.kind = parse_move_kind(j.at("kind").get<std::string>());
      if (!j.at("target").is_null()) e.move.target = j.at("target").get<int>();
      e.accepted = j.at("accepted").get<bool>();
      trace.events.push_back(e);
    }
  }
  return trace;
}

namespace {
json interval_json(const Interval& iv) {
  std::string shape;
  shape += iv.lo.closed ? '[' : '(';
  shape += iv.hi.closed ? ']' : ')';
  return json::array({iv.lo.value, iv.hi.value, shape});
}
}  // namespace

json region_report(const ConditionRegion& region, double gamma) {
  json j{{"target", to_string(region.target())},
         {"gamma", interval_json(region.gamma_range())},
         {"at_gamma", gamma},
         {"c", interval_json(region.c_range(gamma))},
         {"c0", interval_json(region.c0_range(gamma))},
         {"feasible", region.feasible(gamma)}};
  if (region.sigma()) {
    j["sigma"] = *region.sigma();
    j["lambda"] = region.lambda();
  }
  return j;
}

json ged_to_json(const GedResult& r, bool with_witness) {
  json j{{"distance", r.distance}};
  if (with_witness && r.witness) {
    auto pairs = [](const std::vector<Edge>& edges) {
      json a = json::array();
      for (const Edge& e : edges) a.push_back({e.u, e.v});
      return a;
    };
    j["witness"] = {{"centers", r.witness->centers},
                    {"additions", pairs(r.witness->additions)},
                    {"deletions", pairs(r.witness->deletions)}};
  }
  return j;
}

json welfare_to_json(const WelfareReport& r) {
  json j{{"total", r.total}, {"per_node", r.per_node}};
  j["efficient_class"] = r.efficient_class ? json(to_string(*r.efficient_class)) : json(nullptr);
  j["relative_to_star"] = r.relative_to_star ? json(*r.relative_to_star) : json(nullptr);
  return j;
}

std::string to_string(Parameter p) { return p == Parameter::C ? "c" : "c0"; }
std::string to_string(Sign s) { return s == Sign::Negative ? "negative" : "positive"; }

Parameter parse_parameter(const std::string& text) {
  if (text == "c") return Parameter::C;
  if (text == "c0") return Parameter::C0;
  throw ConfigError("parameter must be 'c' or 'c0', got '" + text + "'");
}

Sign parse_sign(const std::string& text) {
  if (text == "negative") return Sign::Negative;
  if (text == "positive") return Sign::Positive;
  throw ConfigError("sign must be 'negative' or 'positive', got '" + text + "'");
}

std::string levels_to_string(const LevelPoint& levels) {
  return std::string("gamma=") + to_char(levels.gamma) + ";c=" + to_char(levels.c) + ";c0=" + to_char(levels.c0);
}

LevelPoint levels_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("levels must be an object");
  LevelPoint out;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string()) throw ConfigError("level for '" + key + "' must be \"L\", \"M\" or \"H\"");
    try {
      const Level level = parse_level(value.get<std::string>());
      if (key == "gamma") {
        out.gamma = level;
      } else if (key == "c") {
        out.c = level;
      } else if (key == "c0") {
        out.c0 = level;
      } else {
        throw ConfigError("unknown levels key '" + key + "'");
      }
    } catch (const std::invalid_argument& ex) {
      throw ConfigError(ex.what());
    }
  }
  return out;
}

void write_deviation_csv_header(std::ostream& out, int n_max) {
  out << "seed,target,param,sign,deviation_node,restore_levels,class";
  for (int n = 1; n <= n_max; ++n) out << ",ged@" << n;
  out << '\n';
}

void write_deviation_csv_rows(std::ostream& out, const DeviationSpec& spec, const DeviationResult& result) {
  for (const auto& s : result.per_seed) {
    out << s.seed << ',' << to_string(spec.target) << ',' << to_string(spec.parameter) << ','
        << to_string(spec.sign) << ',' << spec.deviation_node << ',' << levels_to_string(spec.restore_levels) << ','
        << to_string(s.outcome.kind);
    std::vector<std::optional<int>> by_n(static_cast<std::size_t>(spec.n_max) + 1);
    for (const auto& [n, ged] : s.outcome.ged_series) {
      if (n >= 1 && n <= spec.n_max) by_n[static_cast<std::size_t>(n)] = ged;
    }
    for (int n = 1; n <= spec.n_max; ++n) {
      out << ',';
      if (by_n[static_cast<std::size_t>(n)]) out << *by_n[static_cast<std::size_t>(n)];
    }
    out << '\n';
  }
}

json deviation_aggregate(const DeviationSpec& spec, const DeviationResult& result) {
  json counts = json::object();
  for (const auto& [kind, count] : result.counts) counts[to_string(kind)] = count;
  return {{"target", to_string(spec.target)},
          {"param", to_string(spec.parameter)},
          {"sign", to_string(spec.sign)},
          {"deviation_node", spec.deviation_node},
          {"restore_levels", levels_to_string(spec.restore_levels)},
          {"seeds", result.per_seed.size()},
          {"counts", counts},
          {"majority", to_string(result.majority)},
          {"majority_share", result.majority_share()}};
}

}  // namespace netforge
