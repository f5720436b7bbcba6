#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "netforge/conditions.hpp"
#include "netforge/dynamics.hpp"
#include "netforge/experiments.hpp"
#include "netforge/ged.hpp"
#include "netforge/graph.hpp"
#include "netforge/utility.hpp"
#include "netforge/welfare.hpp"

namespace netforge {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Graphs: {"n": int, "edges": [[u, v], ...]} with u < v in sorted order.
nlohmann::json graph_to_json(const Network& g);
Network graph_from_json(const nlohmann::json& j);

/// "# n N" header then one "u v" line per edge; the header keeps isolated
/// trailing nodes. Without a header n is one past the largest id.
std::string graph_to_edge_list(const Network& g);
Network graph_from_edge_list(const std::string& text);

/// Reads either format; JSON when the first non-space character is '{'.
Network read_graph_file(const std::string& path);
void write_graph_file(const std::string& path, const Network& g);

// Params: {"delta": f | "b": [...], "c": f, "c0": f, "gamma": f}; "b" wins over "delta".
nlohmann::json params_to_json(const UtilityParams& p);
UtilityParams params_from_json(const nlohmann::json& j);
BenefitSequence benefit_from_json(const nlohmann::json& j);

/// JSON-lines: a {"rng_seed"} header, one line per event, and one line per
/// snapshot (graph JSON plus "entry_index").
void write_trace(std::ostream& out, const FormationTrace& trace);
FormationTrace read_trace(std::istream& in);

nlohmann::json event_to_json(const Event& e);

nlohmann::json region_report(const ConditionRegion& region, double gamma);
nlohmann::json ged_to_json(const GedResult& r, bool with_witness);
nlohmann::json welfare_to_json(const WelfareReport& r);

/// One row per seed: seed,target,param,sign,deviation_node,restore_levels,class,ged@1..ged@n_max.
void write_deviation_csv_header(std::ostream& out, int n_max);
void write_deviation_csv_rows(std::ostream& out, const DeviationSpec& spec, const DeviationResult& result);
nlohmann::json deviation_aggregate(const DeviationSpec& spec, const DeviationResult& result);

std::string to_string(Parameter p);
std::string to_string(Sign s);
Parameter parse_parameter(const std::string& text);
Sign parse_sign(const std::string& text);
std::string levels_to_string(const LevelPoint& levels);
LevelPoint levels_from_json(const nlohmann::json& j);

}  // namespace netforge
