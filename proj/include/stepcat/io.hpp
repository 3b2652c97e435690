#ifndef STEPCAT_IO_HPP
#define STEPCAT_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stepcat/schedule.hpp"

namespace stepcat {

/// Schedule file: UTF-8 JSON with shortest-round-trip decimal floats, so a
/// write/read cycle reproduces the steps bit-exactly. The construction field
/// is a nested {op, joint_step, children} tree mirroring the provenance.
nlohmann::ordered_json schedule_to_json(const Schedule& h);
Schedule schedule_from_json(const nlohmann::json& j);

void write_schedule_file(const Schedule& h, const std::filesystem::path& path);
Schedule read_schedule_file(const std::filesystem::path& path);

enum class TableMetric { Objective, Gradient };

/// One comparison table: rows are iteration counts, columns are methods.
/// dasgupta_reference is emitted from embedded constants only and flagged as
/// such; grimmer is only defined at n = 2^l - 1 (empty cell elsewhere).
struct TableSpec {
  TableMetric metric = TableMetric::Objective;
  std::vector<int> rows;
  std::vector<std::string> columns;  // subset of the method names below

  static const std::vector<int>& paper_rows();
  static std::vector<std::string> default_columns(TableMetric metric);
};

/// Method names accepted in TableSpec::columns.
inline constexpr const char* kMethodOurs = "ours";
inline constexpr const char* kMethodTeboulle = "teboulle";
inline constexpr const char* kMethodRotaru = "rotaru";
inline constexpr const char* kMethodGrimmer = "grimmer";
inline constexpr const char* kMethodDasGupta = "dasgupta_reference";

/// Bound constant of one method at iteration count n; nullopt marks the
/// paper's "/" cells. Computed columns are pure functions of the DP tables.
std::optional<double> table_cell(TableMetric metric, const std::string& method, int n);

/// CSV with one row per n and 6-decimal constants; unavailable cells are
/// empty, with an explanatory comment header. Byte-identical across runs.
std::string render_table_csv(const TableSpec& spec);
nlohmann::ordered_json render_table_json(const TableSpec& spec);

/// Das Gupta et al. branch-and-bound constants (objective metric), embedded
/// as reference data; never computed here.
std::optional<double> dasgupta_reference(int n);

}  // namespace stepcat

#endif  // STEPCAT_IO_HPP
