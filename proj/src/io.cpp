#include "stepcat/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "stepcat/dp.hpp"
#include "stepcat/sequences.hpp"

namespace stepcat {

namespace {

nlohmann::ordered_json construction_to_json(const ConstructionNode& node) {
  nlohmann::ordered_json j;
  j["op"] = to_string(node.op);
  if (node.op == ConcatOp::Leaf) return j;
  j["joint_step"] = node.joint_step;
  j["children"] = nlohmann::ordered_json::array();
  j["children"].push_back(node.left ? construction_to_json(*node.left)
                                    : nlohmann::ordered_json(nullptr));
  j["children"].push_back(node.right ? construction_to_json(*node.right)
                                     : nlohmann::ordered_json(nullptr));
  return j;
}

ConcatOp op_from_string(const std::string& s) {
  if (s == "leaf") return ConcatOp::Leaf;
  if (s == "con_pp") return ConcatOp::ConPP;
  if (s == "con_pd") return ConcatOp::ConPD;
  if (s == "con_gp") return ConcatOp::ConGP;
  throw std::invalid_argument("schedule file: unknown construction op '" + s + "'");
}

ScheduleKind kind_from_string(const std::string& s) {
  if (s == "primitive") return ScheduleKind::Primitive;
  if (s == "dominant") return ScheduleKind::Dominant;
  if (s == "gbounded") return ScheduleKind::GBounded;
  if (s == "unclassified") return ScheduleKind::Unclassified;
  throw std::invalid_argument("schedule file: unknown kind '" + s + "'");
}

ConstructionPtr construction_from_json(const nlohmann::json& j) {
  if (j.is_null()) return nullptr;
  auto node = std::make_shared<ConstructionNode>();
  node->op = op_from_string(j.at("op").get<std::string>());
  if (node->op != ConcatOp::Leaf) {
    node->joint_step = j.at("joint_step").get<double>();
    const auto& ch = j.at("children");
    node->left = construction_from_json(ch.at(0));
    node->right = construction_from_json(ch.at(1));
  }
  return node;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// Objective constants of the Teboulle-Vaisbourd sequence at each prefix
// length, computed once per table render.
std::vector<double> teboulle_constants(int n_max) {
  Schedule tv = teboulle_vaisbourd(n_max);
  std::vector<double> out(static_cast<size_t>(n_max) + 1, 1.0);
  double s = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    s += tv.steps()[static_cast<size_t>(n) - 1];
    out[static_cast<size_t>(n)] = 1.0 / (2.0 * s + 1.0);
  }
  return out;
}

std::vector<double> rotaru_constants(int n_max) {
  Schedule ro = rotaru(n_max);
  std::vector<double> out(static_cast<size_t>(n_max) + 1, 1.0);
  double s = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    s += ro.steps()[static_cast<size_t>(n) - 1];
    out[static_cast<size_t>(n)] = 1.0 / (2.0 * s + 1.0);
  }
  return out;
}

}  // namespace

nlohmann::ordered_json schedule_to_json(const Schedule& h) {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["n"] = h.length();
  j["kind"] = to_string(h.kind());
  j["steps"] = h.steps();
  j["sum"] = h.sum();
  const double c = 1.0 / (2.0 * h.sum() + 1.0);
  if (h.kind() == ScheduleKind::Primitive || h.kind() == ScheduleKind::Dominant) {
    j["objective_constant"] = c;
  } else {
    j["objective_constant"] = nullptr;
  }
  if (h.kind() == ScheduleKind::GBounded) {
    j["gradient_constant"] = c;
  } else {
    j["gradient_constant"] = nullptr;
  }
  if (h.construction()) {
    j["construction"] = construction_to_json(*h.construction());
  } else {
    j["construction"] = nullptr;
  }
  return j;
}

Schedule schedule_from_json(const nlohmann::json& j) {
  if (j.at("format_version").get<int>() != 1) {
    throw std::invalid_argument("schedule file: unsupported format_version");
  }
  auto steps = j.at("steps").get<std::vector<double>>();
  const auto kind = kind_from_string(j.at("kind").get<std::string>());
  const double sum = j.at("sum").get<double>();
  if (j.at("n").get<int>() != static_cast<int>(steps.size())) {
    throw std::invalid_argument("schedule file: n does not match the step count");
  }
  double acc = 0.0;
  for (double s : steps) acc += s;
  if (std::fabs(acc - sum) > 1e-12 * std::max(1.0, std::fabs(acc))) {
    throw std::invalid_argument("schedule file: sum field does not match the steps");
  }
  ConstructionPtr tree = construction_from_json(j.value("construction", nlohmann::json(nullptr)));
  if (tree) {
    std::vector<double> flat = flatten(*tree);
    if (flat != steps) {
      throw std::invalid_argument("schedule file: construction tree does not reproduce the steps");
    }
  }
  return Schedule::with_provenance(std::move(steps), kind, sum, std::move(tree));
}

void write_schedule_file(const Schedule& h, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << schedule_to_json(h).dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Schedule read_schedule_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  nlohmann::json j;
  in >> j;
  return schedule_from_json(j);
}

const std::vector<int>& TableSpec::paper_rows() {
  static const std::vector<int> rows = {1,  2,  3,  4,  5,   6,   7,   8,   9,  10, 11,
                                        12, 13, 14, 15, 25,  31,  63,  127, 255, 511};
  return rows;
}

std::vector<std::string> TableSpec::default_columns(TableMetric metric) {
  if (metric == TableMetric::Objective) {
    return {kMethodTeboulle, kMethodGrimmer, kMethodDasGupta, kMethodOurs};
  }
  return {kMethodRotaru, kMethodGrimmer, kMethodOurs};
}

std::optional<double> dasgupta_reference(int n) {
  static const std::map<int, double> kTable = {
      {1, 0.250000},  {2, 0.131892},  {3, 0.085786},  {4, 0.062340},  {5, 0.048141},
      {6, 0.040197},  {7, 0.032662},  {8, 0.028109},  {9, 0.024565},  {10, 0.021245},
      {11, 0.019184}, {12, 0.017282}, {13, 0.015969}, {14, 0.014752}, {15, 0.013184},
      {25, 0.006952}, {31, 0.005443}};
  auto it = kTable.find(n);
  if (it == kTable.end()) return std::nullopt;
  return it->second;
}

namespace {

struct TableData {
  std::vector<double> ours;      // 1/(2 r_bullet + 1), index n
  std::vector<double> teboulle;  // objective metric only
  std::vector<double> rotaru;    // gradient metric only
};

TableData compute_columns(const TableSpec& spec, int n_max) {
  TableData data;
  const bool wants_ours =
      std::find(spec.columns.begin(), spec.columns.end(), kMethodOurs) != spec.columns.end();
  if (wants_ours) {
    SumTable bullet = sum_recursion(Family::Bullet, n_max);
    data.ours.resize(static_cast<size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) data.ours[static_cast<size_t>(n)] =
        1.0 / (2.0 * bullet.r[static_cast<size_t>(n)] + 1.0);
  }
  if (std::find(spec.columns.begin(), spec.columns.end(), kMethodTeboulle) != spec.columns.end()) {
    data.teboulle = teboulle_constants(n_max);
  }
  if (std::find(spec.columns.begin(), spec.columns.end(), kMethodRotaru) != spec.columns.end()) {
    data.rotaru = rotaru_constants(n_max);
  }
  return data;
}

std::optional<double> cell_value(const TableSpec& spec, const TableData& data,
                                 const std::string& method, int n) {
  if (method == kMethodOurs) return data.ours.at(static_cast<size_t>(n));
  if (method == kMethodGrimmer) return grimmer_bound(n);
  if (method == kMethodDasGupta) {
    return spec.metric == TableMetric::Objective ? dasgupta_reference(n) : std::nullopt;
  }
  if (method == kMethodTeboulle) {
    if (spec.metric != TableMetric::Objective) return std::nullopt;
    return data.teboulle.at(static_cast<size_t>(n));
  }
  if (method == kMethodRotaru) {
    if (spec.metric != TableMetric::Gradient) return std::nullopt;
    return data.rotaru.at(static_cast<size_t>(n));
  }
  throw std::invalid_argument("table: unknown method column '" + method + "'");
}

int max_row(const TableSpec& spec) {
  if (spec.rows.empty()) throw std::invalid_argument("table: empty row list");
  int m = 0;
  for (int n : spec.rows) {
    if (n < 0) throw std::invalid_argument("table: negative iteration count");
    m = std::max(m, n);
  }
  return m;
}

}  // namespace

std::optional<double> table_cell(TableMetric metric, const std::string& method, int n) {
  TableSpec spec;
  spec.metric = metric;
  spec.rows = {n};
  spec.columns = {method};
  TableData data = compute_columns(spec, n);
  return cell_value(spec, data, method, n);
}

std::string render_table_csv(const TableSpec& spec) {
  TableData data = compute_columns(spec, max_row(spec));
  std::ostringstream out;
  out << "# " << (spec.metric == TableMetric::Objective
                      ? "objective value bound constants: f_n - f* <= C * (L/2)||x0 - x*||^2"
                      : "gradient norm bound constants: ||g_n||^2/(2L) <= C * (f0 - f*)")
      << '\n';
  if (std::find(spec.columns.begin(), spec.columns.end(), kMethodDasGupta) !=
      spec.columns.end()) {
    out << "# dasgupta_reference: reference (not computed)\n";
  }
  out << "# empty cells: unavailable for this method\n";
  out << "n";
  for (const auto& m : spec.columns) out << ',' << m;
  out << '\n';
  for (int n : spec.rows) {
    out << n;
    for (const auto& m : spec.columns) {
      out << ',';
      if (auto v = cell_value(spec, data, m, n)) out << fixed6(*v);
    }
    out << '\n';
  }
  return out.str();
}

nlohmann::ordered_json render_table_json(const TableSpec& spec) {
  TableData data = compute_columns(spec, max_row(spec));
  nlohmann::ordered_json j;
  j["metric"] = spec.metric == TableMetric::Objective ? "objective" : "gradient";
  j["note"] = "dasgupta_reference is reference data (not computed); null cells are unavailable";
  j["rows"] = nlohmann::ordered_json::array();
  for (int n : spec.rows) {
    nlohmann::ordered_json row;
    row["n"] = n;
    for (const auto& m : spec.columns) {
      if (auto v = cell_value(spec, data, m, n)) {
        row[m] = *v;
      } else {
        row[m] = nullptr;
      }
    }
    j["rows"].push_back(std::move(row));
  }
  return j;
}

}  // namespace stepcat
