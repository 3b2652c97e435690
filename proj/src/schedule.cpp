#include "stepcat/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace stepcat {

namespace {

constexpr double kCertIdentityRelTol = 1e-10;

double accumulate_lr(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

void require_finite_nonneg(double x, double y, const char* fn) {
  if (!std::isfinite(x) || !std::isfinite(y) || x < 0.0 || y < 0.0) {
    throw std::domain_error(std::string(fn) + ": arguments must be finite and >= 0");
  }
}

ConstructionPtr leaf_node() {
  static const ConstructionPtr leaf = std::make_shared<const ConstructionNode>();
  return leaf;
}

// Provenance for the concatenation [left, joint, right]. Children without
// provenance (hand-built schedules) poison the result: no tree is attached.
ConstructionPtr join_node(ConcatOp op, double joint, const Schedule& left, const Schedule& right) {
  if (!left.construction() || !right.construction()) return nullptr;
  auto node = std::make_shared<ConstructionNode>();
  node->op = op;
  node->joint_step = joint;
  node->left = left.construction();
  node->right = right.construction();
  return node;
}

void require_kind(const Schedule& h, ScheduleKind want, const char* fn, const char* role) {
  if (h.kind() != want) {
    throw ClassificationError(std::string(fn) + ": " + role + " schedule must be " +
                              to_string(want) + ", got " + to_string(h.kind()));
  }
}

ScheduleKind reversed_kind(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::Dominant:
      return ScheduleKind::GBounded;
    case ScheduleKind::GBounded:
      return ScheduleKind::Dominant;
    default:
      return k;
  }
}

ConcatOp mirrored_op(ConcatOp op) {
  switch (op) {
    case ConcatOp::ConPD:
      return ConcatOp::ConGP;
    case ConcatOp::ConGP:
      return ConcatOp::ConPD;
    default:
      return op;
  }
}

ConstructionPtr mirror(const ConstructionPtr& node) {
  if (!node) return nullptr;
  if (node->op == ConcatOp::Leaf) return node;
  auto out = std::make_shared<ConstructionNode>();
  out->op = mirrored_op(node->op);
  out->joint_step = node->joint_step;
  out->left = mirror(node->right);
  out->right = mirror(node->left);
  return out;
}

void flatten_into(const ConstructionNode& node, std::vector<double>& out) {
  if (node.op == ConcatOp::Leaf) return;
  if (node.left) flatten_into(*node.left, out);
  out.push_back(node.joint_step);
  if (node.right) flatten_into(*node.right, out);
}

bool rel_close(double a, double b, double tol) {
  double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= tol * scale;
}

// Certificate recursion over a construction tree. Returns u together with
// the flattened steps and their sum (needed by the enclosing ConPD level).
struct CertPiece {
  std::vector<double> u;
  std::vector<double> steps;
  double step_sum = 0.0;
  double u_sum = 0.0;
};

CertPiece cert_recurse(const ConstructionNode& node) {
  if (node.op == ConcatOp::ConGP) {
    throw CertificateError("certificate_dominant: ConGP node has no dominant certificate");
  }
  CertPiece out;
  if (node.op == ConcatOp::Leaf || node.op == ConcatOp::ConPP) {
    // primitive subtree, promoted: u = [h; 1'h + 1]
    out.steps = flatten(node);
    out.step_sum = accumulate_lr(out.steps);
    out.u = out.steps;
    out.u.push_back(out.step_sum + 1.0);
    out.u_sum = accumulate_lr(out.u);
    return out;
  }
  // ConPD node: u_e = [h_a, gamma, (lambda1 - lambda2) * u_d]
  if (!node.left || !node.right) {
    throw CertificateError("certificate_dominant: malformed ConPD node");
  }
  CertPiece inner = cert_recurse(*node.right);
  std::vector<double> h_a = flatten(*node.left);
  const double x = accumulate_lr(h_a);
  const double gamma = x + 2.0;
  const double lambda2 = (2.0 * x + 2.0) / inner.u_sum;
  const double lambda1 = lambda2 + 0.5 + std::sqrt(lambda2 + 0.25);
  const double mult = lambda1 - lambda2;

  if (!rel_close(lambda1, mult * mult, kCertIdentityRelTol)) {
    throw CertificateError("certificate_dominant: lambda identity residual above tolerance");
  }
  const double beta = (gamma * mult + lambda2) / lambda1;
  if (!rel_close(beta, node.joint_step, kCertIdentityRelTol)) {
    throw CertificateError("certificate_dominant: joint-step reconstruction residual above tolerance");
  }

  out.steps = h_a;
  out.steps.push_back(node.joint_step);
  out.steps.insert(out.steps.end(), inner.steps.begin(), inner.steps.end());
  out.step_sum = accumulate_lr(out.steps);

  out.u = std::move(h_a);
  out.u.push_back(gamma);
  for (double v : inner.u) out.u.push_back(mult * v);
  out.u_sum = accumulate_lr(out.u);

  if (!rel_close(out.u_sum, 2.0 * out.step_sum + 1.0, kCertIdentityRelTol)) {
    throw CertificateError("certificate_dominant: normalization 1'u = 2*1'h + 1 residual above tolerance");
  }
  return out;
}

}  // namespace

const char* to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::Primitive:
      return "primitive";
    case ScheduleKind::Dominant:
      return "dominant";
    case ScheduleKind::GBounded:
      return "gbounded";
    case ScheduleKind::Unclassified:
      return "unclassified";
  }
  return "unknown";
}

const char* to_string(ConcatOp op) {
  switch (op) {
    case ConcatOp::Leaf:
      return "leaf";
    case ConcatOp::ConPP:
      return "con_pp";
    case ConcatOp::ConPD:
      return "con_pd";
    case ConcatOp::ConGP:
      return "con_gp";
  }
  return "unknown";
}

Schedule::Schedule(std::vector<double> steps, ScheduleKind kind) {
  for (double s : steps) {
    if (!std::isfinite(s) || s <= 0.0) {
      throw std::invalid_argument("Schedule: steps must be finite and strictly positive");
    }
  }
  steps_ = std::move(steps);
  kind_ = kind;
  sum_ = accumulate_lr(steps_);
  if (steps_.empty()) construction_ = leaf_node();
}

Schedule Schedule::empty(ScheduleKind kind) {
  Schedule h;
  h.kind_ = kind;
  h.construction_ = leaf_node();
  return h;
}

Schedule Schedule::with_provenance(std::vector<double> steps, ScheduleKind kind, double sum,
                                   ConstructionPtr node) {
  Schedule h;
  h.steps_ = std::move(steps);
  h.kind_ = kind;
  h.sum_ = sum;
  h.construction_ = std::move(node);
  return h;
}

double phi(double x, double y) {
  require_finite_nonneg(x, y, "phi");
  const double s = x + y;
  const double disc = (s + 2.0) * (s + 2.0) + 4.0 * (x + 1.0) * (y + 1.0);
  return (-s + std::sqrt(disc)) / 2.0;
}

double psi(double x, double y) {
  require_finite_nonneg(x, y, "psi");
  return (3.0 - 2.0 * y + std::sqrt((2.0 * y + 1.0) * (2.0 * y + 8.0 * x + 9.0))) / 4.0;
}

namespace {

Schedule concat(ConcatOp op, const Schedule& left, double joint, const Schedule& right,
                ScheduleKind out_kind) {
  std::vector<double> steps;
  steps.reserve(left.steps().size() + right.steps().size() + 1);
  steps.insert(steps.end(), left.steps().begin(), left.steps().end());
  steps.push_back(joint);
  steps.insert(steps.end(), right.steps().begin(), right.steps().end());
  const double sum = (left.sum() + joint) + right.sum();
  return Schedule::with_provenance(std::move(steps), out_kind, sum,
                                   join_node(op, joint, left, right));
}

}  // namespace

Schedule con_pp(const Schedule& h_a, const Schedule& h_b) {
  require_kind(h_a, ScheduleKind::Primitive, "con_pp", "first");
  require_kind(h_b, ScheduleKind::Primitive, "con_pp", "second");
  const double alpha = phi(h_a.sum(), h_b.sum());
  return concat(ConcatOp::ConPP, h_a, alpha, h_b, ScheduleKind::Primitive);
}

Schedule con_pd(const Schedule& h_a, const Schedule& h_d) {
  require_kind(h_a, ScheduleKind::Primitive, "con_pd", "first");
  require_kind(h_d, ScheduleKind::Dominant, "con_pd", "second");
  const double beta = psi(h_a.sum(), h_d.sum());
  return concat(ConcatOp::ConPD, h_a, beta, h_d, ScheduleKind::Dominant);
}

Schedule con_gp(const Schedule& h_d, const Schedule& h_b) {
  require_kind(h_d, ScheduleKind::GBounded, "con_gp", "first");
  require_kind(h_b, ScheduleKind::Primitive, "con_gp", "second");
  const double beta = psi(h_b.sum(), h_d.sum());
  return concat(ConcatOp::ConGP, h_d, beta, h_b, ScheduleKind::GBounded);
}

Schedule reverse(const Schedule& h) {
  std::vector<double> steps(h.steps().rbegin(), h.steps().rend());
  return Schedule::with_provenance(std::move(steps), reversed_kind(h.kind()), h.sum(),
                                   mirror(h.construction()));
}

double Certificate::sum() const {
  double s = 0.0;
  for (double x : u) s += x;
  return s;
}

Certificate certificate_primitive(const Schedule& h) {
  require_kind(h, ScheduleKind::Primitive, "certificate_primitive", "input");
  Certificate c;
  c.u = h.steps();
  c.u.push_back(0.0);
  return c;
}

Certificate certificate_dominant(const ConstructionNode& root) {
  CertPiece piece = cert_recurse(root);
  Certificate c;
  c.u = std::move(piece.u);
  return c;
}

Certificate certificate_dominant(const Schedule& h) {
  if (!h.construction()) {
    throw CertificateError("certificate_dominant: schedule has no construction tree");
  }
  return certificate_dominant(*h.construction());
}

std::vector<double> flatten(const ConstructionNode& node) {
  std::vector<double> out;
  flatten_into(node, out);
  return out;
}

}  // namespace stepcat
