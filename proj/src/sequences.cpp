#include "stepcat/sequences.hpp"

#include <stdexcept>
#include <vector>

namespace stepcat {

namespace {

void require_kind(const Schedule& h, ScheduleKind want, const char* fn, const char* role) {
  if (h.kind() != want) {
    throw ClassificationError(std::string(fn) + ": " + role + " must be " + to_string(want) +
                              ", got " + to_string(h.kind()));
  }
}

}  // namespace

DynamicSequence::DynamicSequence(DynamicVariant variant, const Schedule& base,
                                 const Schedule& block)
    : variant_(variant), block_(block), emitted_(base) {
  if (variant == DynamicVariant::PP) {
    require_kind(base, ScheduleKind::Primitive, "dynamic_pp", "base");
  } else {
    require_kind(base, ScheduleKind::GBounded, "dynamic_gp", "base");
  }
  require_kind(block, ScheduleKind::Primitive,
               variant == DynamicVariant::PP ? "dynamic_pp" : "dynamic_gp", "block");
  sum_ = base.sum();
  block_sum_ = block.sum();
}

void DynamicSequence::append_block() {
  const double joint =
      variant_ == DynamicVariant::PP ? phi(sum_, block_sum_) : psi(block_sum_, sum_);
  std::vector<double> steps = emitted_.steps();
  steps.reserve(steps.size() + block_.steps().size() + 1);
  steps.push_back(joint);
  steps.insert(steps.end(), block_.steps().begin(), block_.steps().end());

  ConstructionPtr node;
  if (emitted_.construction() && block_.construction()) {
    auto n = std::make_shared<ConstructionNode>();
    n->op = variant_ == DynamicVariant::PP ? ConcatOp::ConPP : ConcatOp::ConGP;
    n->joint_step = joint;
    n->left = emitted_.construction();
    n->right = block_.construction();
    node = std::move(n);
  }
  sum_ += joint;
  sum_ += block_sum_;
  emitted_ = Schedule::with_provenance(std::move(steps), emitted_.kind(), sum_, std::move(node));
  ++blocks_;
}

DynamicSequence dynamic_pp(const Schedule& base, const Schedule& block, int blocks) {
  if (blocks < 0) throw std::invalid_argument("dynamic_pp: blocks must be >= 0");
  DynamicSequence seq(DynamicVariant::PP, base, block);
  for (int k = 0; k < blocks; ++k) seq.append_block();
  return seq;
}

DynamicSequence dynamic_gp(const Schedule& base, const Schedule& block, int blocks) {
  if (blocks < 0) throw std::invalid_argument("dynamic_gp: blocks must be >= 0");
  DynamicSequence seq(DynamicVariant::GP, base, block);
  for (int k = 0; k < blocks; ++k) seq.append_block();
  return seq;
}

Schedule teboulle_vaisbourd(int n) {
  if (n < 0) throw std::invalid_argument("teboulle_vaisbourd: n must be >= 0");
  std::vector<double> steps;
  steps.reserve(static_cast<size_t>(n));
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double h = phi(s, 0.0);
    steps.push_back(h);
    s += h;
  }
  return Schedule(std::move(steps), ScheduleKind::Primitive);
}

Schedule rotaru(int n) {
  if (n < 0) throw std::invalid_argument("rotaru: n must be >= 0");
  std::vector<double> steps;
  steps.reserve(static_cast<size_t>(n));
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double h = psi(0.0, s);
    steps.push_back(h);
    s += h;
  }
  return Schedule(std::move(steps), ScheduleKind::GBounded);
}

Schedule silver(int level) {
  if (level < 0) throw std::invalid_argument("silver: level must be >= 0");
  Schedule h = Schedule::empty(ScheduleKind::Primitive);
  for (int l = 0; l < level; ++l) h = con_pp(h, h);
  return h;
}

Schedule grimmer_recursion(int level) {
  if (level < 0) throw std::invalid_argument("grimmer_recursion: level must be >= 0");
  Schedule g = Schedule::empty(ScheduleKind::Dominant);
  Schedule s = Schedule::empty(ScheduleKind::Primitive);
  for (int l = 1; l <= level; ++l) {
    g = con_pd(s, g);
    s = con_pp(s, s);
  }
  return g;
}

std::optional<double> grimmer_bound(int n) {
  if (n < 0) return std::nullopt;
  // available only at n = 2^l - 1
  long long m = static_cast<long long>(n) + 1;
  if ((m & (m - 1)) != 0) return std::nullopt;
  int level = 0;
  while ((1LL << level) < m) ++level;
  return 1.0 / (2.0 * grimmer_recursion(level).sum() + 1.0);
}

}  // namespace stepcat
