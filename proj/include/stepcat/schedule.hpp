#ifndef STEPCAT_SCHEDULE_HPP
#define STEPCAT_SCHEDULE_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace stepcat {

/// Classification carried by a stepsize schedule. Tags are trusted data, not
/// machine-checked properties: the concatenation rules preserve them, and the
/// test suite enforces the bound claims behind them.
enum class ScheduleKind { Primitive, Dominant, GBounded, Unclassified };

const char* to_string(ScheduleKind kind);

enum class ConcatOp { Leaf, ConPP, ConPD, ConGP };

const char* to_string(ConcatOp op);

/// Provenance record of one concatenation. Leaf nodes stand for the empty
/// schedule; internal nodes carry the joint step inserted between the two
/// children. In-order flattening (left steps, joint step, right steps)
/// reproduces the owning schedule's steps exactly.
struct ConstructionNode {
  ConcatOp op = ConcatOp::Leaf;
  double joint_step = 0.0;
  std::shared_ptr<const ConstructionNode> left;
  std::shared_ptr<const ConstructionNode> right;
};

using ConstructionPtr = std::shared_ptr<const ConstructionNode>;

struct ClassificationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CertificateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Immutable stepsize schedule: positive multipliers (already scaled by 1/L),
/// a classification tag, and optional construction provenance. The schedule
/// sum is fixed at construction time so that reversal preserves it exactly.
class Schedule {
 public:
  Schedule() = default;

  /// Builds a schedule from explicit steps; rejects non-finite or
  /// non-positive entries. No provenance is attached.
  Schedule(std::vector<double> steps, ScheduleKind kind);

  /// The empty schedule with a chosen tag (it is primitive, dominant and
  /// g-bounded all at once; the caller picks the role it plays).
  static Schedule empty(ScheduleKind kind);

  /// Internal factory used by the concatenation operators: keeps a
  /// precomputed sum and a provenance tree.
  static Schedule with_provenance(std::vector<double> steps, ScheduleKind kind, double sum,
                                  ConstructionPtr node);

  const std::vector<double>& steps() const { return steps_; }
  ScheduleKind kind() const { return kind_; }
  double sum() const { return sum_; }
  int length() const { return static_cast<int>(steps_.size()); }
  const ConstructionPtr& construction() const { return construction_; }

 private:
  std::vector<double> steps_;
  ScheduleKind kind_ = ScheduleKind::Unclassified;
  double sum_ = 0.0;
  ConstructionPtr construction_;
};

/// Joint step for concatenating two primitive schedules with sums x and y:
/// the positive root of a^2 + (x+y)a - (xy+2x+2y+2) = 0. Lies in (1, y+2).
/// Symmetric in (x, y), bitwise so.
double phi(double x, double y);

/// Joint step for the primitive/dominant (and g-bounded/primitive)
/// concatenations with sums x (primitive side) and y (other side): a root of
/// 2b^2 - (3-2y)b - (2xy+x+4y) = 0. Lies in (1, x+2).
double psi(double x, double y);

/// [h_a, phi(sums), h_b]; primitive + primitive -> primitive.
Schedule con_pp(const Schedule& h_a, const Schedule& h_b);

/// [h_a, psi(sum_a, sum_d), h_d]; primitive + dominant -> dominant.
Schedule con_pd(const Schedule& h_a, const Schedule& h_d);

/// [h_d, psi(sum_b, sum_d), h_b]; g-bounded + primitive -> g-bounded.
/// Note the argument order of psi: the primitive sum comes first.
Schedule con_gp(const Schedule& h_d, const Schedule& h_b);

/// Steps in reverse order, sum preserved exactly. Dominant becomes GBounded
/// and vice versa; Primitive stays Primitive. Provenance is mirrored
/// (reversed ConPD reads as ConGP with swapped, reversed children).
Schedule reverse(const Schedule& h);

/// Nonnegative multiplier vector witnessing a schedule's classification.
/// Primitive: u = [h; 0]. Dominant: 1'u = 2*(1'h) + 1.
struct Certificate {
  std::vector<double> u;
  double sum() const;
};

/// u = [steps; 0] for a primitive schedule.
Certificate certificate_primitive(const Schedule& h);

/// Recursively builds the dominant certificate from a construction tree
/// whose root is a ConPD node or a primitive subtree (Leaf / ConPP, promoted
/// via u = [h; 1'h+1]). Verifies, at every ConPD node and to 1e-10 relative:
///   lambda1 = (lambda1 - lambda2)^2,
///   joint step = (gamma*(lambda1-lambda2) + lambda2) / lambda1,
///   1'u = 2*(1'h) + 1.
/// Throws CertificateError if a residual exceeds tolerance (a construction
/// bug, not a math failure).
Certificate certificate_dominant(const ConstructionNode& root);

/// Convenience overload using the schedule's own provenance tree.
Certificate certificate_dominant(const Schedule& h);

/// In-order steps of a construction tree (left, joint, right).
std::vector<double> flatten(const ConstructionNode& node);

}  // namespace stepcat

#endif  // STEPCAT_SCHEDULE_HPP
