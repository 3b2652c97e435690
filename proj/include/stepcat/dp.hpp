#ifndef STEPCAT_DP_HPP
#define STEPCAT_DP_HPP

#include <memory>
#include <optional>
#include <vector>

#include "stepcat/schedule.hpp"

namespace stepcat {

/// Circ: the primitive family (ConPP over its own prefixes).
/// Bullet: the dominant family (ConPD of a Circ prefix and a Bullet suffix).
/// Tri: Bullet reversed; g-bounded, same sums.
enum class Family { Circ, Bullet, Tri };

const char* to_string(Family family);

struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// Per-n schedule sums r[n] = 1'h^(n) for one family plus the maximizing
/// split index k chosen at each n (last maximizer; split[0] = -1).
/// tied_rows lists the n whose maximizer was not unique within 1e-12
/// relative (mirror-symmetric Circ splits are not counted; the scan covers
/// each unordered split once).
struct SumTable {
  Family family = Family::Circ;
  std::vector<double> r;
  std::vector<int> split;
  std::vector<int> tied_rows;
  bool conjecture_accelerated = false;

  int n_max() const { return static_cast<int>(r.size()) - 1; }
};

/// Sum-only dynamic program: O(N^2) time, O(N) memory. The k-loop update
/// rule is "s >= s_max", so the last maximizing k wins. For Circ the
/// candidate value is bitwise symmetric under k <-> n-1-k, which lets the
/// scan cover only the upper half of the range without changing the result.
SumTable sum_recursion(Family family, int n_max, int threads = 1);

/// O(N)-time Circ sum table using the fixed midpoint split
/// k = floor((n-1)/2). Labeled conjecture_accelerated; callers must gate it
/// on agreement with the full DP before downstream use (see
/// `check_midpoint_gate`).
SumTable midpoint_recursion(int n_max);

/// Asserts midpoint/full-DP sum agreement on n <= min of both tables' ranges
/// and `n_cap`, to `rel_tol` relative. Returns the first disagreeing n, or
/// -1 if the tables agree.
int check_midpoint_gate(const SumTable& midpoint, const SumTable& full_dp, int n_cap,
                        double rel_tol = 1e-9);

/// One schedule family: the sum table plus lazily materialized schedules
/// (reconstructed from the recorded split indices, provenance attached).
/// Tables are immutable after construction; schedule materialization is
/// memoized and must be driven from a single thread.
class FamilyStore {
 public:
  Family family() const { return table_.family; }
  int n_max() const { return table_.n_max(); }
  const SumTable& sums() const { return table_; }

  /// The family's length-n schedule. For Tri, materialization also replays
  /// the ConGP recursion over the mapped split indices and verifies it
  /// reproduces the reversed Bullet schedule entrywise to 1e-12 (throws
  /// std::logic_error otherwise).
  const Schedule& schedule(int n);

 private:
  friend FamilyStore pri_dp(int n_max, int threads);
  friend FamilyStore dom_pp(int n_max, int threads);
  friend FamilyStore tri_family(int n_max, int threads);

  SumTable table_;
  std::shared_ptr<FamilyStore> circ_;    // Bullet: the primitive family it builds on
  std::shared_ptr<FamilyStore> bullet_;  // Tri: the dominant family it reverses
  std::vector<std::optional<Schedule>> cache_;
};

/// Primitive family H(circ) up to n_max.
FamilyStore pri_dp(int n_max, int threads = 1);

/// Dominant family H(bullet) up to n_max; runs pri_dp internally.
FamilyStore dom_pp(int n_max, int threads = 1);

/// G-bounded family H(tri): reversed H(bullet), with the ConGP-recursion
/// consistency check applied when schedules are materialized.
FamilyStore tri_family(int n_max, int threads = 1);

}  // namespace stepcat

#endif  // STEPCAT_DP_HPP
