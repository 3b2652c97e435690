#ifndef STEPCAT_ANALYSIS_HPP
#define STEPCAT_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stepcat/dp.hpp"
#include "stepcat/schedule.hpp"

namespace stepcat {

/// Worst-case constants of one schedule, as reported in the comparison
/// tables: objective constant for primitive/dominant schedules, gradient
/// constant for g-bounded ones (same formula 1/(2*sum+1)).
struct BoundReport {
  int n = 0;
  double sum = 0.0;
  std::optional<double> objective_constant;
  std::optional<double> gradient_constant;
  ScheduleKind kind = ScheduleKind::Unclassified;
};

BoundReport bound_report(const Schedule& h);

/// Constant C in f_n - f* <= C * (L/2)*||x0 - x*||^2. Requires a Primitive
/// or Dominant tag; the paper makes no objective claim for g-bounded-only
/// schedules.
double objective_bound(const Schedule& h);

/// Constant C in ||g_n||^2/(2L) <= C * (f_0 - f*). Requires GBounded.
double gradient_bound(const Schedule& h);

/// The silver exponent log2(1 + sqrt 2) ~= 1.2716.
double rho();

struct OmegaResult {
  double value = 0.0;   // max of 2(1-mu)^rho / (1 - mu^(rho/2)) over (0,1)
  double argmax = 0.0;  // the maximizing mu
};

/// Maximizes g(mu) = 2(1-mu)^rho / (1 - mu^(rho/2)) by a 10^4-point grid
/// scan (which also guards the unimodality assumption: the discrete
/// differences must change sign exactly once) followed by golden-section
/// refinement to interval width 1e-12.
OmegaResult omega();

/// nu_l = min over 2^l-1 <= n <= 2^(l+1)-2 of (r_n + 1)/(n+2)^rho for the
/// Circ family; returns nu_0..nu_l_max. Throws RangeError if the table does
/// not cover n = 2^(l_max+1)-2, and std::logic_error if the sequence is not
/// non-decreasing or nu_0 != sqrt(2)-1 (to 1e-12).
std::vector<double> nu_table(const SumTable& circ, int l_max);

/// Per-n ratio series over [n_lo, n_hi] with extrema, in both
/// normalizations: fig_ratio = r_n/(n+1)^rho (the plotted series) and
/// liminf_ratio = r_n/n^rho (the asymptotic-theorem quantity).
struct RatioScan {
  Family family = Family::Circ;
  int n_lo = 0;
  int n_hi = 0;
  std::vector<double> fig_ratio;
  std::vector<double> liminf_ratio;
  double fig_min = 0.0, fig_max = 0.0;
  double liminf_min = 0.0, liminf_max = 0.0;
};

RatioScan ratio_scan(const SumTable& table, int n_lo, int n_hi);

/// Randomized check of the two appendix lemmas:
///  - product bound: (1 + x/w)(1 + y/w) <= 2 with w = (x^(1/rho) + y^(1/rho))^rho,
///    over (x, y) in [0, 1e3]^2;
///  - the omega iff-lemma: 2(1-mu)^rho + w*mu^rho/2 +
///    sqrt(2w*mu^rho(1-mu)^rho + w^2*mu^(2rho)/4) <= w holds iff
///    w >= 2(1-mu)^rho / (1 - mu^(rho/2)),
/// each with a 1e-9 comparison margin (samples inside the margin band of the
/// iff threshold are not counted either way).
struct PropertySuiteReport {
  long long product_checked = 0;
  long long product_failures = 0;
  long long iff_checked = 0;
  long long iff_skipped_margin = 0;
  long long iff_failures = 0;
  std::string first_failure;  // empty when clean

  bool ok() const { return product_failures == 0 && iff_failures == 0; }
};

PropertySuiteReport appendix_property_suite(int samples, std::uint64_t seed = 0x5eedu);

}  // namespace stepcat

#endif  // STEPCAT_ANALYSIS_HPP
