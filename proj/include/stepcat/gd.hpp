#ifndef STEPCAT_GD_HPP
#define STEPCAT_GD_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "stepcat/schedule.hpp"

namespace stepcat {

struct DivergenceError : std::runtime_error {
  DivergenceError(const std::string& what, int index)
      : std::runtime_error(what), iteration(index) {}
  int iteration;
};

struct TightnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Convex L-smooth test function with analytically known minimizer data.
/// eval returns f(x) and fills grad (same length as x).
struct FunctionOracle {
  std::string name;
  int dim = 1;
  double smoothness = 1.0;  // L
  std::vector<double> minimizer;
  double min_value = 0.0;
  std::function<double(std::span<const double> x, std::span<double> grad)> eval;
};

/// Radially symmetric Huber worst-case instance: f = (L/w)|x| - L/(2w^2) for
/// |x| >= 1/w, else (L/2)|x|^2. C^1 at the kink; the closed branch uses >=.
struct HuberSpec {
  enum class Variant { Objective, Gradient };
  double w = 2.0;
  double smoothness = 1.0;
  Variant variant = Variant::Objective;

  /// w = 2*(1'h) + 1: the objective-equality instance.
  static HuberSpec objective(const Schedule& h, double L = 1.0);
  /// w = (1'h) + 1: the gradient-norm-equality instance.
  static HuberSpec gradient(const Schedule& h, double L = 1.0);
};

/// Requires w > 1 (the kink radius 1/w must be inside the unit start).
FunctionOracle huber_oracle(const HuberSpec& spec, int dim);

/// Diagonal positive-semidefinite quadratic f = sum c_i x_i^2 / 2 with
/// L = max c_i.
FunctionOracle quadratic_oracle(std::vector<double> curvatures);
FunctionOracle random_quadratic_oracle(int dim, double L, std::uint64_t seed);

/// Symmetrized log-sum-exp: tau * log sum_i [exp(<a_i,x>/tau) + exp(-<a_i,x>/tau)],
/// minimizer at the origin.
FunctionOracle log_sum_exp_oracle(int dim, int terms, double temperature, std::uint64_t seed);

/// Ridge-regularized logistic regression on random data; minimizer obtained
/// by a high-precision inner solve at construction.
FunctionOracle logistic_oracle(int dim, int samples, std::uint64_t seed);

/// One gradient-descent run: x_{i+1} = x_i - (h_i/L) g_i, with the oracle's
/// minimizer data copied in for the interpolation checks.
struct GDTrace {
  std::vector<std::vector<double>> x;  // x_0..x_n
  std::vector<std::vector<double>> g;  // g_0..g_n
  std::vector<double> f;               // f_0..f_n
  double smoothness = 1.0;
  std::vector<double> minimizer;
  double min_value = 0.0;

  int last_index() const { return static_cast<int>(f.size()) - 1; }
};

GDTrace run_gd(const FunctionOracle& oracle, std::span<const double> x0, const Schedule& h);

/// All interpolation quantities of one trace:
///   q[i][j]  = f_i - f_j + <g_i, x_j - x_i> + ||g_i - g_j||^2 / (2L)
///   i_star[i] = f_i - f* - <g_i, x_i - x*> + ||g_i||^2 / (2L)
///   star_i[i] = f* - f_i + ||g_i||^2 / (2L)
/// All are <= 0 for smooth convex f; max_entry flags violations.
struct QReport {
  std::vector<std::vector<double>> q;
  std::vector<double> i_star;
  std::vector<double> star_i;
  double max_entry = 0.0;
};

QReport q_report(const GDTrace& trace);

struct TightnessResult {
  double achieved = 0.0;
  double bound = 0.0;
  double relative_gap = 0.0;
};

/// Runs GD on the 1-D Huber instance with w = 2*(1'h)+1, L = 1, x0 = 1 and
/// checks the bound is attained: f_n - f* = objective_bound(h) * (L/2)||x0||^2
/// to relative 1e-10, and x_n = (w+1)/(2w). Throws TightnessError otherwise.
TightnessResult tightness_objective(const Schedule& h);

/// Gradient-norm variant: w = (1'h)+1, checks ||g_n||^2/(2L) =
/// gradient_bound(h) * (f_0 - f*) and x_n = 1/w.
TightnessResult tightness_gradient(const Schedule& h);

/// Slack of the dominance inequality on one trace:
///   (L/2)||x0 - x*||^2 + <u, v> - (1'u)(f_n - f*) - M
/// with M the rank-one form (L/2)||x0 - x* - G u / L||^2 for dominant
/// schedules, or (L/2)||x_n - x*||^2 + s(s+1)/(2L)*||g_n||^2 for primitive
/// ones (s = 1'h). A negative slack beyond tolerance falsifies the
/// certificate; nonnegative slack is a necessary condition only.
double dominance_check(const GDTrace& trace, const Schedule& h, const Certificate& u);

}  // namespace stepcat

#endif  // STEPCAT_GD_HPP
