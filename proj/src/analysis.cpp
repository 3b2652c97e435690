#include "stepcat/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace stepcat {

namespace {

double omega_objective(double mu) {
  const double p = rho();
  return 2.0 * std::pow(1.0 - mu, p) / (1.0 - std::pow(mu, p / 2.0));
}

// left-hand side of the iff-lemma inequality
double iff_lhs(double mu, double w) {
  const double p = rho();
  const double a = std::pow(1.0 - mu, p);
  const double b = std::pow(mu, p);
  return 2.0 * a + 0.5 * w * b + std::sqrt(2.0 * w * b * a + 0.25 * w * w * b * b);
}

}  // namespace

BoundReport bound_report(const Schedule& h) {
  BoundReport rep;
  rep.n = h.length();
  rep.sum = h.sum();
  rep.kind = h.kind();
  const double c = 1.0 / (2.0 * h.sum() + 1.0);
  if (h.kind() == ScheduleKind::Primitive || h.kind() == ScheduleKind::Dominant) {
    rep.objective_constant = c;
  }
  if (h.kind() == ScheduleKind::GBounded) {
    rep.gradient_constant = c;
  }
  return rep;
}

double objective_bound(const Schedule& h) {
  if (h.kind() != ScheduleKind::Primitive && h.kind() != ScheduleKind::Dominant) {
    throw ClassificationError("objective_bound: schedule must be primitive or dominant");
  }
  return 1.0 / (2.0 * h.sum() + 1.0);
}

double gradient_bound(const Schedule& h) {
  if (h.kind() != ScheduleKind::GBounded) {
    throw ClassificationError("gradient_bound: schedule must be g-bounded");
  }
  return 1.0 / (2.0 * h.sum() + 1.0);
}

double rho() { return std::log2(std::sqrt(2.0) + 1.0); }

OmegaResult omega() {
  constexpr int kGrid = 10000;
  // open-interval grid scan; also locates the bracket for refinement
  int best = 1;
  double best_val = -1.0;
  std::vector<double> vals(kGrid + 1, 0.0);
  for (int i = 1; i < kGrid; ++i) {
    const double mu = static_cast<double>(i) / kGrid;
    vals[i] = omega_objective(mu);
    if (vals[i] > best_val) {
      best_val = vals[i];
      best = i;
    }
  }
  // unimodality guard: discrete differences must change sign exactly once
  int sign_changes = 0;
  bool rising = true;
  for (int i = 2; i < kGrid; ++i) {
    const bool up = vals[i] >= vals[i - 1];
    if (rising && !up) {
      ++sign_changes;
      rising = false;
    } else if (!rising && up) {
      ++sign_changes;
      rising = true;
    }
  }
  if (sign_changes != 1) {
    throw std::logic_error("omega: grid scan is not unimodal");
  }

  double lo = static_cast<double>(std::max(1, best - 1)) / kGrid;
  double hi = static_cast<double>(std::min(kGrid - 1, best + 1)) / kGrid;
  const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_gr * (hi - lo);
  double d = lo + inv_gr * (hi - lo);
  double fc = omega_objective(c);
  double fd = omega_objective(d);
  while (hi - lo > 1e-12) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_gr * (hi - lo);
      fc = omega_objective(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_gr * (hi - lo);
      fd = omega_objective(d);
    }
  }
  OmegaResult res;
  res.argmax = 0.5 * (lo + hi);
  res.value = omega_objective(res.argmax);
  return res;
}

std::vector<double> nu_table(const SumTable& circ, int l_max) {
  if (circ.family != Family::Circ) {
    throw std::invalid_argument("nu_table: table must be for the Circ family");
  }
  if (l_max < 0) throw std::invalid_argument("nu_table: l_max must be >= 0");
  const long long need = (1LL << (l_max + 1)) - 2;
  if (need > circ.n_max()) {
    throw RangeError("nu_table: sum table does not cover n = 2^(l_max+1)-2");
  }
  const double p = rho();
  std::vector<double> nu(static_cast<size_t>(l_max) + 1, 0.0);
  for (int l = 0; l <= l_max; ++l) {
    const long long lo = (1LL << l) - 1;
    const long long hi = (1LL << (l + 1)) - 2;
    double m = std::numeric_limits<double>::infinity();
    for (long long n = lo; n <= hi; ++n) {
      m = std::min(m, (circ.r[static_cast<size_t>(n)] + 1.0) /
                          std::pow(static_cast<double>(n) + 2.0, p));
    }
    nu[static_cast<size_t>(l)] = m;
  }
  if (std::fabs(nu[0] - (std::sqrt(2.0) - 1.0)) > 1e-12) {
    throw std::logic_error("nu_table: nu_0 != sqrt(2)-1");
  }
  for (int l = 1; l <= l_max; ++l) {
    if (nu[static_cast<size_t>(l)] < nu[static_cast<size_t>(l) - 1]) {
      throw std::logic_error("nu_table: sequence not non-decreasing at l=" + std::to_string(l));
    }
  }
  return nu;
}

RatioScan ratio_scan(const SumTable& table, int n_lo, int n_hi) {
  if (n_lo < 1) throw std::invalid_argument("ratio_scan: n_lo must be >= 1");
  if (n_hi < n_lo || n_hi > table.n_max()) {
    throw RangeError("ratio_scan: range outside sum table");
  }
  const double p = rho();
  RatioScan scan;
  scan.family = table.family;
  scan.n_lo = n_lo;
  scan.n_hi = n_hi;
  scan.fig_ratio.reserve(static_cast<size_t>(n_hi - n_lo) + 1);
  scan.liminf_ratio.reserve(static_cast<size_t>(n_hi - n_lo) + 1);
  for (int n = n_lo; n <= n_hi; ++n) {
    const double r = table.r[static_cast<size_t>(n)];
    scan.fig_ratio.push_back(r / std::pow(n + 1.0, p));
    scan.liminf_ratio.push_back(r / std::pow(static_cast<double>(n), p));
  }
  auto [fmin, fmax] = std::minmax_element(scan.fig_ratio.begin(), scan.fig_ratio.end());
  auto [lmin, lmax] = std::minmax_element(scan.liminf_ratio.begin(), scan.liminf_ratio.end());
  scan.fig_min = *fmin;
  scan.fig_max = *fmax;
  scan.liminf_min = *lmin;
  scan.liminf_max = *lmax;
  return scan;
}

PropertySuiteReport appendix_property_suite(int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("appendix_property_suite: samples must be >= 1");
  const double p = rho();
  constexpr double kMargin = 1e-9;
  PropertySuiteReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // mu stays away from the singular endpoints, where the slope of
  // (lhs - w) in w vanishes and the comparison margin would swallow the scan
  std::uniform_real_distribution<double> mu_dist(1e-6, 1.0 - 1e-6);
  std::uniform_real_distribution<double> coord(0.0, 1e3);

  auto record_failure = [&](const std::string& what) {
    if (rep.first_failure.empty()) rep.first_failure = what;
  };

  for (int i = 0; i < samples; ++i) {
    // product bound
    const double x = coord(rng);
    const double y = coord(rng);
    const double w = std::pow(std::pow(x, 1.0 / p) + std::pow(y, 1.0 / p), p);
    ++rep.product_checked;
    if (w > 0.0) {
      const double prod = (1.0 + x / w) * (1.0 + y / w);
      if (prod > 2.0 + kMargin) {
        ++rep.product_failures;
        std::ostringstream os;
        os << "product bound violated: x=" << x << " y=" << y << " product=" << prod;
        record_failure(os.str());
      }
    }

    // iff-lemma, sampling w around the threshold
    const double mu = mu_dist(rng);
    const double threshold = omega_objective(mu);
    const double factor = std::exp(std::log(4.0) * (unit(rng) - 0.5));  // [1/2, 2] log-uniform
    const double wq = threshold * factor;
    const double margin = kMargin * std::max(1.0, threshold);
    if (std::fabs(wq - threshold) <= margin) {
      ++rep.iff_skipped_margin;
    } else {
      ++rep.iff_checked;
      const bool ineq_holds = iff_lhs(mu, wq) <= wq + margin;
      const bool above_threshold = wq >= threshold;
      if (ineq_holds != above_threshold) {
        ++rep.iff_failures;
        std::ostringstream os;
        os << "iff-lemma violated: mu=" << mu << " w=" << wq << " threshold=" << threshold
           << " lhs=" << iff_lhs(mu, wq);
        record_failure(os.str());
      }
    }
  }
  return rep;
}

}  // namespace stepcat
