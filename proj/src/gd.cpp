#include "stepcat/gd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace stepcat {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double nrm2sq(std::span<const double> a) { return dot(a, a); }

double diff_nrm2sq(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// Huber oracle without the w > 1 precondition; the tightness runs need the
// w = 1 edge where the unit start sits exactly on the kink.
FunctionOracle huber_unchecked(double w, double L, int dim) {
  if (!(w >= 1.0) || !(L > 0.0) || dim < 1) {
    throw std::domain_error("huber oracle: need w >= 1, L > 0, dim >= 1");
  }
  FunctionOracle o;
  o.name = "huber(w=" + std::to_string(w) + ")";
  o.dim = dim;
  o.smoothness = L;
  o.minimizer.assign(static_cast<size_t>(dim), 0.0);
  o.min_value = 0.0;
  o.eval = [w, L](std::span<const double> x, std::span<double> grad) {
    const double norm = std::sqrt(nrm2sq(x));
    if (norm >= 1.0 / w) {
      const double scale = L / (w * norm);
      for (size_t i = 0; i < x.size(); ++i) grad[i] = scale * x[i];
      return (L / w) * norm - L / (2.0 * w * w);
    }
    for (size_t i = 0; i < x.size(); ++i) grad[i] = L * x[i];
    return 0.5 * L * nrm2sq(x);
  };
  return o;
}

}  // namespace

HuberSpec HuberSpec::objective(const Schedule& h, double L) {
  return HuberSpec{2.0 * h.sum() + 1.0, L, Variant::Objective};
}

HuberSpec HuberSpec::gradient(const Schedule& h, double L) {
  return HuberSpec{h.sum() + 1.0, L, Variant::Gradient};
}

FunctionOracle huber_oracle(const HuberSpec& spec, int dim) {
  if (!(spec.w > 1.0)) {
    throw std::domain_error("huber_oracle: w must be > 1 (kink radius would reach the unit start)");
  }
  return huber_unchecked(spec.w, spec.smoothness, dim);
}

FunctionOracle quadratic_oracle(std::vector<double> curvatures) {
  if (curvatures.empty()) throw std::invalid_argument("quadratic_oracle: empty curvature list");
  double L = 0.0;
  for (double c : curvatures) {
    if (!(c >= 0.0)) throw std::invalid_argument("quadratic_oracle: curvatures must be >= 0");
    L = std::max(L, c);
  }
  if (L == 0.0) throw std::invalid_argument("quadratic_oracle: all curvatures are zero");
  FunctionOracle o;
  o.name = "quadratic";
  o.dim = static_cast<int>(curvatures.size());
  o.smoothness = L;
  o.minimizer.assign(curvatures.size(), 0.0);
  o.min_value = 0.0;
  o.eval = [c = std::move(curvatures)](std::span<const double> x, std::span<double> grad) {
    double f = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
      grad[i] = c[i] * x[i];
      f += 0.5 * c[i] * x[i] * x[i];
    }
    return f;
  };
  return o;
}

FunctionOracle random_quadratic_oracle(int dim, double L, std::uint64_t seed) {
  if (dim < 1 || !(L > 0.0)) throw std::invalid_argument("random_quadratic_oracle: bad arguments");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, L);
  std::vector<double> c(static_cast<size_t>(dim));
  for (double& v : c) v = unif(rng);
  c[static_cast<size_t>(rng() % static_cast<std::uint64_t>(dim))] = L;  // attain the declared L
  return quadratic_oracle(std::move(c));
}

FunctionOracle log_sum_exp_oracle(int dim, int terms, double temperature, std::uint64_t seed) {
  if (dim < 1 || terms < 1 || !(temperature > 0.0)) {
    throw std::invalid_argument("log_sum_exp_oracle: bad arguments");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<std::vector<double>> rows(static_cast<size_t>(terms));
  double max_row_sq = 0.0;
  for (auto& row : rows) {
    row.resize(static_cast<size_t>(dim));
    for (double& v : row) v = unif(rng);
    max_row_sq = std::max(max_row_sq, nrm2sq(row));
  }
  FunctionOracle o;
  o.name = "log_sum_exp";
  o.dim = dim;
  // Hessian <= max_i ||a_i||^2 / tau; symmetrization keeps the minimizer at 0
  o.smoothness = max_row_sq / temperature;
  o.minimizer.assign(static_cast<size_t>(dim), 0.0);
  o.min_value = temperature * std::log(2.0 * terms);
  o.eval = [rows = std::move(rows), tau = temperature](std::span<const double> x,
                                                       std::span<double> grad) {
    const size_t m = rows.size();
    std::vector<double> z(2 * m);
    double zmax = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < m; ++i) {
      const double t = dot(rows[i], x) / tau;
      z[2 * i] = t;
      z[2 * i + 1] = -t;
      zmax = std::max(zmax, std::fabs(t));
    }
    double sum = 0.0;
    for (double v : z) sum += std::exp(v - zmax);
    const double f = tau * (zmax + std::log(sum));
    std::fill(grad.begin(), grad.end(), 0.0);
    for (size_t i = 0; i < m; ++i) {
      const double p = (std::exp(z[2 * i] - zmax) - std::exp(z[2 * i + 1] - zmax)) / sum;
      for (size_t j = 0; j < grad.size(); ++j) grad[j] += p * rows[i][j];
    }
    return f;
  };
  return o;
}

FunctionOracle logistic_oracle(int dim, int samples, std::uint64_t seed) {
  if (dim < 1 || samples < 1) throw std::invalid_argument("logistic_oracle: bad arguments");
  constexpr double kRidge = 0.1;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<std::vector<double>> a(static_cast<size_t>(samples));
  std::vector<double> y(static_cast<size_t>(samples));
  double sq_sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    a[i].resize(static_cast<size_t>(dim));
    for (double& v : a[i]) v = unif(rng);
    y[i] = (rng() & 1u) ? 1.0 : -1.0;
    sq_sum += nrm2sq(a[i]);
  }
  const double L = kRidge + sq_sum / (4.0 * samples);

  auto eval = [a = std::move(a), y = std::move(y), m = static_cast<double>(samples)](
                  std::span<const double> x, std::span<double> grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double f = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
      const double t = y[i] * dot(a[i], x);
      // log(1 + exp(-t)), stable on both branches
      const double loss = t > 0.0 ? std::log1p(std::exp(-t)) : -t + std::log1p(std::exp(t));
      f += loss / m;
      const double sig = t > 0.0 ? std::exp(-t) / (1.0 + std::exp(-t)) : 1.0 / (1.0 + std::exp(t));
      const double coef = -y[i] * sig / m;
      for (size_t j = 0; j < grad.size(); ++j) grad[j] += coef * a[i][j];
    }
    for (size_t j = 0; j < grad.size(); ++j) {
      f += 0.5 * kRidge * x[j] * x[j];
      grad[j] += kRidge * x[j];
    }
    return f;
  };

  // high-precision inner solve for the minimizer (strongly convex => linear rate)
  std::vector<double> xs(static_cast<size_t>(dim), 0.0);
  std::vector<double> gr(static_cast<size_t>(dim), 0.0);
  for (int it = 0; it < 200000; ++it) {
    eval(xs, gr);
    double gmax = 0.0;
    for (double v : gr) gmax = std::max(gmax, std::fabs(v));
    if (gmax <= 1e-14) break;
    for (size_t j = 0; j < xs.size(); ++j) xs[j] -= gr[j] / L;
  }

  FunctionOracle o;
  o.name = "logistic";
  o.dim = dim;
  o.smoothness = L;
  o.minimizer = xs;
  o.min_value = eval(xs, gr);
  o.eval = std::move(eval);
  return o;
}

GDTrace run_gd(const FunctionOracle& oracle, std::span<const double> x0, const Schedule& h) {
  if (static_cast<int>(x0.size()) != oracle.dim) {
    throw std::invalid_argument("run_gd: x0 dimension does not match the oracle");
  }
  GDTrace trace;
  trace.smoothness = oracle.smoothness;
  trace.minimizer = oracle.minimizer;
  trace.min_value = oracle.min_value;
  const int n = h.length();
  trace.x.reserve(static_cast<size_t>(n) + 1);
  trace.g.reserve(static_cast<size_t>(n) + 1);
  trace.f.reserve(static_cast<size_t>(n) + 1);

  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> grad(x.size(), 0.0);
  for (int i = 0; i <= n; ++i) {
    const double fx = oracle.eval(x, grad);
    bool finite = std::isfinite(fx);
    for (double v : grad) finite = finite && std::isfinite(v);
    if (!finite) {
      throw DivergenceError("run_gd: non-finite value or gradient at iteration " +
                                std::to_string(i),
                            i);
    }
    trace.x.push_back(x);
    trace.g.push_back(grad);
    trace.f.push_back(fx);
    if (i < n) {
      const double step = h.steps()[static_cast<size_t>(i)] / oracle.smoothness;
      for (size_t j = 0; j < x.size(); ++j) x[j] -= step * grad[j];
    }
  }
  return trace;
}

QReport q_report(const GDTrace& trace) {
  if (trace.minimizer.empty() && !trace.x.empty() && !trace.x[0].empty()) {
    throw CapabilityError("q_report: trace has no minimizer data");
  }
  const size_t count = trace.f.size();
  const double L = trace.smoothness;
  QReport rep;
  rep.q.assign(count, std::vector<double>(count, 0.0));
  rep.i_star.assign(count, 0.0);
  rep.star_i.assign(count, 0.0);
  double worst = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < count; ++i) {
    for (size_t j = 0; j < count; ++j) {
      if (i == j) continue;
      double inner = 0.0;
      for (size_t t = 0; t < trace.x[i].size(); ++t) {
        inner += trace.g[i][t] * (trace.x[j][t] - trace.x[i][t]);
      }
      const double qij =
          trace.f[i] - trace.f[j] + inner + diff_nrm2sq(trace.g[i], trace.g[j]) / (2.0 * L);
      rep.q[i][j] = qij;
      worst = std::max(worst, qij);
    }
    double inner_star = 0.0;
    for (size_t t = 0; t < trace.x[i].size(); ++t) {
      inner_star += trace.g[i][t] * (trace.x[i][t] - trace.minimizer[t]);
    }
    const double gi_sq = nrm2sq(trace.g[i]);
    rep.i_star[i] = trace.f[i] - trace.min_value - inner_star + gi_sq / (2.0 * L);
    rep.star_i[i] = trace.min_value - trace.f[i] + gi_sq / (2.0 * L);
    worst = std::max({worst, rep.i_star[i], rep.star_i[i]});
  }
  rep.max_entry = count == 0 ? 0.0 : worst;
  return rep;
}

namespace {

constexpr double kTightnessRelTol = 1e-10;

TightnessResult tightness_run(const Schedule& h, double w, double bound_value,
                              double closed_form_xn, bool gradient_metric, const char* what) {
  FunctionOracle oracle = huber_unchecked(w, 1.0, 1);
  const double x0[] = {1.0};
  GDTrace trace = run_gd(oracle, x0, h);
  TightnessResult res;
  res.bound = bound_value;
  const int n = trace.last_index();
  if (gradient_metric) {
    res.achieved = nrm2sq(trace.g[static_cast<size_t>(n)]) / (2.0 * trace.smoothness);
  } else {
    res.achieved = trace.f[static_cast<size_t>(n)] - trace.min_value;
  }
  res.relative_gap = std::fabs(res.achieved - res.bound) / res.bound;
  if (res.relative_gap > kTightnessRelTol) {
    throw TightnessError(std::string(what) + ": achieved/bound gap above tolerance");
  }
  const double xn = trace.x[static_cast<size_t>(n)][0];
  if (std::fabs(xn - closed_form_xn) > kTightnessRelTol * std::max(1.0, std::fabs(closed_form_xn))) {
    throw TightnessError(std::string(what) + ": final iterate differs from the closed form");
  }
  return res;
}

}  // namespace

TightnessResult tightness_objective(const Schedule& h) {
  if (h.kind() != ScheduleKind::Primitive && h.kind() != ScheduleKind::Dominant) {
    throw ClassificationError("tightness_objective: schedule must be primitive or dominant");
  }
  const double w = 2.0 * h.sum() + 1.0;
  const double bound = (1.0 / w) * 0.5;  // objective_bound * (L/2)||x0||^2
  return tightness_run(h, w, bound, (w + 1.0) / (2.0 * w), false, "tightness_objective");
}

TightnessResult tightness_gradient(const Schedule& h) {
  if (h.kind() != ScheduleKind::GBounded) {
    throw ClassificationError("tightness_gradient: schedule must be g-bounded");
  }
  const double w = h.sum() + 1.0;
  const double f0 = 1.0 / w - 1.0 / (2.0 * w * w);  // f(x0) - f* on the instance
  const double bound = f0 / (2.0 * h.sum() + 1.0);
  return tightness_run(h, w, bound, 1.0 / w, true, "tightness_gradient");
}

double dominance_check(const GDTrace& trace, const Schedule& h, const Certificate& u) {
  const size_t count = trace.f.size();
  if (count != static_cast<size_t>(h.length()) + 1) {
    throw std::invalid_argument("dominance_check: trace does not match the schedule length");
  }
  if (u.u.size() != count) {
    throw std::invalid_argument("dominance_check: certificate length must be n+1");
  }
  const double L = trace.smoothness;
  const size_t n = count - 1;

  QReport rep = q_report(trace);
  double inner_uv = 0.0;
  for (size_t i = 0; i < count; ++i) inner_uv += u.u[i] * rep.i_star[i];

  const double dist0_sq = diff_nrm2sq(trace.x[0], trace.minimizer);
  const double fn_gap = trace.f[n] - trace.min_value;

  double m_value = 0.0;
  if (h.kind() == ScheduleKind::Primitive) {
    const double s = h.sum();
    m_value = 0.5 * L * diff_nrm2sq(trace.x[n], trace.minimizer) +
              s * (s + 1.0) / (2.0 * L) * nrm2sq(trace.g[n]);
  } else {
    // rank-one form: (L/2) || x0 - x* - G u / L ||^2
    double m_sq = 0.0;
    for (size_t t = 0; t < trace.x[0].size(); ++t) {
      double gu = 0.0;
      for (size_t i = 0; i < count; ++i) gu += trace.g[i][t] * u.u[i];
      const double d = trace.x[0][t] - trace.minimizer[t] - gu / L;
      m_sq += d * d;
    }
    m_value = 0.5 * L * m_sq;
  }
  return 0.5 * L * dist0_sq + inner_uv - u.sum() * fn_gap - m_value;
}

}  // namespace stepcat
