#include "stepcat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "stepcat/analysis.hpp"
#include "stepcat/dp.hpp"
#include "stepcat/gd.hpp"
#include "stepcat/sequences.hpp"

namespace stepcat {

namespace {

CheckResult make_check(std::string name, double achieved, double expected, double tolerance,
                       bool pass, std::string note = {}) {
  return CheckResult{std::move(name), achieved, expected, tolerance, pass, std::move(note)};
}

// worst relative tightness gap over all prefixes of a schedule source
template <class MakeSchedule>
CheckResult tightness_sweep(const std::string& name, int count, bool gradient_metric,
                            const MakeSchedule& make) {
  double worst = 0.0;
  std::string note;
  bool pass = true;
  for (int i = 0; i < count; ++i) {
    try {
      TightnessResult res = gradient_metric ? tightness_gradient(make(i)) : tightness_objective(make(i));
      worst = std::max(worst, res.relative_gap);
    } catch (const std::exception& e) {
      pass = false;
      if (note.empty()) note = e.what();
    }
  }
  return make_check(name, worst, 0.0, 1e-10, pass && worst <= 1e-10, std::move(note));
}

Schedule prefix_of(const Schedule& h, int n, ScheduleKind kind) {
  std::vector<double> steps(h.steps().begin(), h.steps().begin() + n);
  return Schedule(std::move(steps), kind);
}

}  // namespace

bool SuiteReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

SuiteReport verify_tightness(int n_max, int threads) {
  SuiteReport rep;
  rep.suite = "tightness";

  FamilyStore circ = pri_dp(n_max, threads);
  FamilyStore bullet = dom_pp(n_max, threads);
  FamilyStore tri = tri_family(n_max, threads);

  rep.checks.push_back(tightness_sweep("huber equality, primitive family", n_max + 1, false,
                                       [&](int n) { return circ.schedule(n); }));
  rep.checks.push_back(tightness_sweep("huber equality, dominant family", n_max + 1, false,
                                       [&](int n) { return bullet.schedule(n); }));
  rep.checks.push_back(tightness_sweep("huber equality, g-bounded family", n_max + 1, true,
                                       [&](int n) { return tri.schedule(n); }));

  const Schedule tv = teboulle_vaisbourd(n_max);
  rep.checks.push_back(tightness_sweep(
      "huber equality, teboulle-vaisbourd prefixes", n_max + 1, false,
      [&](int n) { return prefix_of(tv, n, ScheduleKind::Primitive); }));

  const Schedule ro = rotaru(n_max);
  rep.checks.push_back(tightness_sweep("huber equality, rotaru prefixes", n_max + 1, true,
                                       [&](int n) { return prefix_of(ro, n, ScheduleKind::GBounded); }));

  int levels = 0;
  while (((1 << (levels + 1)) - 1) <= n_max) ++levels;
  rep.checks.push_back(tightness_sweep("huber equality, silver schedules", levels + 1, false,
                                       [&](int l) { return silver(l); }));
  rep.checks.push_back(tightness_sweep("huber equality, grimmer schedules", levels + 1, false,
                                       [&](int l) { return grimmer_recursion(l); }));
  return rep;
}

SuiteReport verify_identities(int samples, int cert_n_max, std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "identities";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 1e6);

  double worst_phi_res = 0.0, worst_psi_res = 0.0;
  bool range_ok = true, symmetry_ok = true;
  for (int i = 0; i < samples; ++i) {
    const double x = coord(rng), y = coord(rng);
    const double a = phi(x, y);
    const double b = psi(x, y);
    range_ok = range_ok && a > 1.0 && a < y + 2.0 && b > 1.0 && b < x + 2.0;
    symmetry_ok = symmetry_ok && phi(y, x) == a;
    const double scale = (1.0 + x + y) * (1.0 + x + y);
    worst_phi_res = std::max(
        worst_phi_res,
        std::fabs(a * a + (x + y) * a - (x * y + 2.0 * x + 2.0 * y + 2.0)) / scale);
    worst_psi_res = std::max(
        worst_psi_res,
        std::fabs(2.0 * b * b - (3.0 - 2.0 * y) * b - (2.0 * x * y + x + 4.0 * y)) / scale);
  }
  rep.checks.push_back(make_check("phi/psi range lemmas (1,y+2) and (1,x+2)", range_ok ? 1 : 0, 1,
                                  0, range_ok));
  rep.checks.push_back(
      make_check("phi symmetry phi(x,y) == phi(y,x), bitwise", symmetry_ok ? 1 : 0, 1, 0,
                 symmetry_ok));
  rep.checks.push_back(make_check("phi quadratic-root scaled residual", worst_phi_res, 0.0, 1e-9,
                                  worst_phi_res <= 1e-9));
  rep.checks.push_back(make_check("psi quadratic-root scaled residual", worst_psi_res, 0.0, 1e-9,
                                  worst_psi_res <= 1e-9));

  // concatenation sum symmetry over family members
  FamilyStore circ = pri_dp(std::max(8, std::min(cert_n_max, 64)));
  double worst_sym = 0.0;
  for (int i = 0; i <= circ.n_max() && i <= 16; ++i) {
    for (int j = 0; j <= circ.n_max() && j <= 16; ++j) {
      const double sij = con_pp(circ.schedule(i), circ.schedule(j)).sum();
      const double sji = con_pp(circ.schedule(j), circ.schedule(i)).sum();
      worst_sym = std::max(worst_sym, std::fabs(sij - sji) / std::max(1.0, std::fabs(sij)));
    }
  }
  rep.checks.push_back(make_check("con_pp sum symmetry", worst_sym, 0.0, 1e-12,
                                  worst_sym <= 1e-12));

  // certificate identities over the dominant family
  FamilyStore bullet = dom_pp(cert_n_max);
  double worst_norm = 0.0;
  bool certs_ok = true;
  std::string cert_note;
  for (int n = 0; n <= cert_n_max; ++n) {
    try {
      const Schedule& h = bullet.schedule(n);
      Certificate u = certificate_dominant(h);
      if (static_cast<int>(u.u.size()) != n + 1) throw CertificateError("certificate length");
      for (double v : u.u) {
        if (!(v >= 0.0)) throw CertificateError("negative certificate entry");
      }
      const double target = 2.0 * h.sum() + 1.0;
      worst_norm = std::max(worst_norm, std::fabs(u.sum() - target) / target);
    } catch (const std::exception& e) {
      certs_ok = false;
      if (cert_note.empty()) cert_note = e.what();
    }
  }
  rep.checks.push_back(make_check("dominant certificates 1'u = 2*1'h+1 (lambda identities inside)",
                                  worst_norm, 0.0, 1e-10, certs_ok && worst_norm <= 1e-10,
                                  std::move(cert_note)));

  // reversal identities
  bool rev_ok = true;
  double worst_rev = 0.0;
  for (int n = 0; n <= std::min(cert_n_max, 64); ++n) {
    const Schedule& h = bullet.schedule(n);
    Schedule twice = reverse(reverse(h));
    rev_ok = rev_ok && twice.steps() == h.steps() && twice.kind() == h.kind();
  }
  for (int i = 0; i <= std::min(16, circ.n_max()); ++i) {
    for (int j = 0; j <= std::min(16, cert_n_max); ++j) {
      Schedule lhs = reverse(con_pd(circ.schedule(i), bullet.schedule(j)));
      Schedule rhs = con_gp(reverse(bullet.schedule(j)), reverse(circ.schedule(i)));
      for (size_t t = 0; t < lhs.steps().size(); ++t) {
        worst_rev = std::max(worst_rev, std::fabs(lhs.steps()[t] - rhs.steps()[t]) /
                                            std::max(1.0, std::fabs(lhs.steps()[t])));
      }
    }
  }
  rep.checks.push_back(make_check("reverse(reverse(h)) == h", rev_ok ? 1 : 0, 1, 0, rev_ok));
  rep.checks.push_back(make_check("reverse(con_pd(a,d)) == con_gp(reverse(d),reverse(a))",
                                  worst_rev, 0.0, 1e-12, worst_rev <= 1e-12));
  return rep;
}

SuiteReport verify_bounds(int n_max, int threads) {
  SuiteReport rep;
  rep.suite = "bounds";
  const double p = rho();
  const double slack = 1e-9;

  SumTable circ = sum_recursion(Family::Circ, n_max, threads);
  SumTable bullet = sum_recursion(Family::Bullet, n_max, threads);

  double worst_silver = 0.0;
  for (int l = 0; (1 << l) - 1 <= n_max; ++l) {
    const int n = (1 << l) - 1;
    const double target = std::pow(std::pow(2.0, l), p);
    worst_silver = std::max(worst_silver,
                            std::fabs(circ.r[static_cast<size_t>(n)] + 1.0 - target) / target);
  }
  rep.checks.push_back(make_check("silver identity r+1 = (2^l)^rho at n = 2^l-1", worst_silver,
                                  0.0, 1e-9, worst_silver <= 1e-9));

  double worst_upper = 0.0, worst_lower = 0.0, worst_omega = 0.0;
  bool increasing = true;
  const double om = omega().value;
  const double c_lo = std::sqrt(2.0) - 1.0;
  for (int n = 0; n <= n_max; ++n) {
    const double r1 = circ.r[static_cast<size_t>(n)] + 1.0;
    const double up = std::pow(n + 1.0, p);
    const double lo = c_lo * std::pow(n + 2.0, p);
    worst_upper = std::max(worst_upper, (r1 - up) / up);
    worst_lower = std::max(worst_lower, (lo - r1) / lo);
    const double zb = 2.0 * bullet.r[static_cast<size_t>(n)] + 1.0;
    const double ob = om * std::pow(n + 1.0, p);
    worst_omega = std::max(worst_omega, (zb - ob) / ob);
    if (n >= 1) {
      increasing = increasing && circ.r[static_cast<size_t>(n)] > circ.r[static_cast<size_t>(n) - 1] &&
                   bullet.r[static_cast<size_t>(n)] > bullet.r[static_cast<size_t>(n) - 1];
    }
  }
  rep.checks.push_back(make_check("circ upper sandwich r+1 <= (n+1)^rho", worst_upper, 0.0, slack,
                                  worst_upper <= slack));
  rep.checks.push_back(make_check("circ lower sandwich (sqrt2-1)(n+2)^rho <= r+1", worst_lower,
                                  0.0, slack, worst_lower <= slack));
  rep.checks.push_back(make_check("bullet bound 2r+1 <= omega*(n+1)^rho", worst_omega, 0.0, slack,
                                  worst_omega <= slack));
  rep.checks.push_back(make_check("r strictly increasing (both families)", increasing ? 1 : 0, 1,
                                  0, increasing));

  // non-uniqueness at n = 5: the three maximizing splits share one sum
  if (n_max >= 5) {
    double v1 = (circ.r[3] + circ.r[1]) + phi(circ.r[3], circ.r[1]);
    double v2 = (circ.r[2] + circ.r[2]) + phi(circ.r[2], circ.r[2]);
    double v3 = (circ.r[1] + circ.r[3]) + phi(circ.r[1], circ.r[3]);
    const double worst =
        std::max(std::fabs(v1 - v2), std::max(std::fabs(v2 - v3), std::fabs(v1 - v3))) /
        std::max(1.0, std::fabs(v2));
    rep.checks.push_back(make_check("non-uniqueness identity at n=5", worst, 0.0, 1e-10,
                                    worst <= 1e-10));
  }

  // midpoint-conjecture gate
  SumTable mid = midpoint_recursion(std::min(n_max, 4096));
  const int bad = check_midpoint_gate(mid, circ, 4096);
  rep.checks.push_back(make_check("midpoint conjecture agrees with full DP (n <= 4096)",
                                  bad < 0 ? 1 : 0, 1, 1e-9, bad < 0,
                                  bad < 0 ? "" : "first disagreement at n=" + std::to_string(bad)));

  // schedule sums agree with the table entries
  FamilyStore circ_store = pri_dp(std::min(n_max, 256), threads);
  FamilyStore bullet_store = dom_pp(std::min(n_max, 256), threads);
  double worst_store = 0.0;
  for (int n = 0; n <= circ_store.n_max(); ++n) {
    double acc = 0.0;
    for (double s : circ_store.schedule(n).steps()) acc += s;
    worst_store = std::max(worst_store, std::fabs(acc - circ_store.sums().r[static_cast<size_t>(n)]) /
                                            std::max(1.0, acc));
    acc = 0.0;
    for (double s : bullet_store.schedule(n).steps()) acc += s;
    worst_store = std::max(worst_store, std::fabs(acc - bullet_store.sums().r[static_cast<size_t>(n)]) /
                                            std::max(1.0, acc));
  }
  rep.checks.push_back(make_check("materialized schedules match table sums", worst_store, 0.0,
                                  1e-10, worst_store <= 1e-10));
  return rep;
}

SuiteReport verify_appendix(int samples, std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "appendix";
  PropertySuiteReport prop = appendix_property_suite(samples, seed);
  rep.checks.push_back(make_check("product bound (1+x/w)(1+y/w) <= 2",
                                  static_cast<double>(prop.product_failures), 0.0, 0,
                                  prop.product_failures == 0, prop.first_failure));
  rep.checks.push_back(make_check("omega iff-lemma equivalence",
                                  static_cast<double>(prop.iff_failures), 0.0, 0,
                                  prop.iff_failures == 0, prop.first_failure));

  // directed boundary probes around the iff threshold
  const double p = rho();
  bool boundary_ok = true;
  for (double mu : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double t = 2.0 * std::pow(1.0 - mu, p) / (1.0 - std::pow(mu, p / 2.0));
    const double a = std::pow(1.0 - mu, p);
    const double b = std::pow(mu, p);
    auto lhs = [&](double w) {
      return 2.0 * a + 0.5 * w * b + std::sqrt(2.0 * w * b * a + 0.25 * w * w * b * b);
    };
    const double below = t * (1.0 - 1e-6);
    const double above = t * (1.0 + 1e-6);
    boundary_ok = boundary_ok && lhs(below) > below && lhs(above) <= above + 1e-12 * t;
  }
  rep.checks.push_back(make_check("iff-lemma boundary behavior (w slightly below fails)",
                                  boundary_ok ? 1 : 0, 1, 0, boundary_ok));
  return rep;
}

std::vector<SuiteReport> verify_all(int n_max, int samples, std::uint64_t seed, int threads) {
  std::vector<SuiteReport> out;
  out.push_back(verify_tightness(n_max, threads));
  out.push_back(verify_identities(samples, std::min(n_max, 256), seed));
  out.push_back(verify_bounds(std::max(n_max, 64), threads));
  out.push_back(verify_appendix(samples, seed));
  return out;
}

nlohmann::ordered_json report_to_json(const std::vector<SuiteReport>& reports) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& rep : reports) {
    nlohmann::ordered_json suite;
    suite["suite"] = rep.suite;
    suite["pass"] = rep.all_pass();
    suite["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : rep.checks) {
      nlohmann::ordered_json check;
      check["name"] = c.name;
      check["achieved"] = c.achieved;
      check["expected"] = c.expected;
      check["tolerance"] = c.tolerance;
      check["pass"] = c.pass;
      if (!c.note.empty()) check["note"] = c.note;
      suite["checks"].push_back(std::move(check));
    }
    j.push_back(std::move(suite));
  }
  return j;
}

}  // namespace stepcat
