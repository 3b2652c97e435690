#include <doctest.h>

#include <cmath>

#include "stepcat/dp.hpp"

using namespace stepcat;

namespace {

const double kSqrt2 = std::sqrt(2.0);

double accum(const Schedule& h) {
  double s = 0.0;
  for (double x : h.steps()) s += x;
  return s;
}

void check_steps(const Schedule& h, const std::vector<double>& want, double tol) {
  REQUIRE(h.length() == static_cast<int>(want.size()));
  for (size_t i = 0; i < want.size(); ++i) {
    CHECK(h.steps()[i] == doctest::Approx(want[i]).epsilon(tol));
  }
}

}  // namespace

TEST_CASE("pri_dp: base values") {
  FamilyStore circ = pri_dp(3);
  CHECK(circ.schedule(0).length() == 0);
  check_steps(circ.schedule(1), {kSqrt2}, 1e-14);
  CHECK(circ.sums().r[1] == doctest::Approx(kSqrt2).epsilon(1e-15));
  CHECK(circ.sums().r[2] == doctest::Approx(3.015445388225426).epsilon(1e-12));
  // silver point n = 3: r + 1 = 4^rho = 3 + 2 sqrt 2
  CHECK(circ.sums().r[3] + 1.0 == doctest::Approx(3.0 + 2.0 * kSqrt2).epsilon(1e-12));
  CHECK(circ.schedule(2).kind() == ScheduleKind::Primitive);
  // last-maximizer tie-breaking puts the long step second at n = 2
  check_steps(circ.schedule(2), {kSqrt2, 1.6012318258523308}, 1e-12);
}

TEST_CASE("dom_pp: Table-1 step vectors, last-maximizer tie-breaking") {
  FamilyStore bullet = dom_pp(7);
  check_steps(bullet.schedule(1), {1.5}, 1e-14);
  check_steps(bullet.schedule(2), {1.414214, 1.876768}, 1e-5);
  check_steps(bullet.schedule(3), {1.414214, 2.414214, 1.5}, 1e-5);
  check_steps(bullet.schedule(4), {1.414214, 1.601232, 3.005144, 1.5}, 1e-5);
  check_steps(bullet.schedule(5), {1.414214, 2.0, 1.414214, 3.557647, 1.5}, 1e-5);
  check_steps(bullet.schedule(6), {1.414214, 2.0, 1.414214, 4.172876, 1.414214, 1.876768}, 1e-5);
  check_steps(bullet.schedule(7),
              {1.414214, 1.601232, 2.260578, 1.414214, 4.826959, 1.414214, 1.876768}, 1e-5);
  for (int n = 0; n <= 7; ++n) CHECK(bullet.schedule(n).kind() == ScheduleKind::Dominant);
}

TEST_CASE("dom_pp: full-precision joints at n = 4") {
  FamilyStore bullet = dom_pp(4);
  check_steps(bullet.schedule(4),
              {kSqrt2, 1.6012318258523308, 3.005144052529072, 1.5}, 1e-12);
}

TEST_CASE("tri_family: reversed dominant family with ConGP consistency") {
  FamilyStore tri = tri_family(8);
  CHECK(tri.schedule(0).length() == 0);
  check_steps(tri.schedule(5), {1.5, 3.5576472913278487, kSqrt2, 2.0, kSqrt2}, 1e-9);
  CHECK(tri.schedule(5).kind() == ScheduleKind::GBounded);

  FamilyStore bullet = dom_pp(8);
  for (int n = 0; n <= 8; ++n) {
    CHECK(tri.sums().r[n] == bullet.sums().r[n]);  // reversal preserves sums
    CHECK(tri.schedule(n).sum() == bullet.schedule(n).sum());
  }
}

TEST_CASE("sum_recursion: examples") {
  SumTable circ = sum_recursion(Family::Circ, 7);
  CHECK(circ.r[0] == 0.0);
  const double rho = std::log2(1.0 + kSqrt2);
  CHECK(circ.r[7] + 1.0 == doctest::Approx(std::pow(8.0, rho)).epsilon(1e-12));
  CHECK(circ.r[7] + 1.0 == doctest::Approx(14.071067811865476).epsilon(1e-12));

  SumTable bullet = sum_recursion(Family::Bullet, 3);
  CHECK(1.0 / (2.0 * bullet.r[3] + 1.0) == doctest::Approx(0.085786).epsilon(1e-5));
  CHECK(1.0 / (2.0 * bullet.r[3] + 1.0) == doctest::Approx(0.08578643762690485).epsilon(1e-12));
}

TEST_CASE("sum_recursion: r strictly increasing and tables match the stores") {
  FamilyStore circ = pri_dp(64);
  FamilyStore bullet = dom_pp(64);
  for (int n = 1; n <= 64; ++n) {
    CHECK(circ.sums().r[n] > circ.sums().r[n - 1]);
    CHECK(bullet.sums().r[n] > bullet.sums().r[n - 1]);
  }
  for (int n = 0; n <= 64; ++n) {
    CHECK(accum(circ.schedule(n)) ==
          doctest::Approx(circ.sums().r[n]).epsilon(1e-10));
    CHECK(accum(bullet.schedule(n)) ==
          doctest::Approx(bullet.sums().r[n]).epsilon(1e-10));
  }
}

TEST_CASE("sum_recursion: threaded scan matches the serial one exactly") {
  SumTable serial = sum_recursion(Family::Bullet, 256, 1);
  SumTable threaded = sum_recursion(Family::Bullet, 256, 4);
  CHECK(serial.r == threaded.r);
  CHECK(serial.split == threaded.split);
}

TEST_CASE("non-uniqueness at n = 5: all maximizing splits share one sum") {
  SumTable c = sum_recursion(Family::Circ, 5);
  const double v31 = (c.r[3] + c.r[1]) + phi(c.r[3], c.r[1]);
  const double v22 = (c.r[2] + c.r[2]) + phi(c.r[2], c.r[2]);
  const double v13 = (c.r[1] + c.r[3]) + phi(c.r[1], c.r[3]);
  CHECK(v31 == doctest::Approx(v22).epsilon(1e-10));
  CHECK(v13 == doctest::Approx(v22).epsilon(1e-10));
  CHECK(c.r[5] == doctest::Approx(v22).epsilon(1e-12));
}

TEST_CASE("midpoint_recursion: conjecture-accelerated table") {
  SumTable mid = midpoint_recursion(64);
  CHECK(mid.conjecture_accelerated);
  CHECK(mid.r[0] == 0.0);
  SumTable full = sum_recursion(Family::Circ, 64);
  CHECK(mid.r[5] == doctest::Approx(full.r[5]).epsilon(1e-12));
  CHECK(check_midpoint_gate(mid, full, 64) == -1);

  const double rho = std::log2(1.0 + kSqrt2);
  for (int l = 0; (1 << l) - 1 <= 64; ++l) {
    const int n = (1 << l) - 1;
    CHECK(mid.r[n] + 1.0 == doctest::Approx(std::pow(std::pow(2.0, l), rho)).epsilon(1e-9));
  }

  // a corrupted table surfaces the first disagreeing n
  SumTable broken = mid;
  broken.r[17] += 1e-3;
  CHECK(check_midpoint_gate(broken, full, 64) == 17);
}

TEST_CASE("sum_recursion: Tri table mirrors Bullet") {
  SumTable tri = sum_recursion(Family::Tri, 8);
  SumTable bullet = sum_recursion(Family::Bullet, 8);
  CHECK(tri.family == Family::Tri);
  CHECK(tri.r == bullet.r);
  for (int n = 1; n <= 8; ++n) CHECK(tri.split[n] == n - 1 - bullet.split[n]);
}

TEST_CASE("family stores: range errors and argument validation") {
  FamilyStore circ = pri_dp(4);
  CHECK_THROWS_AS(circ.schedule(5), RangeError);
  CHECK_THROWS_AS(circ.schedule(-1), RangeError);
  CHECK_THROWS_AS(pri_dp(-1), std::invalid_argument);
  CHECK_THROWS_AS(sum_recursion(Family::Circ, -2), std::invalid_argument);
}

TEST_CASE("family schedules keep their classification through re-concatenation") {
  FamilyStore circ = pri_dp(6);
  FamilyStore bullet = dom_pp(6);
  Schedule pp = con_pp(circ.schedule(2), circ.schedule(3));
  CHECK(pp.kind() == ScheduleKind::Primitive);
  Schedule pd = con_pd(circ.schedule(2), bullet.schedule(3));
  CHECK(pd.kind() == ScheduleKind::Dominant);
  Schedule gp = con_gp(reverse(bullet.schedule(3)), reverse(circ.schedule(2)));
  CHECK(gp.kind() == ScheduleKind::GBounded);
}
