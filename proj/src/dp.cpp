#include "stepcat/dp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

namespace stepcat {

namespace {

struct Best {
  double value = -1.0;
  int k = -1;
};

// Sequential ">= update" over [k_begin, k_end) == last maximizer. The
// parallel merge keeps (value, k) lexicographic with larger k winning ties,
// which reproduces the sequential result exactly.
template <class Cand>
Best scan_last_max(int k_begin, int k_end, int threads, const Cand& cand) {
  auto reduce = [&](int lo, int hi) {
    Best b;
    for (int k = lo; k < hi; ++k) {
      double s = cand(k);
      if (s >= b.value) {
        b.value = s;
        b.k = k;
      }
    }
    return b;
  };
  const int count = k_end - k_begin;
  if (threads <= 1 || count < 2048) return reduce(k_begin, k_end);

  std::vector<Best> parts(static_cast<size_t>(threads));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    const int lo = k_begin + static_cast<int>(static_cast<long long>(count) * t / threads);
    const int hi = k_begin + static_cast<int>(static_cast<long long>(count) * (t + 1) / threads);
    pool.emplace_back([&, lo, hi, t] { parts[static_cast<size_t>(t)] = reduce(lo, hi); });
  }
  for (auto& th : pool) th.join();
  Best out;
  for (const Best& b : parts) {
    if (b.k < 0) continue;
    if (b.value > out.value || (b.value == out.value && b.k > out.k)) out = b;
  }
  return out;
}

// second sweep counting maximizers within 1e-12 relative of the winner
template <class Cand>
bool has_tie(int k_begin, int k_end, const Cand& cand, const Best& best) {
  const double tol = 1e-12 * std::max(1.0, std::fabs(best.value));
  for (int k = k_begin; k < k_end; ++k) {
    if (k != best.k && best.value - cand(k) <= tol) return true;
  }
  return false;
}

SumTable circ_sums(int n_max, int threads) {
  SumTable t;
  t.family = Family::Circ;
  t.r.assign(static_cast<size_t>(n_max) + 1, 0.0);
  t.split.assign(static_cast<size_t>(n_max) + 1, -1);
  for (int n = 1; n <= n_max; ++n) {
    auto cand = [&](int k) {
      const int kp = n - 1 - k;
      return (t.r[k] + t.r[kp]) + phi(t.r[k], t.r[kp]);
    };
    // The candidate is bitwise symmetric under k <-> n-1-k, so the last
    // maximizer of the full range always lies in the upper half.
    Best b = scan_last_max(n / 2, n, threads, cand);
    t.r[n] = b.value;
    t.split[n] = b.k;
    if (has_tie(n / 2, n, cand, b)) t.tied_rows.push_back(n);
  }
  return t;
}

SumTable bullet_sums(const SumTable& circ, int n_max, int threads) {
  SumTable t;
  t.family = Family::Bullet;
  t.r.assign(static_cast<size_t>(n_max) + 1, 0.0);
  t.split.assign(static_cast<size_t>(n_max) + 1, -1);
  for (int n = 1; n <= n_max; ++n) {
    auto cand = [&](int k) {
      const int kp = n - 1 - k;
      return (circ.r[k] + t.r[kp]) + psi(circ.r[k], t.r[kp]);
    };
    Best b = scan_last_max(0, n, threads, cand);
    t.r[n] = b.value;
    t.split[n] = b.k;
    if (has_tie(0, n, cand, b)) t.tied_rows.push_back(n);
  }
  return t;
}

bool steps_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    double scale = std::max({1.0, std::fabs(a[i]), std::fabs(b[i])});
    if (std::fabs(a[i] - b[i]) > tol * scale) return false;
  }
  return true;
}

}  // namespace

const char* to_string(Family family) {
  switch (family) {
    case Family::Circ:
      return "circ";
    case Family::Bullet:
      return "bullet";
    case Family::Tri:
      return "tri";
  }
  return "unknown";
}

SumTable sum_recursion(Family family, int n_max, int threads) {
  if (n_max < 0) throw std::invalid_argument("sum_recursion: n_max must be >= 0");
  switch (family) {
    case Family::Circ:
      return circ_sums(n_max, threads);
    case Family::Bullet:
      return bullet_sums(circ_sums(n_max, threads), n_max, threads);
    case Family::Tri: {
      // reversal preserves sums; splits map to the reversed position
      SumTable t = bullet_sums(circ_sums(n_max, threads), n_max, threads);
      t.family = Family::Tri;
      for (int n = 1; n <= n_max; ++n) t.split[n] = n - 1 - t.split[n];
      return t;
    }
  }
  throw std::invalid_argument("sum_recursion: unknown family");
}

SumTable midpoint_recursion(int n_max) {
  if (n_max < 0) throw std::invalid_argument("midpoint_recursion: n_max must be >= 0");
  SumTable t;
  t.family = Family::Circ;
  t.conjecture_accelerated = true;
  t.r.assign(static_cast<size_t>(n_max) + 1, 0.0);
  t.split.assign(static_cast<size_t>(n_max) + 1, -1);
  for (int n = 1; n <= n_max; ++n) {
    const int k = (n - 1) / 2;
    const int kp = n - 1 - k;
    t.r[n] = (t.r[k] + t.r[kp]) + phi(t.r[k], t.r[kp]);
    t.split[n] = k;
  }
  return t;
}

int check_midpoint_gate(const SumTable& midpoint, const SumTable& full_dp, int n_cap,
                        double rel_tol) {
  const int hi = std::min({midpoint.n_max(), full_dp.n_max(), n_cap});
  for (int n = 0; n <= hi; ++n) {
    const double scale = std::max(1.0, std::fabs(full_dp.r[n]));
    if (std::fabs(midpoint.r[n] - full_dp.r[n]) > rel_tol * scale) return n;
  }
  return -1;
}

const Schedule& FamilyStore::schedule(int n) {
  if (n < 0 || n > n_max()) {
    throw RangeError("FamilyStore::schedule: n outside table range");
  }
  auto& slot = cache_[static_cast<size_t>(n)];
  if (slot) return *slot;

  switch (table_.family) {
    case Family::Circ: {
      if (n == 0) {
        slot = Schedule::empty(ScheduleKind::Primitive);
        break;
      }
      const int k = table_.split[n];
      const Schedule& a = schedule(k);
      const Schedule& b = schedule(n - 1 - k);
      slot = con_pp(a, b);
      break;
    }
    case Family::Bullet: {
      if (n == 0) {
        slot = Schedule::empty(ScheduleKind::Dominant);
        break;
      }
      const int k = table_.split[n];
      slot = con_pd(circ_->schedule(k), schedule(n - 1 - k));
      break;
    }
    case Family::Tri: {
      Schedule rev = reverse(bullet_->schedule(n));
      if (n > 0) {
        // consistency with the direct ConGP recursion over the mapped splits
        const int k_pd = bullet_->sums().split[n];
        const int k = n - 1 - k_pd;
        Schedule direct = con_gp(schedule(k), reverse(bullet_->circ_->schedule(k_pd)));
        if (!steps_close(direct.steps(), rev.steps(), 1e-12)) {
          throw std::logic_error("tri_family: ConGP recursion disagrees with reversed bullet at n=" +
                                 std::to_string(n));
        }
      }
      slot = std::move(rev);
      break;
    }
  }
  return *slot;
}

FamilyStore pri_dp(int n_max, int threads) {
  if (n_max < 0) throw std::invalid_argument("pri_dp: n_max must be >= 0");
  FamilyStore fs;
  fs.table_ = circ_sums(n_max, threads);
  fs.cache_.resize(static_cast<size_t>(n_max) + 1);
  return fs;
}

FamilyStore dom_pp(int n_max, int threads) {
  if (n_max < 0) throw std::invalid_argument("dom_pp: n_max must be >= 0");
  FamilyStore fs;
  fs.circ_ = std::make_shared<FamilyStore>(pri_dp(n_max, threads));
  fs.table_ = bullet_sums(fs.circ_->sums(), n_max, threads);
  fs.cache_.resize(static_cast<size_t>(n_max) + 1);
  return fs;
}

FamilyStore tri_family(int n_max, int threads) {
  if (n_max < 0) throw std::invalid_argument("tri_family: n_max must be >= 0");
  FamilyStore fs;
  fs.bullet_ = std::make_shared<FamilyStore>(dom_pp(n_max, threads));
  fs.table_ = fs.bullet_->sums();
  fs.table_.family = Family::Tri;
  for (int n = 1; n <= n_max; ++n) fs.table_.split[n] = n - 1 - fs.bullet_->sums().split[n];
  fs.cache_.resize(static_cast<size_t>(n_max) + 1);
  return fs;
}

}  // namespace stepcat
