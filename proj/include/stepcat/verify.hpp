#ifndef STEPCAT_VERIFY_HPP
#define STEPCAT_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace stepcat {

/// One verification check with its achieved value, the target it is compared
/// against, and the tolerance of the comparison.
struct CheckResult {
  std::string name;
  double achieved = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool all_pass() const;
};

/// Huber-equality sweeps: every schedule in the three DP families with
/// n <= n_max, plus Teboulle-Vaisbourd / silver / grimmer prefixes
/// (objective) and Rotaru prefixes (gradient).
SuiteReport verify_tightness(int n_max, int threads = 1);

/// phi/psi range lemmas and quadratic-root residuals over random samples;
/// certificate identities for every dominant-family construction with
/// n <= cert_n_max; reversal and concatenation symmetry identities.
SuiteReport verify_identities(int samples, int cert_n_max, std::uint64_t seed = 0x5eedu);

/// Sum-table sandwiches, the silver identity, strict monotonicity, the
/// non-uniqueness identity at n = 5, and the midpoint-conjecture gate.
SuiteReport verify_bounds(int n_max, int threads = 1);

/// Appendix product-bound and iff-lemma property suites plus directed
/// boundary cases.
SuiteReport verify_appendix(int samples, std::uint64_t seed = 0x5eedu);

std::vector<SuiteReport> verify_all(int n_max, int samples, std::uint64_t seed = 0x5eedu,
                                    int threads = 1);

nlohmann::ordered_json report_to_json(const std::vector<SuiteReport>& reports);

}  // namespace stepcat

#endif  // STEPCAT_VERIFY_HPP
