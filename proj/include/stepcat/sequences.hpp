#ifndef STEPCAT_SEQUENCES_HPP
#define STEPCAT_SEQUENCES_HPP

#include <optional>

#include "stepcat/schedule.hpp"

namespace stepcat {

enum class DynamicVariant { PP, GP };

/// Anytime stepsize sequence grown by repeatedly concatenating a fixed
/// primitive block: h^(k) = ConPP(h^(k-1), block) or ConGP(h^(k-1), block).
/// Incremental state is exactly (running sum, block); the emitted schedule
/// after k blocks has length n_k = n_0 + k*(m+1), m = block length.
class DynamicSequence {
 public:
  /// PP: base and block Primitive. GP: base GBounded, block Primitive.
  DynamicSequence(DynamicVariant variant, const Schedule& base, const Schedule& block);

  /// Appends one joint step and one copy of the block.
  void append_block();

  DynamicVariant variant() const { return variant_; }
  int completed_blocks() const { return blocks_; }
  int block_length() const { return static_cast<int>(block_.steps().size()); }
  const Schedule& emitted() const { return emitted_; }
  double emitted_sum() const { return sum_; }

  /// 1/(2*sum + 1): objective constant (PP) or gradient constant (GP) at the
  /// current prefix length.
  double bound_constant() const { return 1.0 / (2.0 * sum_ + 1.0); }

 private:
  DynamicVariant variant_;
  Schedule block_;
  Schedule emitted_;
  double sum_ = 0.0;
  double block_sum_ = 0.0;
  int blocks_ = 0;
};

/// Runs `blocks` ConPP concatenations of `block` onto `base`.
DynamicSequence dynamic_pp(const Schedule& base, const Schedule& block, int blocks);

/// Runs `blocks` ConGP concatenations of `block` onto `base`.
DynamicSequence dynamic_gp(const Schedule& base, const Schedule& block, int blocks);

/// The Teboulle-Vaisbourd dynamic sequence: the empty-base, empty-block
/// special case of the PP concatenation, extending one step at a time with
/// h = phi(S, 0) = (-S + sqrt(S^2 + 8S + 8))/2 where S is the running sum.
/// Tagged Primitive.
Schedule teboulle_vaisbourd(int n);

/// The Rotaru dynamic sequence: the empty-base, empty-block special case of
/// the GP concatenation, h_0 = 3/2 and h_next = psi(0, S). Tagged GBounded.
Schedule rotaru(int n);

/// Silver schedule of length 2^level - 1: level-fold ConPP self-doubling of
/// the empty schedule. Palindromic; 1'h + 1 = (2^level)^rho.
Schedule silver(int level);

/// Dominant schedule of length 2^level - 1 from the halving recursion
/// h^(2^l-1) = ConPD(silver(l-1), h^(2^(l-1)-1)), h^(0) = [].
Schedule grimmer_recursion(int level);

/// Objective constant of grimmer_recursion at iteration count n, available
/// only when n = 2^l - 1 (no construction exists elsewhere).
std::optional<double> grimmer_bound(int n);

}  // namespace stepcat

#endif  // STEPCAT_SEQUENCES_HPP
