#pragma once

// Image/null chains, tail-space stabilization of orbit families, block
// removals, direct sums and the reordering obstruction. Positions (N, ell,
// swap indices) are 1-based frame positions.

#include <vector>

#include "orbitframe/error.hpp"
#include "orbitframe/representability.hpp"

namespace orbitframe {

/// Two subspaces are equal when their dimensions match and the largest
/// principal angle is at most this many radians.
inline constexpr double kSubspaceAngleTol = 1e-7;

struct ChainReport {
  std::vector<Index> image_ranks;  // rank(T^k), k = 0..q_T
  Index q_t = 0;
  std::vector<Index> null_dims;  // dim N(T^k), k = 0..null_length
  Index null_length = 0;
};

/// Raised by chain_report when max_k is reached first; carries the ranks
/// computed so far.
class NoStabilization : public Error {
 public:
  NoStabilization(ChainReport partial, const std::string& what)
      : Error(ErrorKind::kNoStabilization, what), partial_(std::move(partial)) {}
  const ChainReport& partial() const { return partial_; }

 private:
  ChainReport partial_;
};

/// Image chain via re-orthogonalized range bases R_{k+1} = range(T R_k); null
/// chain independently via K_{k+1} = {x : T x in K_k}. Both use the rank
/// threshold rank_rtol * ||T||. Requires q_T <= max_k.
ChainReport chain_report(const Matrix& t, const Tolerance& tol = {}, Index max_k = 64);

struct FrameBoundsPair {
  double a = 0.0;
  double b = 0.0;
};

struct TailSpaceReport {
  Index start_index_n = 0;
  Index v_dim = 0;
  Index codim = 0;
  std::vector<FrameBoundsPair> per_shift_frame_bounds;  // ell = 0..L
  bool stable = false;
  Matrix v_basis;  // orthonormal basis of V = span{f_k : k > N}
};

/// Checks that {f_k : k > N + ell} spans the same space V = span{f_k : k > N}
/// for ell = 0..L, with a positive lower frame bound relative to V. F must be
/// the orbit of T (InvalidInput otherwise); InsufficientTruncation when
/// size(F) < N + L + dim.
TailSpaceReport tail_space_report(const VectorFamily& f, const Matrix& t, Index n, Index l,
                                  const Tolerance& tol = {});

/// Smallest N in 0..max_n whose tail space report is stable, or -1.
Index tail_stabilization_index(const VectorFamily& f, const Matrix& t, Index l, Index max_n,
                               const Tolerance& tol = {});

/// Frame report of F with {f_{N+1}, ..., f_{N+ell-1}} removed.
FrameReport block_removal_check(const VectorFamily& f, Index n, Index ell, const Tolerance& tol = {});

/// {e_1, ..., e_m, h_1, h_2, ...} in the orthogonal sum of span(E) and the
/// space of H. E must be linearly independent.
VectorFamily direct_sum_construct(const VectorFamily& e, const VectorFamily& h, const Tolerance& tol = {});

/// The tail-orbit operator of a direct sum: shifts e_k to e_{k+1}, maps e_m
/// to h_1 and acts as `h_operator` on the second block.
Matrix direct_sum_operator(const VectorFamily& e, const VectorFamily& h, const Matrix& h_operator,
                           const Tolerance& tol = {});

struct SwapOutcome {
  bool span_condition_holds = false;
  VectorFamily swapped;
  RepresentabilityVerdict verdict;
};

/// Interchanges f_ell and f_ell', recomputes the canonical dual and judges the
/// result. The span hypothesis span{f_k : k not in {ell-1, ell, ell'-1, ell'}}
/// = C^dim is evaluated by rank and reported; when it fails the verdict is
/// still returned (the basis block of a direct sum is the standard case).
/// Throws InvalidInput when ell == ell' or F is not representable.
SwapOutcome swap_experiment(const VectorFamily& f, Index ell, Index ell_prime, const Tolerance& tol = {});

struct TailMapProperties {
  bool invariant = false;
  bool surjective = false;  // V* T V has full rank (onto V)
  bool injective = false;   // T V has full column rank
};

TailMapProperties surjectivity_injectivity_on_tail(const Matrix& t, const Matrix& v_basis,
                                                   const Tolerance& tol = {});

}  // namespace orbitframe
