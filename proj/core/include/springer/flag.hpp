#pragma once

#include <vector>

#include "springer/diagnostics.hpp"
#include "springer/matching.hpp"
#include "springer/nilspace.hpp"
#include "springer/rng.hpp"
#include "springer/subspace.hpp"

namespace springer {

/// A candidate point of the variety of shift-stable partial flags: a
/// nested chain L_1 < ... < L_m with dim L_j = j and z L_j <= L_{j-1}
/// (L_0 the zero subspace). Flags are immutable values; membership is
/// checked by the predicates below, never assumed.
struct Flag {
    NilpotentSpace space;
    std::vector<Subspace> levels; // L_1 .. L_m

    int length() const noexcept { return static_cast<int>(levels.size()); }

    /// L_j, 1-based; j = 0 gives the zero subspace.
    Subspace level(int j) const;
};

/// Which realization of the shift the component conditions use: the full
/// ambient shift, or the shift restricted to ker(z^n) (preimages are
/// intersected with ker(z^n) at every step).
enum class ShiftVariant { Full, Restricted };

/// Membership in the stable-flag variety: dimensions, nesting, and the
/// strengthened stability z L_j <= L_{j-1}. Reports the first violated
/// condition and the worst residual.
FlagCheck in_flag_variety(const Flag& flag, const Tolerances& tol);

/// Membership in the two-equal-blocks fiber: stable-flag membership plus
/// L_{2n} = ker(z^n). Flag length must be 2n.
FlagCheck in_springer_fiber(const Flag& flag, int n, const Tolerances& tol);

/// The cup conditions of the component indexed by the matching: for every
/// left endpoint j, L at the cup's right end equals the half-width-fold
/// shift preimage of L_{j-1}. Per-cup residuals are reported.
ComponentCheck in_component(const Flag& flag, const Matching& a, ShiftVariant variant,
                            const Tolerances& tol);

/// Membership in the antipodal-pair locus at i: L_{i+1} = z^{-1}(L_{i-1}).
Comparison in_contraction_locus(const Flag& flag, int i, const Tolerances& tol);

/// Random flag of length m with a free fiber choice at every step. Needs
/// space.N() >= m + 1.
Flag sample_flag_variety(const NilpotentSpace& space, int m, RngStream& rng,
                         const Tolerances& tol);

/// Random point of the component indexed by the matching, built left to
/// right: a fresh line choice at each left endpoint, the forced shift
/// preimage at each right endpoint. Nesting at forced steps is asserted at
/// run time (it is a consequence of the theory, not an input assumption),
/// and full membership is verified before returning.
Flag sample_component(const NilpotentSpace& space, const Matching& a, RngStream& rng,
                      const Tolerances& tol);

/// Random point of the locus L_{i+1} = z^{-1}(L_{i-1}) inside flags of
/// length m: free choices everywhere except the forced step i+1.
Flag sample_contraction_locus(const NilpotentSpace& space, int m, int i, RngStream& rng,
                              const Tolerances& tol);

/// The contraction to length m-2: (L_1, ..., L_{i-1}, zL_{i+2}, ..., zL_m).
/// Requires membership in the contraction locus at i (PreconditionError
/// with the residual otherwise); the result is verified to be a stable
/// flag.
Flag contract(const Flag& flag, int i, const Tolerances& tol);

/// Random element of the contraction fiber over `base`: copies L_j below i,
/// picks the free line at i, and rebuilds the upper levels as full shift
/// preimages, which the dimension count makes unique. Asserts that
/// contracting the result returns `base`.
Flag sample_contraction_fiber(const Flag& base, int i, RngStream& rng,
                              const Tolerances& tol);

/// Largest equality residual between corresponding levels (flags must have
/// equal length and ambient).
double flag_distance(const Flag& a, const Flag& b, const Tolerances& tol);

} // namespace springer
