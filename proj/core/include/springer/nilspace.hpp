#pragma once

#include <Eigen/Dense>

#include "springer/rng.hpp"
#include "springer/subspace.hpp"

namespace springer {

/// The ambient space C^N (+) C^N with its two-block nilpotent shift z and
/// the collapse map C : E -> C^2.
///
/// Coordinates: e_j sits at index j-1, f_j at index N+j-1 (1-based j). The
/// shift sends e_j to e_{j-1}, f_j to f_{j-1} and kills e_1, f_1; the
/// collapse sends every e_j to the first standard basis vector of C^2 and
/// every f_j to the second. Both matrices have exact 0/1 entries, so the
/// shift is exactly nilpotent: z^N = 0 in double arithmetic with no
/// rounding. All inexactness enters through subspace operations.
class NilpotentSpace {
public:
    explicit NilpotentSpace(int N);

    /// Space sized for flags of length m: N = m + 1, the smallest headroom
    /// that puts ker(z^m) inside im(z), so every subspace a flag
    /// construction produces stays liftable.
    static NilpotentSpace for_flag_length(int m);

    int N() const noexcept { return N_; }
    int ambient_dim() const noexcept { return 2 * N_; }

    const Eigen::MatrixXcd& shift() const noexcept { return shift_; }
    const Eigen::MatrixXcd& collapse_matrix() const noexcept { return collapse_; }

    /// Basis vectors, 1-based.
    Eigen::VectorXcd e(int j) const;
    Eigen::VectorXcd f(int j) const;

    /// ker(z^k) = span(e_1..e_k, f_1..f_k), dimension 2k. k in [0, N].
    Subspace kernel_power(int k) const;

    /// Iterated image z^k(S).
    Subspace shift_pow_image(int k, const Subspace& s, const Tolerances& tol) const;

    /// Iterated preimage z^{-k}(S). When S is stable and contained in
    /// ker(z^{N-k}), the dimension must come out dim S + 2k; a mismatch
    /// throws NumericalDegeneracy.
    Subspace shift_pow_preimage(int k, const Subspace& s, const Tolerances& tol) const;

    /// Iterated preimage of the shift restricted to the subspace r:
    /// each step takes z^{-1}(.) and intersects with r.
    Subspace shift_pow_preimage_within(int k, const Subspace& s, const Subspace& r,
                                       const Tolerances& tol) const;

    /// C applied to a vector: per-family coordinate sums in C^2.
    Eigen::Vector2cd collapse(const Eigen::VectorXcd& v) const;

    /// The unique unit vector u in (z^{-1}W) /\ W-perp with collapse(u)
    /// proportional to target.
    ///
    /// Requires W stable and contained in im(z) (both checked). The 2x2
    /// matrix of the collapse on that fiber complement must be unitary —
    /// that is the isometry statement this laboratory exists to test — and
    /// a deviation beyond tol.eps_eq throws LemmaViolation.
    Eigen::VectorXcd lift_line(const Subspace& w, const Eigen::Vector2cd& target,
                               const Tolerances& tol) const;

    /// zW <= W.
    bool is_stable(const Subspace& w, const Tolerances& tol) const;

    /// Closure of the given vectors under the shift: span of all iterates
    /// z^k v. Always stable.
    Subspace krylov_closure(const std::vector<Eigen::VectorXcd>& vectors,
                            const Tolerances& tol) const;

    /// Random stable subspace: the Krylov closure of `generators` random
    /// vectors, each drawn with a random support height. With require_ker
    /// the kernel of z is joined in; with require_in_im the generators are
    /// drawn inside im(z), which keeps the closure there. The requested
    /// side conditions are verified on the result.
    Subspace random_stable(int generators, bool require_ker, bool require_in_im,
                           RngStream& rng, const Tolerances& tol) const;

private:
    int N_;
    Eigen::MatrixXcd shift_;
    Eigen::MatrixXcd collapse_;
};

} // namespace springer
