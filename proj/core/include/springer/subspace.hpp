#pragma once

#include <vector>

#include <Eigen/Dense>

namespace springer {

/// Numerical thresholds shared by every subspace operation.
///
/// eps_rank decides ranks: a singular value counts as nonzero when it
/// exceeds eps_rank times the largest one. eps_eq decides set relations:
/// two subspaces are equal when their orthogonal projectors are within
/// eps_eq in Frobenius norm.
struct Tolerances {
    double eps_rank = 1e-9;
    double eps_eq = 1e-8;

    /// Throws PreconditionError unless 0 < eps_rank < eps_eq < 1e-2.
    static Tolerances make(double eps_rank, double eps_eq);
};

/// Boolean outcome of a tolerance-aware comparison together with the
/// residual that was compared against the threshold.
struct Comparison {
    bool ok = false;
    double residual = 0.0;

    explicit operator bool() const noexcept { return ok; }
};

/// A linear subspace of C^d held as an orthonormal basis (columns of a
/// d x dim matrix). Construction re-orthonormalizes, so the Gram matrix
/// of a held basis is within 1e-12 of the identity. Value type; cheap to
/// copy at the dimensions this project works at.
class Subspace {
public:
    /// The zero subspace of C^d.
    static Subspace zero(int ambient_dim);

    /// All of C^d.
    static Subspace full(int ambient_dim);

    /// Wraps a matrix whose columns are already orthonormal (checked, and
    /// re-orthonormalized if slightly off). For arbitrary spanning sets
    /// use span().
    static Subspace from_orthonormal(Eigen::MatrixXcd basis);

    int ambient_dim() const noexcept { return static_cast<int>(basis_.rows()); }
    int dim() const noexcept { return static_cast<int>(basis_.cols()); }

    const Eigen::MatrixXcd& basis() const noexcept { return basis_; }

    /// The orthogonal projector onto the subspace (formed on demand).
    Eigen::MatrixXcd projector() const;

private:
    explicit Subspace(Eigen::MatrixXcd basis) : basis_(std::move(basis)) {}

    Eigen::MatrixXcd basis_;
};

/// Orthonormal basis of the column span, with numerical rank decided by
/// tol.eps_rank relative to the largest singular value. All-zero input
/// yields the zero subspace.
Subspace span(const Eigen::MatrixXcd& vectors, const Tolerances& tol);
Subspace span(const std::vector<Eigen::VectorXcd>& vectors, int ambient_dim,
              const Tolerances& tol);

/// Smallest subspace containing both arguments.
Subspace join(const Subspace& a, const Subspace& b, const Tolerances& tol);

/// Equality as sets: equal dimensions and projector distance below
/// tol.eps_eq. The residual is the projector distance ||P_A - P_B||_F.
Comparison equals(const Subspace& a, const Subspace& b, const Tolerances& tol);

/// Containment b <= a. The residual is ||(I - P_a) basis(b)||_F.
Comparison contains(const Subspace& a, const Subspace& b, const Tolerances& tol);

/// a intersect b, via the null space of the stacked complementary
/// projectors.
Subspace intersect(const Subspace& a, const Subspace& b, const Tolerances& tol);

/// Orthogonal complement in the ambient space.
Subspace complement(const Subspace& a);

/// v intersect w-perp for nested w <= v (checked; PreconditionError with
/// the containment residual otherwise). Result has dim v - dim w and is
/// orthogonal to w.
Subspace relative_complement(const Subspace& v, const Subspace& w, const Tolerances& tol);

/// span(M * basis(s)).
Subspace image(const Eigen::MatrixXcd& m, const Subspace& s, const Tolerances& tol);

/// {v : M v in s}, the null space of (I - P_s) M.
/// When expected_dim >= 0 the result dimension is checked against it and a
/// NumericalDegeneracy is thrown on mismatch.
Subspace preimage(const Eigen::MatrixXcd& m, const Subspace& s, const Tolerances& tol,
                  int expected_dim = -1);

/// Null space of m, rank decided by tol.eps_rank.
Subspace null_space(const Eigen::MatrixXcd& m, const Tolerances& tol);

/// Principal angles between the subspaces, ascending, in [0, pi/2].
/// min(dim a, dim b) of them.
std::vector<double> principal_angles(const Subspace& a, const Subspace& b);

} // namespace springer
