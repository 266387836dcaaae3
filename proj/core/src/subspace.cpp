#include "springer/subspace.hpp"

#include <algorithm>
#include <cmath>

#include "springer/errors.hpp"

namespace springer {

namespace {

constexpr double kGramBound = 1e-12;

void require_same_ambient(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw PreconditionError("subspaces live in different ambient spaces");
    }
}

/// Rank of a singular value list. The cutoff is eps_rank relative to the
/// largest singular value, floored at eps_rank itself: all inputs in this
/// project are built from unit-scale orthonormal columns, so a matrix whose
/// largest singular value is far below 1 is zero up to roundoff and must
/// get rank 0 rather than pick up noise directions.
int numerical_rank(const Eigen::VectorXd& sigma, double eps_rank) {
    if (sigma.size() == 0) {
        return 0;
    }
    const double cutoff = eps_rank * std::max(sigma(0), 1.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > cutoff) {
            ++rank;
        }
    }
    return rank;
}

/// Orthonormal basis of the column span of m.
Eigen::MatrixXcd orthonormal_span(const Eigen::MatrixXcd& m, double eps_rank) {
    if (m.cols() == 0) {
        return Eigen::MatrixXcd(m.rows(), 0);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU);
    const int rank = numerical_rank(svd.singularValues(), eps_rank);
    return svd.matrixU().leftCols(rank);
}

/// Orthonormal basis of ker(m).
Eigen::MatrixXcd kernel_basis(const Eigen::MatrixXcd& m, double eps_rank) {
    if (m.rows() == 0) {
        return Eigen::MatrixXcd::Identity(m.cols(), m.cols());
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    const int rank = numerical_rank(svd.singularValues(), eps_rank);
    return svd.matrixV().rightCols(m.cols() - rank);
}

double gram_residual(const Eigen::MatrixXcd& q) {
    if (q.cols() == 0) {
        return 0.0;
    }
    return (q.adjoint() * q - Eigen::MatrixXcd::Identity(q.cols(), q.cols())).norm();
}

} // namespace

Tolerances Tolerances::make(double eps_rank, double eps_eq) {
    if (!(0.0 < eps_rank && eps_rank < eps_eq && eps_eq < 1e-2)) {
        throw PreconditionError("tolerances must satisfy 0 < eps_rank < eps_eq < 1e-2");
    }
    return Tolerances{eps_rank, eps_eq};
}

Subspace Subspace::zero(int ambient_dim) {
    if (ambient_dim <= 0) {
        throw PreconditionError("ambient dimension must be positive");
    }
    return Subspace(Eigen::MatrixXcd(ambient_dim, 0));
}

Subspace Subspace::full(int ambient_dim) {
    if (ambient_dim <= 0) {
        throw PreconditionError("ambient dimension must be positive");
    }
    return Subspace(Eigen::MatrixXcd::Identity(ambient_dim, ambient_dim));
}

Subspace Subspace::from_orthonormal(Eigen::MatrixXcd basis) {
    if (basis.rows() <= 0) {
        throw PreconditionError("ambient dimension must be positive");
    }
    if (basis.cols() > basis.rows()) {
        throw PreconditionError("more basis vectors than ambient dimensions");
    }
    if (gram_residual(basis) > kGramBound) {
        // One Gram-Schmidt pass through Householder QR restores
        // orthonormality without changing the span.
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(basis);
        Eigen::MatrixXcd q = qr.householderQ() *
                             Eigen::MatrixXcd::Identity(basis.rows(), basis.cols());
        const double res = gram_residual(q);
        if (res > kGramBound) {
            throw NumericalDegeneracy("basis cannot be orthonormalized", res);
        }
        return Subspace(std::move(q));
    }
    return Subspace(std::move(basis));
}

Eigen::MatrixXcd Subspace::projector() const {
    return basis_ * basis_.adjoint();
}

Subspace span(const Eigen::MatrixXcd& vectors, const Tolerances& tol) {
    if (vectors.rows() <= 0) {
        throw PreconditionError("ambient dimension must be positive");
    }
    return Subspace::from_orthonormal(orthonormal_span(vectors, tol.eps_rank));
}

Subspace span(const std::vector<Eigen::VectorXcd>& vectors, int ambient_dim,
              const Tolerances& tol) {
    Eigen::MatrixXcd m(ambient_dim, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != ambient_dim) {
            throw PreconditionError("vectors have mixed ambient dimensions");
        }
        m.col(static_cast<Eigen::Index>(i)) = vectors[i];
    }
    return span(m, tol);
}

Subspace join(const Subspace& a, const Subspace& b, const Tolerances& tol) {
    require_same_ambient(a, b);
    Eigen::MatrixXcd m(a.ambient_dim(), a.dim() + b.dim());
    m << a.basis(), b.basis();
    return span(m, tol);
}

Comparison equals(const Subspace& a, const Subspace& b, const Tolerances& tol) {
    require_same_ambient(a, b);
    const double residual = (a.projector() - b.projector()).norm();
    return Comparison{a.dim() == b.dim() && residual < tol.eps_eq, residual};
}

Comparison contains(const Subspace& a, const Subspace& b, const Tolerances& tol) {
    require_same_ambient(a, b);
    if (b.dim() == 0) {
        return Comparison{true, 0.0};
    }
    const Eigen::MatrixXcd rest =
        b.basis() - a.basis() * (a.basis().adjoint() * b.basis());
    const double residual = rest.norm();
    return Comparison{residual < tol.eps_eq, residual};
}

Subspace intersect(const Subspace& a, const Subspace& b, const Tolerances& tol) {
    require_same_ambient(a, b);
    const int d = a.ambient_dim();
    Eigen::MatrixXcd stacked(2 * d, d);
    stacked.topRows(d) = Eigen::MatrixXcd::Identity(d, d) - a.projector();
    stacked.bottomRows(d) = Eigen::MatrixXcd::Identity(d, d) - b.projector();
    return Subspace::from_orthonormal(kernel_basis(stacked, tol.eps_rank));
}

Subspace complement(const Subspace& a) {
    const int d = a.ambient_dim();
    const int k = a.dim();
    if (k == 0) {
        return Subspace::full(d);
    }
    if (k == d) {
        return Subspace::zero(d);
    }
    // The trailing columns of the full Q factor complete the (already
    // orthonormal) basis to a unitary.
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a.basis());
    Eigen::MatrixXcd q = qr.householderQ();
    return Subspace::from_orthonormal(q.rightCols(d - k));
}

Subspace relative_complement(const Subspace& v, const Subspace& w, const Tolerances& tol) {
    require_same_ambient(v, w);
    const Comparison nested = contains(v, w, tol);
    if (!nested.ok) {
        throw PreconditionError("relative complement needs w contained in v",
                                nested.residual);
    }
    // Project v's basis off w; the span of the result is v /\ w-perp.
    const Eigen::MatrixXcd reduced =
        v.basis() - w.basis() * (w.basis().adjoint() * v.basis());
    Subspace out = span(reduced, tol);
    if (out.dim() != v.dim() - w.dim()) {
        throw NumericalDegeneracy("relative complement has unexpected dimension",
                                  static_cast<double>(out.dim()));
    }
    return out;
}

Subspace image(const Eigen::MatrixXcd& m, const Subspace& s, const Tolerances& tol) {
    if (m.cols() != s.ambient_dim()) {
        throw PreconditionError("operator shape does not match subspace ambient");
    }
    if (s.dim() == 0) {
        return Subspace::zero(static_cast<int>(m.rows()));
    }
    return span(m * s.basis(), tol);
}

Subspace preimage(const Eigen::MatrixXcd& m, const Subspace& s, const Tolerances& tol,
                  int expected_dim) {
    if (m.rows() != s.ambient_dim()) {
        throw PreconditionError("operator shape does not match subspace ambient");
    }
    const Eigen::MatrixXcd reduced = m - s.basis() * (s.basis().adjoint() * m);
    Subspace out = Subspace::from_orthonormal(kernel_basis(reduced, tol.eps_rank));
    if (expected_dim >= 0 && out.dim() != expected_dim) {
        throw NumericalDegeneracy("preimage has unexpected dimension",
                                  static_cast<double>(out.dim() - expected_dim));
    }
    return out;
}

Subspace null_space(const Eigen::MatrixXcd& m, const Tolerances& tol) {
    return Subspace::from_orthonormal(kernel_basis(m, tol.eps_rank));
}

std::vector<double> principal_angles(const Subspace& a, const Subspace& b) {
    require_same_ambient(a, b);
    const int k = std::min(a.dim(), b.dim());
    if (k == 0) {
        return {};
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a.basis().adjoint() * b.basis());
    const auto& sigma = svd.singularValues();
    std::vector<double> angles;
    angles.reserve(k);
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        angles.push_back(std::acos(std::clamp(sigma(i), 0.0, 1.0)));
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

} // namespace springer
