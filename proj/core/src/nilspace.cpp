#include "springer/nilspace.hpp"

#include <cmath>

#include "springer/errors.hpp"

namespace springer {

NilpotentSpace::NilpotentSpace(int N) : N_(N) {
    if (N < 1) {
        throw PreconditionError("N must be positive");
    }
    const int d = 2 * N;
    shift_ = Eigen::MatrixXcd::Zero(d, d);
    for (int j = 2; j <= N; ++j) {
        shift_(j - 2, j - 1) = 1.0;         // e_j -> e_{j-1}
        shift_(N + j - 2, N + j - 1) = 1.0; // f_j -> f_{j-1}
    }
    collapse_ = Eigen::MatrixXcd::Zero(2, d);
    for (int j = 1; j <= N; ++j) {
        collapse_(0, j - 1) = 1.0;
        collapse_(1, N + j - 1) = 1.0;
    }
}

NilpotentSpace NilpotentSpace::for_flag_length(int m) {
    if (m < 1) {
        throw PreconditionError("flag length must be positive");
    }
    return NilpotentSpace(m + 1);
}

Eigen::VectorXcd NilpotentSpace::e(int j) const {
    if (j < 1 || j > N_) {
        throw PreconditionError("basis index outside 1..N");
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(ambient_dim());
    v(j - 1) = 1.0;
    return v;
}

Eigen::VectorXcd NilpotentSpace::f(int j) const {
    if (j < 1 || j > N_) {
        throw PreconditionError("basis index outside 1..N");
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(ambient_dim());
    v(N_ + j - 1) = 1.0;
    return v;
}

Subspace NilpotentSpace::kernel_power(int k) const {
    if (k < 0 || k > N_) {
        throw PreconditionError("kernel power outside 0..N");
    }
    Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(ambient_dim(), 2 * k);
    for (int j = 1; j <= k; ++j) {
        basis(j - 1, j - 1) = 1.0;
        basis(N_ + j - 1, k + j - 1) = 1.0;
    }
    return Subspace::from_orthonormal(std::move(basis));
}

Subspace NilpotentSpace::shift_pow_image(int k, const Subspace& s,
                                         const Tolerances& tol) const {
    if (k < 0) {
        throw PreconditionError("shift power must be nonnegative");
    }
    Subspace out = s;
    for (int step = 0; step < k; ++step) {
        out = image(shift_, out, tol);
    }
    return out;
}

Subspace NilpotentSpace::shift_pow_preimage(int k, const Subspace& s,
                                            const Tolerances& tol) const {
    if (k < 0) {
        throw PreconditionError("shift power must be nonnegative");
    }
    const bool armed = k <= N_ && is_stable(s, tol) &&
                       contains(kernel_power(N_ - k), s, tol).ok;
    Subspace out = s;
    for (int step = 0; step < k; ++step) {
        out = preimage(shift_, out, tol);
    }
    if (armed && out.dim() != s.dim() + 2 * k) {
        throw NumericalDegeneracy("iterated shift preimage lost dimensions",
                                  static_cast<double>(out.dim() - s.dim() - 2 * k));
    }
    return out;
}

Subspace NilpotentSpace::shift_pow_preimage_within(int k, const Subspace& s,
                                                   const Subspace& r,
                                                   const Tolerances& tol) const {
    if (k < 0) {
        throw PreconditionError("shift power must be nonnegative");
    }
    Subspace out = s;
    for (int step = 0; step < k; ++step) {
        out = intersect(preimage(shift_, out, tol), r, tol);
    }
    return out;
}

Eigen::Vector2cd NilpotentSpace::collapse(const Eigen::VectorXcd& v) const {
    if (v.size() != ambient_dim()) {
        throw PreconditionError("vector has wrong ambient dimension");
    }
    return collapse_ * v;
}

Eigen::VectorXcd NilpotentSpace::lift_line(const Subspace& w,
                                           const Eigen::Vector2cd& target,
                                           const Tolerances& tol) const {
    if (w.ambient_dim() != ambient_dim()) {
        throw PreconditionError("subspace has wrong ambient dimension");
    }
    if (!is_stable(w, tol)) {
        throw PreconditionError("lift requires a stable subspace");
    }
    const Comparison in_image = contains(kernel_power(N_ - 1), w, tol);
    if (!in_image.ok) {
        throw PreconditionError("lift requires the subspace inside im(z)",
                                in_image.residual);
    }

    const Subspace fiber = intersect(preimage(shift_, w, tol), complement(w), tol);
    if (fiber.dim() != 2) {
        throw NumericalDegeneracy("fiber complement is not two-dimensional",
                                  static_cast<double>(fiber.dim()));
    }
    const Eigen::Matrix2cd on_fiber = collapse_ * fiber.basis();
    const double unitary_residual =
        (on_fiber.adjoint() * on_fiber - Eigen::Matrix2cd::Identity()).norm();
    if (unitary_residual >= tol.eps_eq) {
        throw LemmaViolation("collapse is not unitary on the fiber complement",
                             unitary_residual);
    }
    Eigen::VectorXcd u = fiber.basis() * (on_fiber.inverse() * target);
    const double norm = u.norm();
    if (norm < tol.eps_rank) {
        throw NumericalDegeneracy("lifted vector vanished", norm);
    }
    return u / norm;
}

bool NilpotentSpace::is_stable(const Subspace& w, const Tolerances& tol) const {
    return contains(w, image(shift_, w, tol), tol).ok;
}

Subspace NilpotentSpace::krylov_closure(const std::vector<Eigen::VectorXcd>& vectors,
                                        const Tolerances& tol) const {
    (void)tol;
    // Breadth-first orthogonalized closure. Raw iterate matrices {v, zv,
    // z^2 v, ...} can be arbitrarily ill-conditioned, which makes an SVD
    // span drop directions and break stability. Instead, orthogonalize one
    // vector at a time (twice, so directions of tiny residuals stay
    // accurate) and enqueue the shift image of every accepted direction.
    // A dropped residual of size eta leaves a stability defect of at most
    // eta, and an accepted one leaves a second-order defect, so the result
    // is stable to near machine accuracy whatever the conditioning.
    constexpr double kDependence = 1e-12;
    const int d = ambient_dim();
    Eigen::MatrixXcd q(d, 0);
    std::vector<Eigen::VectorXcd> queue;
    for (const auto& v : vectors) {
        if (v.size() != d) {
            throw PreconditionError("vector has wrong ambient dimension");
        }
        queue.push_back(v);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Eigen::VectorXcd u = queue[head];
        const double scale = u.norm();
        if (scale < 1e-150) {
            continue;
        }
        u /= scale;
        if (q.cols() > 0) {
            u -= q * (q.adjoint() * u);
            u -= q * (q.adjoint() * u);
        }
        const double residual = u.norm();
        if (residual > kDependence) {
            q.conservativeResize(Eigen::NoChange, q.cols() + 1);
            q.col(q.cols() - 1) = u / residual;
            queue.push_back(shift_ * q.col(q.cols() - 1));
        }
    }
    return Subspace::from_orthonormal(std::move(q));
}

Subspace NilpotentSpace::random_stable(int generators, bool require_ker,
                                       bool require_in_im, RngStream& rng,
                                       const Tolerances& tol) const {
    if (generators < 1) {
        throw PreconditionError("need at least one generator");
    }
    std::vector<Eigen::VectorXcd> vectors;
    for (int g = 0; g < generators; ++g) {
        const int max_height = require_in_im ? N_ - 1 : N_;
        // Random support height varies the closure dimension across draws.
        const int height =
            max_height >= 1 ? 1 + static_cast<int>(rng.below(max_height)) : 0;
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(ambient_dim());
        for (int j = 1; j <= height; ++j) {
            v(j - 1) = rng.cgaussian();
            v(N_ + j - 1) = rng.cgaussian();
        }
        if (height >= 1) {
            vectors.push_back(std::move(v));
        }
    }
    if (require_ker) {
        vectors.push_back(e(1));
        vectors.push_back(f(1));
    }
    Subspace out = krylov_closure(vectors, tol);

    if (!is_stable(out, tol)) {
        throw NumericalDegeneracy("random stable subspace is not stable", 0.0);
    }
    if (require_ker && !contains(out, kernel_power(1), tol).ok) {
        throw NumericalDegeneracy("random stable subspace misses ker(z)", 0.0);
    }
    if (require_in_im && !contains(kernel_power(N_ - 1), out, tol).ok) {
        throw NumericalDegeneracy("random stable subspace leaves im(z)", 0.0);
    }
    return out;
}

} // namespace springer
