#include "springer/sphere.hpp"

#include <algorithm>
#include <cmath>

#include "springer/errors.hpp"

namespace springer {

Line::Line(Eigen::Vector2cd rep) : rep_(std::move(rep)) {
    const double norm = rep_.norm();
    if (norm < 1e-12) {
        throw PreconditionError("line representative is numerically zero", norm);
    }
    rep_ /= norm;
}

Line perp(const Line& l) {
    Eigen::Vector2cd v;
    v << -std::conj(l.rep()(1)), std::conj(l.rep()(0));
    return Line(v);
}

double line_residual(const Line& a, const Line& b) {
    // sqrt(1 - |<u,v>|^2) for unit vectors, computed as the wedge
    // |u0 v1 - u1 v0| (Lagrange identity). The direct form loses to
    // cancellation near zero: equal lines would bottom out around 1e-8
    // instead of machine epsilon.
    const auto& u = a.rep();
    const auto& v = b.rep();
    return std::abs(u(0) * v(1) - u(1) * v(0));
}

Comparison line_eq(const Line& a, const Line& b, const Tolerances& tol) {
    const double residual = line_residual(a, b);
    return Comparison{residual < tol.eps_eq, residual};
}

Line random_line(RngStream& rng) {
    Eigen::Vector2cd v;
    v << rng.cgaussian(), rng.cgaussian();
    return Line(v);
}

LineTuple random_tuple(int m, RngStream& rng) {
    LineTuple t;
    t.reserve(m);
    for (int j = 0; j < m; ++j) {
        t.push_back(random_line(rng));
    }
    return t;
}

LineTuple alternate_antipode(const LineTuple& t) {
    LineTuple out;
    out.reserve(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) {
        const bool even_position = (j + 1) % 2 == 0;
        out.push_back(even_position ? perp(t[j]) : t[j]);
    }
    return out;
}

namespace {

ComponentCheck cup_membership(const LineTuple& t, const Matching& a, bool antipodal,
                              const Tolerances& tol) {
    if (static_cast<int>(t.size()) != a.points()) {
        throw PreconditionError("tuple length does not match the matching");
    }
    ComponentCheck out;
    out.ok = true;
    for (int j : a.left_endpoints()) {
        const int right = a.right_end(j);
        const Line expected = antipodal ? perp(t[j - 1]) : t[j - 1];
        const Comparison cup = line_eq(t[right - 1], expected, tol);
        out.cups.push_back(CupResidual{j, right, cup.residual});
        out.worst_residual = std::max(out.worst_residual, cup.residual);
        if (!cup.ok) {
            out.ok = false;
        }
    }
    return out;
}

LineTuple cup_sample(const Matching& a, bool antipodal, RngStream& rng) {
    LineTuple t(static_cast<std::size_t>(a.points()), Line(Eigen::Vector2cd(1.0, 0.0)));
    for (int j : a.left_endpoints()) {
        const Line l = random_line(rng);
        t[j - 1] = l;
        t[a.right_end(j) - 1] = antipodal ? perp(l) : l;
    }
    return t;
}

} // namespace

ComponentCheck in_matched_set(const LineTuple& t, const Matching& a, const Tolerances& tol) {
    return cup_membership(t, a, false, tol);
}

ComponentCheck in_antipodal_set(const LineTuple& t, const Matching& a,
                                const Tolerances& tol) {
    return cup_membership(t, a, true, tol);
}

LineTuple sample_matched_set(const Matching& a, RngStream& rng) {
    return cup_sample(a, false, rng);
}

LineTuple sample_antipodal_set(const Matching& a, RngStream& rng) {
    return cup_sample(a, true, rng);
}

Comparison in_antipodal_locus(const LineTuple& t, int i, const Tolerances& tol) {
    const int m = static_cast<int>(t.size());
    if (i < 1 || i > m - 1) {
        throw PreconditionError("index must lie in 1..m-1");
    }
    return line_eq(t[i], perp(t[i - 1]), tol);
}

LineTuple drop_pair(const LineTuple& t, int i) {
    const int m = static_cast<int>(t.size());
    if (i < 1 || i > m - 1) {
        throw PreconditionError("index must lie in 1..m-1");
    }
    LineTuple out;
    out.reserve(m - 2);
    for (int j = 1; j <= m; ++j) {
        if (j != i && j != i + 1) {
            out.push_back(t[j - 1]);
        }
    }
    return out;
}

LineTuple contract_tuple(const LineTuple& t, int i, const Tolerances& tol) {
    const Comparison member = in_antipodal_locus(t, i, tol);
    if (!member.ok) {
        throw PreconditionError("tuple is not in the antipodal-pair locus",
                                member.residual);
    }
    return drop_pair(t, i);
}

LineTuple flag_to_lines(const Flag& flag, const Tolerances& tol) {
    const int m = flag.length();
    if (flag.space.N() < m + 1) {
        throw PreconditionError("space too small: need N >= flag length + 1");
    }
    LineTuple out;
    out.reserve(m);
    for (int j = 1; j <= m; ++j) {
        const Subspace step = relative_complement(flag.level(j), flag.level(j - 1), tol);
        if (step.dim() != 1) {
            throw NumericalDegeneracy("flag step is not a line",
                                      static_cast<double>(step.dim()));
        }
        const Eigen::VectorXcd v = step.basis().col(0);
        const Eigen::Vector2cd c = flag.space.collapse(v);
        const double norm_drift = std::abs(c.norm() - 1.0);
        if (norm_drift >= tol.eps_eq) {
            throw LemmaViolation("collapse changed the norm of a flag step", norm_drift);
        }
        out.push_back(Line(c));
    }
    return out;
}

Flag lines_to_flag(const LineTuple& t, const NilpotentSpace& space, const Tolerances& tol) {
    const int m = static_cast<int>(t.size());
    if (m > space.N() - 1) {
        throw PreconditionError("space too small: need N >= tuple length + 1");
    }
    Flag flag{space, {}};
    flag.levels.reserve(m);
    Subspace cur = Subspace::zero(space.ambient_dim());
    for (int j = 1; j <= m; ++j) {
        const Eigen::VectorXcd u = space.lift_line(cur, t[j - 1].rep(), tol);
        Eigen::MatrixXcd basis(space.ambient_dim(), cur.dim() + 1);
        basis << cur.basis(), u;
        cur = Subspace::from_orthonormal(std::move(basis));
        flag.levels.push_back(cur);
    }
    return flag;
}

double tuple_distance(const LineTuple& a, const LineTuple& b) {
    if (a.size() != b.size()) {
        throw PreconditionError("tuples have different lengths");
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        worst = std::max(worst, line_residual(a[j], b[j]));
    }
    return worst;
}

} // namespace springer
