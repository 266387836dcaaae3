#pragma once

// Shared helpers for the test suites. Everything here is deliberately
// independent of the library internals it is used to check.

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "springer/flag.hpp"
#include "springer/rng.hpp"
#include "springer/subspace.hpp"

namespace test_support {

/// All perfect pairings of {1..2n}, by always pairing the smallest free
/// point with every other free point. Independent of the library's
/// enumeration.
inline std::vector<std::vector<std::pair<int, int>>> all_pairings(int n) {
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<int> free_points;
    for (int i = 1; i <= 2 * n; ++i) {
        free_points.push_back(i);
    }
    std::vector<std::pair<int, int>> current;
    auto recurse = [&](auto&& self) -> void {
        if (free_points.empty()) {
            out.push_back(current);
            return;
        }
        const int first = free_points.front();
        for (std::size_t k = 1; k < free_points.size(); ++k) {
            const int second = free_points[k];
            std::vector<int> rest;
            for (std::size_t j = 1; j < free_points.size(); ++j) {
                if (j != k) {
                    rest.push_back(free_points[j]);
                }
            }
            current.emplace_back(first, second);
            std::swap(free_points, rest);
            self(self);
            std::swap(free_points, rest);
            current.pop_back();
        }
    };
    recurse(recurse);
    return out;
}

inline bool has_crossing(const std::vector<std::pair<int, int>>& pairs) {
    for (const auto& [i, k] : pairs) {
        for (const auto& [j, l] : pairs) {
            if (i < j && j < k && k < l) {
                return true;
            }
        }
    }
    return false;
}

/// Random unitary d x d matrix (QR of a complex Gaussian sample).
inline Eigen::MatrixXcd random_unitary(int d, springer::RngStream& rng) {
    Eigen::MatrixXcd g(d, d);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            g(r, c) = rng.cgaussian();
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    return qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
}

/// Random subspace of the given dimension (span of Gaussian columns).
inline springer::Subspace random_subspace(int ambient, int dim, springer::RngStream& rng,
                                          const springer::Tolerances& tol) {
    Eigen::MatrixXcd g(ambient, dim);
    for (int r = 0; r < ambient; ++r) {
        for (int c = 0; c < dim; ++c) {
            g(r, c) = rng.cgaussian();
        }
    }
    return springer::span(g, tol);
}

/// Copy of the flag with level j (1-based) perturbed by delta in a random
/// direction and re-orthonormalized.
inline springer::Flag perturb_level(const springer::Flag& flag, int j, double delta,
                                    springer::RngStream& rng,
                                    const springer::Tolerances& tol) {
    springer::Flag out = flag;
    const springer::Subspace& level = flag.levels[j - 1];
    Eigen::MatrixXcd basis = level.basis();
    for (int r = 0; r < basis.rows(); ++r) {
        for (int c = 0; c < basis.cols(); ++c) {
            basis(r, c) += delta * rng.cgaussian();
        }
    }
    out.levels[j - 1] = springer::span(basis, tol);
    return out;
}

} // namespace test_support
