#pragma once

#include <vector>

#include <Eigen/Dense>

#include "springer/diagnostics.hpp"
#include "springer/flag.hpp"
#include "springer/matching.hpp"
#include "springer/rng.hpp"
#include "springer/subspace.hpp"

namespace springer {

/// A point of the projective line: a unit vector in C^2 carried with an
/// arbitrary phase. Every comparison is phase-invariant, so no canonical
/// phase is ever chosen.
class Line {
public:
    /// Normalizes; throws PreconditionError on a (near-)zero vector.
    explicit Line(Eigen::Vector2cd rep);

    const Eigen::Vector2cd& rep() const noexcept { return rep_; }

private:
    Eigen::Vector2cd rep_;
};

using LineTuple = std::vector<Line>;

/// The antipode: the unique line orthogonal to l. For rep (a, b) the
/// representative is (-conj(b), conj(a)).
Line perp(const Line& l);

/// Phase-invariant distance sqrt(1 - |<u, v>|^2) in [0, 1].
double line_residual(const Line& a, const Line& b);

/// Equality of lines under the phase-invariant residual.
Comparison line_eq(const Line& a, const Line& b, const Tolerances& tol);

/// Uniformly random line (normalized complex Gaussian pair).
Line random_line(RngStream& rng);
LineTuple random_tuple(int m, RngStream& rng);

/// The involution applying the antipode at even positions (1-based) and
/// the identity at odd ones.
LineTuple alternate_antipode(const LineTuple& t);

/// Matched-coordinate membership: l at each right endpoint equals l at the
/// cup's left endpoint.
ComponentCheck in_matched_set(const LineTuple& t, const Matching& a, const Tolerances& tol);

/// Antipodal-coordinate membership: l at each right endpoint equals the
/// antipode of l at the left endpoint.
ComponentCheck in_antipodal_set(const LineTuple& t, const Matching& a, const Tolerances& tol);

LineTuple sample_matched_set(const Matching& a, RngStream& rng);
LineTuple sample_antipodal_set(const Matching& a, RngStream& rng);

/// Membership in the antipodal-pair locus at i: l_{i+1} = antipode(l_i).
Comparison in_antipodal_locus(const LineTuple& t, int i, const Tolerances& tol);

/// Forgetful map dropping positions i and i+1 (1-based).
LineTuple drop_pair(const LineTuple& t, int i);

/// drop_pair with the antipodal-pair precondition enforced
/// (PreconditionError with the residual otherwise).
LineTuple contract_tuple(const LineTuple& t, int i, const Tolerances& tol);

/// The flag-to-lines correspondence: l_j is the collapse of the relative
/// complement of L_{j-1} in L_j. Needs space.N() >= m + 1. The collapse
/// preserves the unit norm of the complement vector; a deviation beyond
/// tol.eps_eq throws LemmaViolation.
LineTuple flag_to_lines(const Flag& flag, const Tolerances& tol);

/// The explicit inverse: grow the flag one lifted line at a time. Needs
/// t.size() <= space.N() - 1. The result is a stable flag by construction
/// of the lift; flag_to_lines of it reproduces t.
Flag lines_to_flag(const LineTuple& t, const NilpotentSpace& space, const Tolerances& tol);

/// Largest componentwise line residual (tuples must have equal length).
double tuple_distance(const LineTuple& a, const LineTuple& b);

} // namespace springer
