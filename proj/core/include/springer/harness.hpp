#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "springer/flag.hpp"
#include "springer/matching.hpp"
#include "springer/nilspace.hpp"
#include "springer/rng.hpp"
#include "springer/sphere.hpp"
#include "springer/subspace.hpp"

namespace springer {

/// Parameters of one verification run. The seed fixes every random draw:
/// trial k of a check named c reads from RngStream(seed, c, k), so results
/// do not depend on execution order or thread count.
struct CheckConfig {
    int n = 2;
    int trials = 100;
    Tolerances tol;
    std::uint64_t seed = 0;
    int threads = 1;

    /// Throws PreconditionError unless 1 <= n <= 5, trials >= 1,
    /// threads >= 1 and the tolerances are valid.
    void validate() const;
};

/// Outcome of one lemma check over all its trials.
struct CheckResult {
    std::string name;
    int trials = 0;
    int failures = 0;
    double max_residual = 0.0;
    std::string notes;

    bool pass() const noexcept { return failures == 0; }
};

struct Report {
    CheckConfig config;
    std::vector<CheckResult> checks;
    bool overall = false;
    std::string version;
    std::string rng_derivation;
    std::string timestamp;
};

/// Single-trial residual computations. The check functions below aggregate
/// these; the acceptance suite calls them directly where it needs separate
/// maxima per residual family.
namespace trial {

struct TwoWay {
    double forward = 0.0;
    double backward = 0.0;

    double max() const noexcept { return forward > backward ? forward : backward; }
};

/// |<v,w> - <Cv,Cw>| maximized over a few random pairs in the fiber
/// complement of a random stable subspace inside im(z).
double isometry(const NilpotentSpace& space, RngStream& rng, const Tolerances& tol);

struct Transport {
    double subspace = 0.0; // z((z^-1 W) /\ W-perp) vs W /\ (zW)-perp
    double collapse = 0.0; // || C(zu) - C(u) || over a basis of the source
};

/// Both statements of the transport lemma for a random stable W with
/// ker(z) <= W <= im(z).
Transport transport(const NilpotentSpace& space, RngStream& rng, const Tolerances& tol);

struct RoundTrip {
    double tuple_side = 0.0; // lines -> flag -> lines
    double flag_side = 0.0;  // flag -> lines -> flag
};

RoundTrip phi_round_trip(const NilpotentSpace& space, int m, RngStream& rng,
                         const Tolerances& tol);

/// forward: the locus sample maps into the antipodal-pair locus;
/// backward: the antipodal-pair sample maps into the contraction locus.
TwoWay locus_match(const NilpotentSpace& space, int m, int i, RngStream& rng,
                   const Tolerances& tol);

/// Componentwise distance between contract-then-map and map-then-contract
/// on a contraction-locus sample.
double square_commute(const NilpotentSpace& space, int m, int i, RngStream& rng,
                      const Tolerances& tol);

/// Full-shift and restricted-shift component conditions agree on a
/// component sample, and the outermost-cup telescoping lands on ker(z^n).
double restricted_shift(const NilpotentSpace& space, const Matching& a, RngStream& rng,
                        const Tolerances& tol);

/// forward: contracting a component sample lands in the reduced component;
/// backward: a contraction-fiber sample over the reduced component lands in
/// the original one. (i, i+1) must be a cup of a.
TwoWay contract_pullback(const NilpotentSpace& space, const Matching& a, int i,
                         RngStream& rng, const Tolerances& tol);

/// Same two directions for the antipodal sets under the pair-dropping map.
TwoWay drop_pullback(const Matching& a, int i, RngStream& rng, const Tolerances& tol);

/// forward: antipode-alternation of the mapped component sample lies in the
/// matched set; backward: the inverse map of the alternated matched-set
/// sample lies in the component (and in the two-block fiber).
TwoWay correspondence(const NilpotentSpace& space, const Matching& a, RngStream& rng,
                      const Tolerances& tol);

/// The n = 1 correspondence at one explicit line (used with a grid instead
/// of random draws).
TwoWay correspondence_at(const NilpotentSpace& space, const Matching& a, const Line& l,
                         const Tolerances& tol);

/// Deterministic near-uniform grid on the sphere (Fibonacci lattice).
Line grid_line(int index, int total);

} // namespace trial

CheckResult check_isometry(const CheckConfig& cfg);
CheckResult check_transport(const CheckConfig& cfg);
CheckResult check_phi_round_trip(const CheckConfig& cfg);
CheckResult check_locus_match(const CheckConfig& cfg);
CheckResult check_square_commute(const CheckConfig& cfg);
CheckResult check_restricted_shift(const CheckConfig& cfg);
CheckResult check_contract_pullback(const CheckConfig& cfg);
CheckResult check_drop_pullback(const CheckConfig& cfg);
CheckResult check_correspondence(const CheckConfig& cfg);

/// Canonical check names in dependency order.
const std::vector<std::string>& check_names();

/// Runs the named checks (all of them when `only` is empty) in dependency
/// order. The final correspondence check is always reported when selected,
/// even if prerequisites failed; its notes say which ones did.
Report run_all(const CheckConfig& cfg, const std::vector<std::string>& only = {});

/// Report document: {config:{n,trials,eps_rank,eps_eq,seed},
/// checks:[{name,trials,failures,max_residual,status,notes}...], overall}
/// plus rng, version and timestamp. Identical configs give identical
/// documents apart from the timestamp.
std::string report_to_json(const Report& report);

} // namespace springer
