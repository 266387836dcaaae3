#include <doctest.h>

#include "springer/errors.hpp"
#include "springer/flag.hpp"
#include "springer/sphere.hpp"

#include "support.hpp"

using namespace springer;
using test_support::perturb_level;

namespace {

const Tolerances tol;

Flag two_step_flag(const NilpotentSpace& space, const Subspace& l1, const Subspace& l2) {
    return Flag{space, {l1, l2}};
}

} // namespace

TEST_SUITE("flag") {

TEST_CASE("stable-flag membership accepts ker-line flags and rejects unstable ones") {
    const NilpotentSpace space = NilpotentSpace::for_flag_length(1);
    Flag good{space, {span(space.e(1), tol)}};
    CHECK(in_flag_variety(good, tol).ok);

    Flag bad{space, {span(space.e(2), tol)}};
    const FlagCheck verdict = in_flag_variety(bad, tol);
    CHECK_FALSE(verdict.ok);
    CHECK(verdict.first_violation == "z L_1 not inside L_0");
    CHECK(verdict.worst_residual > 0.5);
}

TEST_CASE("springer-fiber membership pins the top level") {
    const NilpotentSpace space = NilpotentSpace::for_flag_length(2);
    const Subspace l1 = span(space.e(1), tol);
    CHECK(in_springer_fiber(two_step_flag(space, l1, space.kernel_power(1)), 1, tol).ok);

    const Subspace wrong = span(
        std::vector<Eigen::VectorXcd>{space.e(1), space.e(2)}, space.ambient_dim(), tol);
    CHECK_FALSE(in_springer_fiber(two_step_flag(space, l1, wrong), 1, tol).ok);

    Flag too_short{space, {l1}};
    CHECK_THROWS_AS(in_springer_fiber(too_short, 1, tol), PreconditionError);
}

TEST_CASE("component membership: n = 1 and cross-component rejection") {
    const NilpotentSpace space = NilpotentSpace::for_flag_length(2);
    const Matching a = parse_matching("()");
    RngStream rng(1, "flag-ka", 0);
    const Flag flag = sample_component(space, a, rng, tol);
    CHECK(in_component(flag, a, ShiftVariant::Full, tol).ok);
    CHECK(equals(flag.level(2), space.kernel_power(1), tol).ok);

    // A generic point of one component fails the other component's cups.
    const NilpotentSpace space4 = NilpotentSpace::for_flag_length(4);
    const Matching side = parse_matching("()()");
    const Matching nested = parse_matching("(())");
    const Flag in_side = sample_component(space4, side, rng, tol);
    const ComponentCheck cross = in_component(in_side, nested, ShiftVariant::Full, tol);
    CHECK_FALSE(cross.ok);
    CHECK(cross.worst_residual > 10.0 * tol.eps_eq);
}

TEST_CASE("component sampler satisfies the frozen n = 2 constraints") {
    const NilpotentSpace space = NilpotentSpace::for_flag_length(4);
    const Matching nested = parse_matching("(())");
    RngStream rng(2, "flag-ka2", 0);
    for (int t = 0; t < 10; ++t) {
        const Flag flag = sample_component(space, nested, rng, tol);
        CHECK(equals(flag.level(3),
                     space.shift_pow_preimage(1, flag.level(1), tol), tol)
                  .ok);
        CHECK(equals(flag.level(4), space.kernel_power(2), tol).ok);
        CHECK(in_flag_variety(flag, tol).ok);
    }
}

TEST_CASE("component samples pass both shift variants across all of B^3") {
    const NilpotentSpace space = NilpotentSpace::for_flag_length(6);
    RngStream rng(3, "flag-ka3", 0);
    for (const Matching& a : enumerate_matchings(3)) {
        for (int t = 0; t < 100; ++t) {
            const Flag flag = sample_component(space, a, rng, tol);
            const ComponentCheck full = in_component(flag, a, ShiftVariant::Full, tol);
            const ComponentCheck restricted =
                in_component(flag, a, ShiftVariant::Restricted, tol);
            CHECK(full.ok);
            CHECK(restricted.ok);
            CHECK(full.worst_residual < 1e-8);
            CHECK(restricted.worst_residual < 1e-8);
            CHECK(in_springer_fiber(flag, 3, tol).ok);
        }
    }
}

TEST_CASE("flag variety samples stay inside ker(z^m) and dimension counting holds") {
    const NilpotentSpace space = NilpotentSpace::for_flag_length(6);
    RngStream rng(4, "flag-ym", 0);
    for (int t = 0; t < 20; ++t) {
        const Flag flag = sample_flag_variety(space, 6, rng, tol);
        CHECK(in_flag_variety(flag, tol).ok);
        CHECK(contains(space.kernel_power(6), flag.level(6), tol).ok);
    }
    const Matching a = parse_matching("(()())");
    for (int t = 0; t < 10; ++t) {
        const Flag flag = sample_component(space, a, rng, tol);
        for (int j : a.left_endpoints()) {
            const Subspace up =
                space.shift_pow_preimage(a.half_width(j), flag.level(j - 1), tol);
            CHECK(up.dim() == a.right_end(j));
        }
    }
}

TEST_CASE("contraction locus membership and sampling") {
    const NilpotentSpace space2 = NilpotentSpace::for_flag_length(2);
    const Subspace l1 = span(space2.e(1), tol);
    CHECK(in_contraction_locus(two_step_flag(space2, l1, space2.kernel_power(1)), 1, tol)
              .ok);

    const NilpotentSpace space = NilpotentSpace::for_flag_length(6);
    RngStream rng(5, "flag-xmi", 0);
    for (int i = 1; i <= 5; ++i) {
        const Flag flag = sample_contraction_locus(space, 6, i, rng, tol);
        CHECK(in_flag_variety(flag, tol).ok);
        CHECK(in_contraction_locus(flag, i, tol).ok);
    }

    // Component samples with an adjacent cup (i, i+1) lie in the locus at i.
    const Matching a = parse_matching("(())");
    const NilpotentSpace space4 = NilpotentSpace::for_flag_length(4);
    const Flag flag = sample_component(space4, a, rng, tol);
    CHECK(in_contraction_locus(flag, 2, tol).ok);

    // A generic stable flag is not in any contraction locus.
    const Flag generic = sample_flag_variety(space, 6, rng, tol);
    for (int i = 1; i <= 5; ++i) {
        CHECK_FALSE(in_contraction_locus(generic, i, tol).ok);
    }

    CHECK_THROWS_AS(in_contraction_locus(flag, 0, tol), PreconditionError);
    CHECK_THROWS_AS(in_contraction_locus(flag, 4, tol), PreconditionError);
}

TEST_CASE("contraction drops two levels and lands in the smaller variety") {
    const NilpotentSpace space = NilpotentSpace::for_flag_length(4);
    RngStream rng(6, "flag-q", 0);

    const Flag small = sample_contraction_locus(
        NilpotentSpace::for_flag_length(2), 2, 1, rng, tol);
    CHECK(contract(small, 1, tol).length() == 0);

    for (int t = 0; t < 10; ++t) {
        const Flag flag = sample_contraction_locus(space, 4, 2, rng, tol);
        const Flag smaller = contract(flag, 2, tol);
        CHECK(smaller.length() == 2);
        CHECK(in_flag_variety(smaller, tol).ok);
        CHECK(image(space.shift(), flag.level(4), tol).dim() == 2);
    }

    const Flag generic = sample_flag_variety(space, 4, rng, tol);
    CHECK_THROWS_AS(contract(generic, 2, tol), PreconditionError);
}

TEST_CASE("contraction fiber samples project back and pull the component back") {
    RngStream rng(7, "flag-qfiber", 0);

    // Fiber over the empty flag: a line inside ker(z), topped by ker(z).
    const NilpotentSpace space2 = NilpotentSpace::for_flag_length(2);
    const Flag empty{space2, {}};
    const Flag over_empty = sample_contraction_fiber(empty, 1, rng, tol);
    CHECK(over_empty.length() == 2);
    CHECK(equals(over_empty.level(2), space2.kernel_power(1), tol).ok);
    CHECK(contains(space2.kernel_power(1), over_empty.level(1), tol).ok);

    const NilpotentSpace space = NilpotentSpace::for_flag_length(6);
    const Matching a = parse_matching("(()())");
    for (int i : a.adjacent_pairs()) {
        const Matching reduced = a.reduce(i);
        for (int t = 0; t < 10; ++t) {
            const Flag base = sample_component(space, reduced, rng, tol);
            const Flag lifted = sample_contraction_fiber(base, i, rng, tol);
            CHECK(flag_distance(contract(lifted, i, tol), base, tol) < 1e-8);
            CHECK(in_component(lifted, a, ShiftVariant::Full, tol).ok);
        }
    }
}

TEST_CASE("perturbed levels are detected by the membership tests") {
    const NilpotentSpace space = NilpotentSpace::for_flag_length(4);
    const Matching a = parse_matching("(())");
    RngStream rng(8, "flag-perturb", 0);
    const Flag flag = sample_component(space, a, rng, tol);
    for (int j = 1; j <= 4; ++j) {
        const Flag broken = perturb_level(flag, j, 1e-3, rng, tol);
        bool detected = false;
        try {
            detected = !in_flag_variety(broken, tol).ok ||
                       !in_springer_fiber(broken, 2, tol).ok ||
                       !in_component(broken, a, ShiftVariant::Full, tol).ok;
        } catch (const NumericalDegeneracy&) {
            detected = true;
        }
        CHECK(detected);
    }
}

} // TEST_SUITE
