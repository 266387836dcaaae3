#include <doctest.h>

#include <json.hpp>

#include "springer/errors.hpp"
#include "springer/harness.hpp"

#include "support.hpp"

using namespace springer;
using test_support::perturb_level;

namespace {

CheckConfig small_config(int n, int trials, std::uint64_t seed) {
    CheckConfig cfg;
    cfg.n = n;
    cfg.trials = trials;
    cfg.seed = seed;
    return cfg;
}

nlohmann::json report_without_timestamp(const Report& report) {
    nlohmann::json doc = nlohmann::json::parse(report_to_json(report));
    doc.erase("timestamp");
    return doc;
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("rng streams are reproducible and trial-independent") {
    RngStream a(42, "check", 7);
    RngStream b(42, "check", 7);
    for (int k = 0; k < 100; ++k) {
        CHECK(a.next_u64() == b.next_u64());
    }
    RngStream c(42, "check", 8);
    RngStream d(42, "other", 7);
    RngStream e(43, "check", 7);
    RngStream base(42, "check", 7);
    const std::uint64_t first = base.next_u64();
    CHECK(c.next_u64() != first);
    CHECK(d.next_u64() != first);
    CHECK(e.next_u64() != first);

    RngStream g(1, "gaussian", 0);
    double mean = 0.0;
    const int draws = 4000;
    for (int k = 0; k < draws; ++k) {
        mean += g.gaussian();
    }
    CHECK(std::abs(mean / draws) < 0.1);
}

TEST_CASE("config validation") {
    CHECK_NOTHROW(small_config(2, 10, 0).validate());
    CHECK_THROWS_AS(small_config(0, 10, 0).validate(), PreconditionError);
    CHECK_THROWS_AS(small_config(6, 10, 0).validate(), PreconditionError);
    CHECK_THROWS_AS(small_config(2, 0, 0).validate(), PreconditionError);
}

TEST_CASE("each check passes at desk scale with tiny residuals") {
    const CheckConfig cfg = small_config(2, 10, 2024);
    for (const auto& fn :
         {check_isometry, check_transport, check_phi_round_trip, check_locus_match,
          check_square_commute, check_restricted_shift, check_contract_pullback,
          check_drop_pullback, check_correspondence}) {
        const CheckResult result = fn(cfg);
        CHECK(result.pass());
        CHECK(result.failures == 0);
        CHECK(result.trials == 10);
        CHECK(result.max_residual < cfg.tol.eps_eq / 10.0);
    }
}

TEST_CASE("the n = 1 correspondence sweeps a deterministic grid") {
    const CheckResult result = check_correspondence(small_config(1, 50, 0));
    CHECK(result.pass());
    CHECK(result.trials == 50);
    CHECK(result.max_residual < 1e-10);
}

TEST_CASE("reports are deterministic given the seed, also across thread counts") {
    CheckConfig cfg = small_config(2, 12, 99);
    const Report first = run_all(cfg);
    const Report second = run_all(cfg);
    CHECK(report_without_timestamp(first) == report_without_timestamp(second));

    cfg.threads = 4;
    const Report parallel = run_all(cfg);
    CHECK(report_without_timestamp(first) == report_without_timestamp(parallel));

    CheckConfig other = cfg;
    other.seed = 100;
    const Report different = run_all(other);
    CHECK(report_without_timestamp(first) != report_without_timestamp(different));
}

TEST_CASE("report schema and overall aggregation") {
    const Report report = run_all(small_config(1, 5, 7));
    CHECK(report.overall);
    CHECK(report.checks.size() == check_names().size());

    const nlohmann::json doc = nlohmann::json::parse(report_to_json(report));
    CHECK(doc["overall"] == "pass");
    CHECK(doc["config"]["n"] == 1);
    CHECK(doc["config"]["trials"] == 5);
    CHECK(doc["config"]["seed"] == 7);
    CHECK(doc["config"].contains("eps_rank"));
    CHECK(doc["config"].contains("eps_eq"));
    CHECK(doc.contains("rng"));
    for (const auto& check : doc["checks"]) {
        CHECK(check.contains("name"));
        CHECK(check.contains("trials"));
        CHECK(check.contains("failures"));
        CHECK(check.contains("max_residual"));
        CHECK(check["status"] == "pass");
        CHECK(check["failures"].get<int>() <= check["trials"].get<int>());
    }
}

TEST_CASE("subset selection runs only the named checks, in canonical order") {
    const Report report =
        run_all(small_config(2, 5, 1), {"restricted-shift", "isometry"});
    REQUIRE(report.checks.size() == 2);
    CHECK(report.checks[0].name == "isometry");
    CHECK(report.checks[1].name == "restricted-shift");
    CHECK_THROWS_AS(run_all(small_config(2, 5, 1), {"no-such-check"}),
                    PreconditionError);
}

TEST_CASE("an unreachable tolerance makes checks fail as data, not as crashes") {
    CheckConfig cfg = small_config(2, 5, 3);
    cfg.tol = Tolerances::make(1e-16, 1e-15);
    const Report report = run_all(cfg);
    CHECK_FALSE(report.overall);
    bool saw_failure = false;
    for (const CheckResult& c : report.checks) {
        CHECK(c.failures <= c.trials);
        CHECK(c.pass() == (c.failures == 0));
        if (!c.pass()) {
            saw_failure = true;
        }
    }
    CHECK(saw_failure);
    // The final check names its failed prerequisites.
    const CheckResult& last = report.checks.back();
    CHECK(last.name == "component-correspondence");
    if (!report.checks.front().pass()) {
        CHECK(last.notes.find("prerequisite") != std::string::npos);
    }
}

TEST_CASE("residuals within a decade of the threshold are flagged as cliffs") {
    // Squeezing eps_eq into the numerical noise band must either fail
    // trials outright or surface tolerance-cliff warnings in the notes;
    // silence would mean the band bookkeeping is broken.
    CheckConfig cfg = small_config(2, 30, 1);
    cfg.tol = Tolerances::make(1e-15, 1e-14);
    const CheckResult result = check_transport(cfg);
    const bool flagged =
        result.failures > 0 || result.notes.find("decade") != std::string::npos;
    CHECK(flagged);
}

TEST_CASE("a corrupted component sample is detected") {
    const Tolerances tol;
    const NilpotentSpace space = NilpotentSpace::for_flag_length(4);
    const Matching a = parse_matching("(())");
    RngStream rng(4, "harness-corrupt", 0);
    const Flag flag = sample_component(space, a, rng, tol);

    const Flag broken = perturb_level(flag, 3, 1e-3, rng, tol);
    bool detected = false;
    try {
        detected = !in_component(broken, a, ShiftVariant::Full, tol).ok ||
                   !in_flag_variety(broken, tol).ok;
    } catch (const NumericalDegeneracy&) {
        detected = true;
    }
    CHECK(detected);
}

TEST_CASE("sensitivity holds down to ten times the equality tolerance") {
    const Tolerances tol;
    const NilpotentSpace space = NilpotentSpace::for_flag_length(4);
    const auto matchings = enumerate_matchings(2);
    RngStream rng(5, "harness-sensitivity", 0);
    const double delta = 10.0 * tol.eps_eq;
    for (int t = 0; t < 40; ++t) {
        const Matching& a = matchings[t % matchings.size()];
        const Flag flag = sample_component(space, a, rng, tol);
        const int level = 1 + t % flag.length();
        const Flag broken = perturb_level(flag, level, delta, rng, tol);
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
