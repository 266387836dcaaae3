#include "springer/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <thread>

#include <json.hpp>

#include "springer/errors.hpp"

namespace springer {

namespace {

constexpr const char* kVersion = "springerlab 0.1.0";

struct TrialOutcome {
    double residual = 0.0;
    bool fail = false;
    std::string note;
};

/// Runs cfg.trials independent trials, each on its own derived stream, and
/// reduces in trial order. Parallel execution cannot change the result:
/// outcomes land in a per-trial slot and the reduction is a fixed-order
/// fold of max and sum.
CheckResult run_trials(const CheckConfig& cfg, const std::string& name,
                       const std::function<TrialOutcome(int, RngStream&)>& body) {
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));
    auto worker = [&](int begin, int end) {
        for (int t = begin; t < end; ++t) {
            RngStream rng(cfg.seed, name, static_cast<std::uint64_t>(t));
            try {
                outcomes[t] = body(t, rng);
            } catch (const LemmaViolation& e) {
                outcomes[t] = TrialOutcome{e.residual(), true, e.what()};
            } catch (const NumericalDegeneracy& e) {
                outcomes[t] = TrialOutcome{e.residual(), true, e.what()};
            } catch (const PreconditionError& e) {
                outcomes[t] = TrialOutcome{e.residual(), true, e.what()};
            }
        }
    };

    const int threads = std::min(cfg.threads, cfg.trials);
    if (threads <= 1) {
        worker(0, cfg.trials);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        const int chunk = (cfg.trials + threads - 1) / threads;
        for (int w = 0; w < threads; ++w) {
            const int begin = w * chunk;
            const int end = std::min(cfg.trials, begin + chunk);
            if (begin < end) {
                pool.emplace_back(worker, begin, end);
            }
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    CheckResult result;
    result.name = name;
    result.trials = cfg.trials;
    int warnings = 0;
    std::string first_failure;
    for (const TrialOutcome& o : outcomes) {
        result.max_residual = std::max(result.max_residual, o.residual);
        if (o.fail) {
            ++result.failures;
            if (first_failure.empty()) {
                first_failure = o.note.empty() ? "residual above eps_eq" : o.note;
            }
        } else if (o.residual >= cfg.tol.eps_eq / 10.0) {
            ++warnings;
        }
    }
    if (!first_failure.empty()) {
        result.notes = "first failure: " + first_failure;
    }
    if (warnings > 0) {
        if (!result.notes.empty()) {
            result.notes += "; ";
        }
        result.notes += std::to_string(warnings) +
                        " trial(s) within a decade of eps_eq (tolerance cliff)";
    }
    return result;
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

void CheckConfig::validate() const {
    if (n < 1 || n > 5) {
        throw PreconditionError("n must lie in 1..5");
    }
    if (trials < 1) {
        throw PreconditionError("trials must be positive");
    }
    if (threads < 1) {
        throw PreconditionError("threads must be positive");
    }
    Tolerances::make(tol.eps_rank, tol.eps_eq);
}

namespace trial {

double isometry(const NilpotentSpace& space, RngStream& rng, const Tolerances& tol) {
    const int generators = 1 + static_cast<int>(rng.below(2));
    const Subspace w = space.random_stable(generators, false, true, rng, tol);
    const Subspace fiber =
        intersect(preimage(space.shift(), w, tol), complement(w), tol);
    if (fiber.dim() != 2) {
        throw NumericalDegeneracy("fiber complement is not two-dimensional",
                                  static_cast<double>(fiber.dim()));
    }
    double worst = 0.0;
    for (int pair = 0; pair < 4; ++pair) {
        Eigen::VectorXcd v = fiber.basis() * rng.cgaussian_vector(2);
        Eigen::VectorXcd u = fiber.basis() * rng.cgaussian_vector(2);
        v /= v.norm();
        u /= u.norm();
        const std::complex<double> ambient = v.dot(u);
        const std::complex<double> collapsed =
            space.collapse(v).dot(space.collapse(u));
        worst = std::max(worst, std::abs(ambient - collapsed));
    }
    return worst;
}

Transport transport(const NilpotentSpace& space, RngStream& rng, const Tolerances& tol) {
    const int generators = 1 + static_cast<int>(rng.below(2));
    const Subspace w = space.random_stable(generators, true, true, rng, tol);
    const Subspace source =
        intersect(preimage(space.shift(), w, tol), complement(w), tol);
    if (source.dim() != 2) {
        throw NumericalDegeneracy("fiber complement is not two-dimensional",
                                  static_cast<double>(source.dim()));
    }
    const Subspace mapped = image(space.shift(), source, tol);
    const Subspace target =
        intersect(w, complement(image(space.shift(), w, tol)), tol);

    Transport out;
    out.subspace = equals(mapped, target, tol).residual;
    if (mapped.dim() != 2 || target.dim() != 2) {
        out.subspace = std::max(out.subspace, 1.0);
    }
    for (int c = 0; c < source.dim(); ++c) {
        const Eigen::VectorXcd u = source.basis().col(c);
        const Eigen::VectorXcd zu = space.shift() * u;
        out.collapse =
            std::max(out.collapse, (space.collapse(zu) - space.collapse(u)).norm());
    }
    return out;
}

RoundTrip phi_round_trip(const NilpotentSpace& space, int m, RngStream& rng,
                         const Tolerances& tol) {
    RoundTrip out;

    const LineTuple t = random_tuple(m, rng);
    const Flag lifted = lines_to_flag(t, space, tol);
    const FlagCheck variety = in_flag_variety(lifted, tol);
    if (!variety.ok) {
        throw NumericalDegeneracy("inverse map left the flag variety: " +
                                      variety.first_violation,
                                  variety.worst_residual);
    }
    out.tuple_side = tuple_distance(flag_to_lines(lifted, tol), t);

    const Flag flag = sample_flag_variety(space, m, rng, tol);
    const Flag back = lines_to_flag(flag_to_lines(flag, tol), space, tol);
    out.flag_side = flag_distance(back, flag, tol);
    return out;
}

TwoWay locus_match(const NilpotentSpace& space, int m, int i, RngStream& rng,
                   const Tolerances& tol) {
    TwoWay out;

    const Flag flag = sample_contraction_locus(space, m, i, rng, tol);
    out.forward = in_antipodal_locus(flag_to_lines(flag, tol), i, tol).residual;

    LineTuple t = random_tuple(m, rng);
    t[i] = perp(t[i - 1]);
    const Flag lifted = lines_to_flag(t, space, tol);
    out.backward = in_contraction_locus(lifted, i, tol).residual;
    return out;
}

double square_commute(const NilpotentSpace& space, int m, int i, RngStream& rng,
                      const Tolerances& tol) {
    const Flag flag = sample_contraction_locus(space, m, i, rng, tol);
    const LineTuple via_lines = contract_tuple(flag_to_lines(flag, tol), i, tol);
    const LineTuple via_flags = flag_to_lines(contract(flag, i, tol), tol);
    return tuple_distance(via_lines, via_flags);
}

double restricted_shift(const NilpotentSpace& space, const Matching& a, RngStream& rng,
                        const Tolerances& tol) {
    const int n = a.n();
    const Flag flag = sample_component(space, a, rng, tol);
    const ComponentCheck full = in_component(flag, a, ShiftVariant::Full, tol);
    const ComponentCheck restricted = in_component(flag, a, ShiftVariant::Restricted, tol);
    double worst = std::max(full.worst_residual, restricted.worst_residual);
    if (!full.ok || !restricted.ok) {
        worst = std::max(worst, 1.0);
    }

    // Independent recomputation of the top level through the outermost
    // cups: iterated shift preimages of the zero subspace must telescope to
    // ker(z^n), and the sampled flag must end there.
    Subspace telescoped = Subspace::zero(space.ambient_dim());
    for (const auto& [left, right] : a.outermost()) {
        telescoped = space.shift_pow_preimage(a.half_width(left), telescoped, tol);
    }
    worst = std::max(worst, equals(telescoped, space.kernel_power(n), tol).residual);
    worst = std::max(worst, equals(flag.level(2 * n), telescoped, tol).residual);
    return worst;
}

TwoWay contract_pullback(const NilpotentSpace& space, const Matching& a, int i,
                         RngStream& rng, const Tolerances& tol) {
    const int n = a.n();
    const Matching reduced = a.reduce(i);
    TwoWay out;

    const Flag flag = sample_component(space, a, rng, tol);
    out.forward = in_contraction_locus(flag, i, tol).residual;
    const Flag contracted = contract(flag, i, tol);
    const ComponentCheck fwd = in_component(contracted, reduced, ShiftVariant::Full, tol);
    out.forward = std::max(out.forward, fwd.worst_residual);
    const FlagCheck fwd_fiber = in_springer_fiber(contracted, n - 1, tol);
    out.forward = std::max(out.forward, fwd_fiber.worst_residual);
    if (!fwd.ok || !fwd_fiber.ok) {
        out.forward = std::max(out.forward, 1.0);
    }

    const Flag base = sample_component(space, reduced, rng, tol);
    const Flag lifted = sample_contraction_fiber(base, i, rng, tol);
    const ComponentCheck bwd = in_component(lifted, a, ShiftVariant::Full, tol);
    out.backward = bwd.worst_residual;
    const FlagCheck bwd_fiber = in_springer_fiber(lifted, n, tol);
    out.backward = std::max(out.backward, bwd_fiber.worst_residual);
    if (!bwd.ok || !bwd_fiber.ok) {
        out.backward = std::max(out.backward, 1.0);
    }
    return out;
}

TwoWay drop_pullback(const Matching& a, int i, RngStream& rng, const Tolerances& tol) {
    const Matching reduced = a.reduce(i);
    TwoWay out;

    const LineTuple t = sample_antipodal_set(a, rng);
    const ComponentCheck fwd = in_antipodal_set(contract_tuple(t, i, tol), reduced, tol);
    out.forward = fwd.worst_residual;
    if (!fwd.ok) {
        out.forward = std::max(out.forward, 1.0);
    }

    const LineTuple base = sample_antipodal_set(reduced, rng);
    const Line free = random_line(rng);
    LineTuple lifted;
    lifted.reserve(base.size() + 2);
    lifted.insert(lifted.end(), base.begin(), base.begin() + (i - 1));
    lifted.push_back(free);
    lifted.push_back(perp(free));
    lifted.insert(lifted.end(), base.begin() + (i - 1), base.end());
    const ComponentCheck bwd = in_antipodal_set(lifted, a, tol);
    out.backward = bwd.worst_residual;
    if (!bwd.ok) {
        out.backward = std::max(out.backward, 1.0);
    }
    return out;
}

TwoWay correspondence(const NilpotentSpace& space, const Matching& a, RngStream& rng,
                      const Tolerances& tol) {
    const int n = a.n();
    TwoWay out;

    const Flag flag = sample_component(space, a, rng, tol);
    const LineTuple mapped = alternate_antipode(flag_to_lines(flag, tol));
    const ComponentCheck fwd = in_matched_set(mapped, a, tol);
    out.forward = fwd.worst_residual;
    if (!fwd.ok) {
        out.forward = std::max(out.forward, 1.0);
    }

    const LineTuple sample = sample_matched_set(a, rng);
    const Flag lifted = lines_to_flag(alternate_antipode(sample), space, tol);
    const ComponentCheck bwd = in_component(lifted, a, ShiftVariant::Full, tol);
    out.backward = bwd.worst_residual;
    const FlagCheck bwd_fiber = in_springer_fiber(lifted, n, tol);
    out.backward = std::max(out.backward, bwd_fiber.worst_residual);
    if (!bwd.ok || !bwd_fiber.ok) {
        out.backward = std::max(out.backward, 1.0);
    }
    return out;
}

TwoWay correspondence_at(const NilpotentSpace& space, const Matching& a, const Line& l,
                         const Tolerances& tol) {
    if (a.n() != 1) {
        throw PreconditionError("grid correspondence is the n = 1 case");
    }
    TwoWay out;

    const Subspace zero = Subspace::zero(space.ambient_dim());
    const Eigen::VectorXcd u = space.lift_line(zero, l.rep(), tol);
    Flag flag{space, {span(u, tol), space.kernel_power(1)}};
    const LineTuple mapped = alternate_antipode(flag_to_lines(flag, tol));
    const ComponentCheck fwd = in_matched_set(mapped, a, tol);
    out.forward = fwd.ok ? fwd.worst_residual : std::max(fwd.worst_residual, 1.0);

    const LineTuple sample{l, l};
    const Flag lifted = lines_to_flag(alternate_antipode(sample), space, tol);
    const ComponentCheck bwd = in_component(lifted, a, ShiftVariant::Full, tol);
    const FlagCheck bwd_fiber = in_springer_fiber(lifted, 1, tol);
    out.backward = std::max(bwd.worst_residual, bwd_fiber.worst_residual);
    if (!bwd.ok || !bwd_fiber.ok) {
        out.backward = std::max(out.backward, 1.0);
    }
    return out;
}

Line grid_line(int index, int total) {
    const double golden = 0.61803398874989484820;
    const double z = 1.0 - 2.0 * (index + 0.5) / total;
    const double theta = std::acos(std::clamp(z, -1.0, 1.0));
    const double phase = 2.0 * M_PI * std::fmod(index * golden, 1.0);
    Eigen::Vector2cd rep;
    rep << std::cos(theta / 2.0),
        std::polar(std::sin(theta / 2.0), phase);
    return Line(rep);
}

} // namespace trial

CheckResult check_isometry(const CheckConfig& cfg) {
    const NilpotentSpace space = NilpotentSpace::for_flag_length(2 * cfg.n);
    return run_trials(cfg, "isometry", [&](int, RngStream& rng) {
        const double r = trial::isometry(space, rng, cfg.tol);
        return TrialOutcome{r, r > cfg.tol.eps_eq, {}};
    });
}

CheckResult check_transport(const CheckConfig& cfg) {
    const NilpotentSpace space = NilpotentSpace::for_flag_length(2 * cfg.n);
    return run_trials(cfg, "transport", [&](int, RngStream& rng) {
        const trial::Transport r = trial::transport(space, rng, cfg.tol);
        const bool fail = r.subspace > cfg.tol.eps_eq || r.collapse > cfg.tol.eps_eq / 10.0;
        return TrialOutcome{std::max(r.subspace, r.collapse), fail, {}};
    });
}

CheckResult check_phi_round_trip(const CheckConfig& cfg) {
    const int m = 2 * cfg.n;
    const NilpotentSpace space = NilpotentSpace::for_flag_length(m);
    return run_trials(cfg, "phi-round-trip", [&](int, RngStream& rng) {
        const trial::RoundTrip r = trial::phi_round_trip(space, m, rng, cfg.tol);
        const double worst = std::max(r.tuple_side, r.flag_side);
        return TrialOutcome{worst, worst > cfg.tol.eps_eq, {}};
    });
}

CheckResult check_locus_match(const CheckConfig& cfg) {
    const int m = 2 * cfg.n;
    const NilpotentSpace space = NilpotentSpace::for_flag_length(m);
    return run_trials(cfg, "locus-match", [&](int, RngStream& rng) {
        double worst = 0.0;
        for (int i = 1; i <= m - 1; ++i) {
            worst = std::max(worst, trial::locus_match(space, m, i, rng, cfg.tol).max());
        }
        return TrialOutcome{worst, worst > cfg.tol.eps_eq, {}};
    });
}

CheckResult check_square_commute(const CheckConfig& cfg) {
    const int m = 2 * cfg.n;
    const NilpotentSpace space = NilpotentSpace::for_flag_length(m);
    return run_trials(cfg, "square-commute", [&](int, RngStream& rng) {
        double worst = 0.0;
        for (int i = 1; i <= m - 1; ++i) {
            worst = std::max(worst, trial::square_commute(space, m, i, rng, cfg.tol));
        }
        return TrialOutcome{worst, worst > cfg.tol.eps_eq, {}};
    });
}

CheckResult check_restricted_shift(const CheckConfig& cfg) {
    const NilpotentSpace space = NilpotentSpace::for_flag_length(2 * cfg.n);
    const std::vector<Matching> matchings = enumerate_matchings(cfg.n);
    return run_trials(cfg, "restricted-shift", [&](int, RngStream& rng) {
        double worst = 0.0;
        for (const Matching& a : matchings) {
            worst = std::max(worst, trial::restricted_shift(space, a, rng, cfg.tol));
        }
        return TrialOutcome{worst, worst > cfg.tol.eps_eq, {}};
    });
}

CheckResult check_contract_pullback(const CheckConfig& cfg) {
    const NilpotentSpace space = NilpotentSpace::for_flag_length(2 * cfg.n);
    const std::vector<Matching> matchings = enumerate_matchings(cfg.n);
    return run_trials(cfg, "contract-pullback", [&](int, RngStream& rng) {
        double worst = 0.0;
        for (const Matching& a : matchings) {
            for (int i : a.adjacent_pairs()) {
                worst = std::max(worst,
                                 trial::contract_pullback(space, a, i, rng, cfg.tol).max());
            }
        }
        return TrialOutcome{worst, worst > cfg.tol.eps_eq, {}};
    });
}

CheckResult check_drop_pullback(const CheckConfig& cfg) {
    const std::vector<Matching> matchings = enumerate_matchings(cfg.n);
    return run_trials(cfg, "drop-pullback", [&](int, RngStream& rng) {
        double worst = 0.0;
        for (const Matching& a : matchings) {
            for (int i : a.adjacent_pairs()) {
                worst = std::max(worst, trial::drop_pullback(a, i, rng, cfg.tol).max());
            }
        }
        return TrialOutcome{worst, worst > cfg.tol.eps_eq, {}};
    });
}

CheckResult check_correspondence(const CheckConfig& cfg) {
    const NilpotentSpace space = NilpotentSpace::for_flag_length(2 * cfg.n);
    const std::vector<Matching> matchings = enumerate_matchings(cfg.n);
    if (cfg.n == 1) {
        // Exhaustive sweep over a deterministic grid of lines instead of
        // random draws; the single component is one-parameter.
        const Matching a = matchings.front();
        return run_trials(cfg, "component-correspondence", [&, a](int t, RngStream&) {
            const Line l = trial::grid_line(t, cfg.trials);
            const double worst = trial::correspondence_at(space, a, l, cfg.tol).max();
            return TrialOutcome{worst, worst > cfg.tol.eps_eq, {}};
        });
    }
    return run_trials(cfg, "component-correspondence", [&](int, RngStream& rng) {
        double worst = 0.0;
        for (const Matching& a : matchings) {
            worst = std::max(worst, trial::correspondence(space, a, rng, cfg.tol).max());
        }
        return TrialOutcome{worst, worst > cfg.tol.eps_eq, {}};
    });
}

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = {
        "isometry",          "transport",         "phi-round-trip",
        "locus-match",       "square-commute",    "restricted-shift",
        "contract-pullback", "drop-pullback",     "component-correspondence",
    };
    return names;
}

Report run_all(const CheckConfig& cfg, const std::vector<std::string>& only) {
    cfg.validate();
    for (const std::string& name : only) {
        if (std::find(check_names().begin(), check_names().end(), name) ==
            check_names().end()) {
            throw PreconditionError("unknown check: " + name);
        }
    }
    auto selected = [&](const std::string& name) {
        return only.empty() ||
               std::find(only.begin(), only.end(), name) != only.end();
    };

    using CheckFn = CheckResult (*)(const CheckConfig&);
    const std::pair<const char*, CheckFn> table[] = {
        {"isometry", check_isometry},
        {"transport", check_transport},
        {"phi-round-trip", check_phi_round_trip},
        {"locus-match", check_locus_match},
        {"square-commute", check_square_commute},
        {"restricted-shift", check_restricted_shift},
        {"contract-pullback", check_contract_pullback},
        {"drop-pullback", check_drop_pullback},
        {"component-correspondence", check_correspondence},
    };

    Report report;
    report.config = cfg;
    report.version = kVersion;
    report.rng_derivation = RngStream::derivation();
    report.timestamp = iso_timestamp();

    std::vector<std::string> failed_prerequisites;
    for (const auto& [name, fn] : table) {
        if (!selected(name)) {
            continue;
        }
        CheckResult result = fn(cfg);
        const bool is_final = std::string(name) == "component-correspondence";
        if (is_final) {
            // Scope statement: sampling certifies pointwise membership in
            // both directions and the round trips, not continuity of the
            // restricted maps.
            const std::string scope =
                "verifies pointwise membership both ways plus bijectivity on "
                "samples, not continuity";
            result.notes = result.notes.empty() ? scope : result.notes + "; " + scope;
        }
        if (is_final && !failed_prerequisites.empty()) {
            std::string prefix = "prerequisite checks failed:";
            for (const std::string& p : failed_prerequisites) {
                prefix += " " + p;
            }
            result.notes = result.notes.empty() ? prefix : prefix + "; " + result.notes;
        }
        if (!result.pass() && !is_final) {
            failed_prerequisites.push_back(name);
        }
        report.checks.push_back(std::move(result));
    }
    report.overall = std::all_of(report.checks.begin(), report.checks.end(),
                                 [](const CheckResult& c) { return c.pass(); });
    return report;
}

std::string report_to_json(const Report& report) {
    nlohmann::json doc;
    doc["config"] = {{"n", report.config.n},
                     {"trials", report.config.trials},
                     {"eps_rank", report.config.tol.eps_rank},
                     {"eps_eq", report.config.tol.eps_eq},
                     {"seed", report.config.seed}};
    doc["checks"] = nlohmann::json::array();
    for (const CheckResult& c : report.checks) {
        doc["checks"].push_back({{"name", c.name},
                                 {"trials", c.trials},
                                 {"failures", c.failures},
                                 {"max_residual", c.max_residual},
                                 {"status", c.pass() ? "pass" : "fail"},
                                 {"notes", c.notes}});
    }
    doc["overall"] = report.overall ? "pass" : "fail";
    doc["rng"] = report.rng_derivation;
    doc["version"] = report.version;
    doc["timestamp"] = report.timestamp;
    return doc.dump(2);
}

} // namespace springer
