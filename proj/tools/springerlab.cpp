// Command-line frontend: enumerate matchings, sample points on either side
// of the correspondence, apply the maps between them, and run the
// randomized lemma verification with a JSON report.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "springer/errors.hpp"
#include "springer/flag.hpp"
#include "springer/harness.hpp"
#include "springer/matching.hpp"
#include "springer/serialize.hpp"
#include "springer/sphere.hpp"

namespace {

using namespace springer;

Tolerances resolve_tolerances(double eps_flag) {
    double eps_eq = 1e-8;
    if (const char* env = std::getenv("SPRINGER_EPS")) {
        try {
            eps_eq = std::stod(env);
        } catch (const std::exception&) {
            throw PreconditionError("SPRINGER_EPS is not a number");
        }
    }
    if (eps_flag > 0.0) {
        eps_eq = eps_flag; // flags win over the environment
    }
    const double eps_rank = std::min(1e-9, eps_eq / 10.0);
    return Tolerances::make(eps_rank, eps_eq);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw PreconditionError("cannot open input file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw PreconditionError("cannot open output file: " + path);
    }
    out << text << "\n";
}

Matching require_matching(const std::string& text, int n) {
    if (text.empty()) {
        throw PreconditionError("this sampler needs --matching");
    }
    Matching a = parse_matching(text);
    if (a.n() != n) {
        throw PreconditionError("--matching has " + std::to_string(a.n()) +
                                " cups but --n is " + std::to_string(n));
    }
    return a;
}

int run_enumerate(int n, const std::string& format) {
    for (const Matching& a : enumerate_matchings(n)) {
        std::cout << (format == "pairs" ? format_matching_pairs(a) : format_matching(a))
                  << "\n";
    }
    return 0;
}

int run_sample(const std::string& kind, int n, const std::string& matching_text,
               int i, std::uint64_t seed, const std::string& out_path) {
    const Tolerances tol = resolve_tolerances(-1.0);
    RngStream rng(seed, "cli-sample-" + kind, 0);
    const int m = 2 * n;

    if (kind == "sa" || kind == "ta") {
        const Matching a = require_matching(matching_text, n);
        const LineTuple t =
            kind == "sa" ? sample_matched_set(a, rng) : sample_antipodal_set(a, rng);
        write_output(out_path, tuple_to_json(t));
        return 0;
    }

    const NilpotentSpace space = NilpotentSpace::for_flag_length(m);
    Flag flag{space, {}};
    if (kind == "ka") {
        const Matching a = require_matching(matching_text, n);
        flag = sample_component(space, a, rng, tol);
    } else if (kind == "ym") {
        flag = sample_flag_variety(space, m, rng, tol);
    } else if (kind == "xmi") {
        if (i < 1) {
            throw PreconditionError("sampler xmi needs --i in 1..2n-1");
        }
        flag = sample_contraction_locus(space, m, i, rng, tol);
    } else {
        throw PreconditionError("unknown sample kind: " + kind);
    }
    write_output(out_path, flag_to_json(flag));
    return 0;
}

int run_map(const std::string& kind, const std::string& in_path, int i,
            const std::string& out_path) {
    const Tolerances tol = resolve_tolerances(-1.0);
    const std::string text = read_file(in_path);
    const std::string type = json_document_type(text);

    if (kind == "phi") {
        if (type != "flag") {
            throw PreconditionError("map phi expects a flag document");
        }
        const Flag flag = flag_from_json(text, tol);
        write_output(out_path, tuple_to_json(flag_to_lines(flag, tol)));
        return 0;
    }
    if (kind == "phi-inv") {
        if (type != "lines") {
            throw PreconditionError("map phi-inv expects a lines document");
        }
        const LineTuple t = tuple_from_json(text);
        if (t.empty()) {
            throw PreconditionError("map phi-inv needs a nonempty tuple");
        }
        const NilpotentSpace space =
            NilpotentSpace::for_flag_length(static_cast<int>(t.size()));
        write_output(out_path, flag_to_json(lines_to_flag(t, space, tol)));
        return 0;
    }
    if (kind == "i2n") {
        if (type != "lines") {
            throw PreconditionError("map i2n expects a lines document");
        }
        write_output(out_path, tuple_to_json(alternate_antipode(tuple_from_json(text))));
        return 0;
    }
    if (kind == "q") {
        if (type != "flag") {
            throw PreconditionError("map q expects a flag document");
        }
        if (i < 1) {
            throw PreconditionError("map q needs --i in 1..m-1");
        }
        const Flag flag = flag_from_json(text, tol);
        write_output(out_path, flag_to_json(contract(flag, i, tol)));
        return 0;
    }
    throw PreconditionError("unknown map kind: " + kind);
}

int run_verify(int n, int trials, double eps, std::uint64_t seed,
               const std::vector<std::string>& checks, const std::string& json_path,
               int threads, bool allow_n5) {
    if (n == 5 && !allow_n5) {
        throw PreconditionError(
            "n = 5 sweeps 42 matchings; pass --allow-n5 to confirm");
    }
    CheckConfig cfg;
    cfg.n = n;
    cfg.trials = trials;
    cfg.tol = resolve_tolerances(eps);
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.validate();

    const Report report = run_all(cfg, checks);
    for (const CheckResult& c : report.checks) {
        std::cout << (c.pass() ? "PASS" : "FAIL") << " " << c.name << "  failures="
                  << c.failures << "/" << c.trials << "  max_residual=" << c.max_residual;
        if (!c.notes.empty()) {
            std::cout << "  (" << c.notes << ")";
        }
        std::cout << "\n";
    }
    std::cout << "overall: " << (report.overall ? "pass" : "fail") << "\n";
    if (!json_path.empty()) {
        write_output(json_path, report_to_json(report));
    }
    return report.overall ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for the two-block Springer fiber and its "
                 "sphere-product model"};
    app.require_subcommand(1);

    // enumerate
    auto* cmd_enum = app.add_subcommand("enumerate", "List crossingless matchings of 2n points");
    int enum_n = 1;
    std::string enum_format = "parens";
    cmd_enum->add_option("--n", enum_n, "Number of cups")->required();
    cmd_enum->add_option("--format", enum_format, "Output format")
        ->check(CLI::IsMember({"parens", "pairs"}));

    // sample
    auto* cmd_sample =
        app.add_subcommand("sample", "Draw a random point of a component or locus");
    std::string sample_kind;
    int sample_n = 1;
    std::string sample_matching;
    int sample_i = -1;
    std::uint64_t sample_seed = 0;
    std::string sample_out;
    cmd_sample->add_option("kind", sample_kind, "One of: ka, sa, ta, ym, xmi")
        ->required()
        ->check(CLI::IsMember({"ka", "sa", "ta", "ym", "xmi"}));
    cmd_sample->add_option("--n", sample_n, "Number of cups (flag length is 2n)")
        ->required();
    cmd_sample->add_option("--matching", sample_matching,
                           "Matching, as \"(())\" or \"[(1,4),(2,3)]\" (ka/sa/ta)");
    cmd_sample->add_option("--i", sample_i, "Locus index (xmi)");
    cmd_sample->add_option("--seed", sample_seed, "Random seed")->required();
    cmd_sample->add_option("--out", sample_out, "Output file (stdout when absent)");

    // map
    auto* cmd_map = app.add_subcommand("map", "Apply one of the correspondence maps");
    std::string map_kind;
    std::string map_in;
    int map_i = -1;
    std::string map_out;
    cmd_map->add_option("kind", map_kind, "One of: phi, phi-inv, i2n, q")
        ->required()
        ->check(CLI::IsMember({"phi", "phi-inv", "i2n", "q"}));
    cmd_map->add_option("--in", map_in, "Input JSON document")->required();
    cmd_map->add_option("--i", map_i, "Contraction index (q)");
    cmd_map->add_option("--out", map_out, "Output file (stdout when absent)");

    // verify
    auto* cmd_verify =
        app.add_subcommand("verify", "Run the randomized lemma checks and report");
    int verify_n = 2;
    int verify_trials = 100;
    double verify_eps = -1.0;
    std::uint64_t verify_seed = 0;
    std::vector<std::string> verify_checks;
    std::string verify_json;
    int verify_threads = 1;
    bool verify_allow_n5 = false;
    cmd_verify->add_option("--n", verify_n, "Number of cups (1..5)")->required();
    cmd_verify->add_option("--trials", verify_trials, "Trials per check");
    cmd_verify->add_option("--eps", verify_eps,
                           "Equality tolerance eps_eq (overrides SPRINGER_EPS)");
    cmd_verify->add_option("--seed", verify_seed, "Random seed");
    cmd_verify->add_option("--check", verify_checks, "Run only the named check(s)");
    cmd_verify->add_option("--json", verify_json, "Write the report to this file");
    cmd_verify->add_option("--threads", verify_threads, "Worker threads for trials");
    cmd_verify->add_flag("--allow-n5", verify_allow_n5, "Allow the n = 5 sweep");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_enum->parsed()) {
            return run_enumerate(enum_n, enum_format);
        }
        if (cmd_sample->parsed()) {
            return run_sample(sample_kind, sample_n, sample_matching, sample_i,
                              sample_seed, sample_out);
        }
        if (cmd_map->parsed()) {
            return run_map(map_kind, map_in, map_i, map_out);
        }
        if (cmd_verify->parsed()) {
            return run_verify(verify_n, verify_trials, verify_eps, verify_seed,
                              verify_checks, verify_json, verify_threads,
                              verify_allow_n5);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
