// maltsev-kan: decide Maltsev terms for finite algebras, build truncated
// simplicial fixtures, fill and lift horns, and verify Kan fibrations by
// exhaustive search.
//
// Exit codes: 0 success, 2 usage error, 3 negative mathematical result
// (no Maltsev term / unliftable horn / no preimage), 4 resource limit,
// 5 validation error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mkan/detect.hpp"
#include "mkan/io.hpp"
#include "mkan/oracle.hpp"

namespace {

using namespace mkan;

// bad flag values; distinct from bad file contents
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::NoPreimage:
            return 3;
        case ErrorKind::ResourceLimit:
        case ErrorKind::BudgetExceeded:
            return 4;
        default:
            return 5;
    }
}

std::map<int, int> parse_faces(const std::vector<std::string>& raw) {
    std::map<int, int> faces;
    for (const auto& entry : raw) {
        auto eq = entry.find('=');
        if (eq == std::string::npos) throw UsageError("--face expects I=ELEM, got '" + entry + "'");
        try {
            int i = std::stoi(entry.substr(0, eq));
            int v = std::stoi(entry.substr(eq + 1));
            if (faces.count(i)) throw UsageError("face " + std::to_string(i) + " given twice");
            faces[i] = v;
        } catch (const std::invalid_argument&) {
            throw UsageError("--face expects integers, got '" + entry + "'");
        } catch (const std::out_of_range&) {
            throw UsageError("--face value out of range in '" + entry + "'");
        }
    }
    return faces;
}

std::string render_tuple(long long value, int base, int length) {
    std::string out = "(";
    for (int t = 0; t < length; ++t) {
        if (t) out += ",";
        out += std::to_string(value % base);
        value /= base;
    }
    out += ")";
    return out;
}

// length of the base-b tuple a level element encodes, or -1
int tuple_length(long long carrier, int base) {
    int len = 0;
    long long size = 1;
    while (size < carrier) {
        size *= base;
        ++len;
    }
    return size == carrier ? len : -1;
}

int cmd_validate(const std::string& file) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(file));
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::SyntaxError, file + ": " + e.what());
    }
    if (j.is_object() && j.contains("maps"))
        load_hom(file);
    else if (j.is_object() && j.contains("N"))
        load_simplicial(file);
    else if (j.is_object() && j.contains("carrier"))
        load_algebra(file);
    else
        fail(ErrorKind::SyntaxError, file + ": not an algebra, simplicial or hom document");
    std::cout << "ok\n";
    return 0;
}

int cmd_detect(const std::string& file, std::size_t max_closure, bool stats, int threads) {
    FiniteAlgebra alg = load_algebra(file);
    ClosureOptions opts{max_closure, threads};
    std::optional<Term> witness = maltsev_witness(alg, opts);
    if (stats) {
        ClosureStats s = closure_stats(alg, opts);
        std::cout << "closure_size=" << s.closure_size << " generations=" << s.generations
                  << " found=" << (s.found ? "true" : "false") << "\n";
    }
    if (!witness) {
        std::cout << "none\n";
        return 3;
    }
    std::cout << term_to_string(*witness) << "\n";
    return 0;
}

int cmd_fill(const std::string& file, int n, int k, const std::vector<std::string>& raw_faces, bool pretty,
             int base) {
    TruncatedSimplicialAlgebra X = load_simplicial(file);
    Horn horn{n, k, parse_faces(raw_faces)};
    LiftResult result = fill_horn(X, horn);
    if (pretty) {
        int len = tuple_length(X.level_size(n), base);
        if (len < 0)
            fail(ErrorKind::ValidationError, "level " + std::to_string(n) + " carrier " +
                                                 std::to_string(X.level_size(n)) + " is not a power of " +
                                                 std::to_string(base));
        std::cout << result.x << " = " << render_tuple(result.x, base, len) << "\n";
    } else {
        std::cout << result.x << "\n";
    }
    return 0;
}

int cmd_lift(const std::string& file, int n, int k, int y, const std::vector<std::string>& raw_faces, bool trace) {
    HomFile hom_file = load_hom(file);
    Horn horn{n, k, parse_faces(raw_faces)};
    LiftProblem problem{hom_file.hom, horn, y};
    LiftResult result = lift_horn(problem, {trace, std::nullopt});
    std::cout << result.x << "\n";
    if (trace) {
        for (const auto& entry : result.trace)
            std::cout << "w[" << entry.j << "] phase=" << lift_phase_name(entry.phase) << " value=" << entry.w
                      << "\n";
    }
    return 0;
}

int cmd_verify_fibration(const std::string& file, int max_dim, unsigned long long budget, int threads,
                         const std::string& report_path) {
    HomFile hom_file = load_hom(file);
    FibrationOptions opts;
    opts.budget = budget;
    opts.threads = threads;
    bool surjective = is_levelwise_surjective(hom_file.hom);
    FibrationReport report = verify_fibration(hom_file.hom, max_dim, opts);
    std::cout << "levelwise_surjective=" << (surjective ? "true" : "false") << "\n";
    std::cout << "checked_horns=" << report.checked_horns << "\n";
    std::cout << "failures=" << report.failures.size() << "\n";
    std::size_t shown = 0;
    for (const auto& failure : report.failures) {
        if (++shown > 20) {
            std::cout << "...\n";
            break;
        }
        std::cout << "failure n=" << failure.n << " k=" << failure.k << " y=" << failure.y << " faces=";
        bool first = true;
        for (const auto& [i, x] : failure.faces) {
            if (!first) std::cout << ",";
            std::cout << i << ":" << x;
            first = false;
        }
        std::cout << "\n";
    }
    if (!report_path.empty()) {
        nlohmann::ordered_json j;
        j["checked_horns"] = report.checked_horns;
        nlohmann::ordered_json failures = nlohmann::ordered_json::array();
        for (const auto& failure : report.failures) {
            nlohmann::ordered_json fj;
            fj["n"] = failure.n;
            fj["k"] = failure.k;
            fj["y"] = failure.y;
            nlohmann::ordered_json faces = nlohmann::ordered_json::object();
            for (const auto& [i, x] : failure.faces) faces[std::to_string(i)] = x;
            fj["faces"] = std::move(faces);
            failures.push_back(std::move(fj));
        }
        j["failures"] = std::move(failures);
        j["elapsed_seconds"] = report.elapsed_seconds;
        write_file(report_path, j.dump() + "\n");
    }
    return report.failures.empty() ? 0 : 3;
}

int cmd_kan12(int m, bool pretty) {
    std::optional<int> x = kan12_circle(m);
    if (!x) {
        std::cout << "none\n";
        return 3;
    }
    if (pretty)
        std::cout << *x << " = " << render_tuple(*x, m, 3) << "\n";
    else
        std::cout << *x << "\n";
    return 0;
}

int cmd_gen_fixture(const std::string& kind, int m, int levels, const std::string& out) {
    if (kind == "constant") {
        FiniteAlgebra alg = cyclic_group(m);
        alg.attach_maltsev_term(group_maltsev_term());
        write_file(out, serialize_simplicial(constant(alg, levels)));
    } else if (kind == "nerve") {
        write_file(out, serialize_simplicial(nerve_abelian(m, levels)));
    } else if (kind == "circle") {
        write_file(out, serialize_simplicial(circle_free_mod(m, levels)));
    } else {
        throw UsageError("unknown fixture kind '" + kind + "'");
    }
    return 0;
}

}

int main(int argc, char** argv) {
    CLI::App app{"Maltsev terms, simplicial algebras and Kan fibrations over finite clones"};
    app.require_subcommand(1);

    std::string file, out, kind, report_path;
    std::vector<std::string> raw_faces;
    int n = 1, k = 0, y = 0, m = 2, levels = 2, max_dim = 1, threads = 1, base = 0;
    std::size_t max_closure = 5'000'000;
    unsigned long long budget = 0;
    bool stats = false, trace = false, pretty = false;

    auto* validate_cmd = app.add_subcommand("validate", "Validate an algebra, simplicial or hom file");
    validate_cmd->add_option("file", file, "input file")->required();

    auto* detect_cmd = app.add_subcommand("detect-maltsev", "Search the clone of a finite algebra for a Maltsev term");
    detect_cmd->add_option("file", file, "algebra file")->required();
    detect_cmd->add_option("--max-closure", max_closure, "closure size cap");
    detect_cmd->add_flag("--stats", stats, "print closure statistics");
    detect_cmd->add_option("--threads", threads, "worker threads");

    auto* fill_cmd = app.add_subcommand("fill-horn", "Fill a horn in a simplicial algebra");
    fill_cmd->add_option("file", file, "simplicial file")->required();
    fill_cmd->add_option("--n", n, "horn dimension")->required();
    fill_cmd->add_option("--k", k, "missing face index")->required();
    fill_cmd->add_option("--face", raw_faces, "face I=ELEM (repeat per face)");
    fill_cmd->add_flag("--pretty", pretty, "render elements as tuples (needs --base)");
    fill_cmd->add_option("--base", base, "tuple base for --pretty");

    auto* lift_cmd = app.add_subcommand("lift-horn", "Lift a horn along a surjective simplicial homomorphism");
    lift_cmd->add_option("file", file, "hom file")->required();
    lift_cmd->add_option("--n", n, "horn dimension")->required();
    lift_cmd->add_option("--k", k, "missing face index")->required();
    lift_cmd->add_option("--y", y, "target simplex")->required();
    lift_cmd->add_option("--face", raw_faces, "face I=ELEM (repeat per face)");
    lift_cmd->add_flag("--trace", trace, "print the w_j recursion and assert its invariants");

    auto* verify_cmd = app.add_subcommand("verify-fibration", "Exhaustively check horn lifting along a hom");
    verify_cmd->add_option("file", file, "hom file")->required();
    verify_cmd->add_option("--max-dim", max_dim, "largest horn dimension")->required();
    verify_cmd->add_option("--budget", budget, "enumeration budget (default 1e8 or MALTSEV_KAN_BUDGET)");
    verify_cmd->add_option("--report", report_path, "write a JSON report");
    verify_cmd->add_option("--threads", threads, "worker threads");

    auto* kan12_cmd = app.add_subcommand("kan12-circle", "(1,2)-Kan condition in dimension 2 on the circle model");
    kan12_cmd->add_option("--m", m, "modulus (>= 2)")->required();
    kan12_cmd->add_flag("--pretty", pretty, "render the solution as a tuple");

    auto* gen_cmd = app.add_subcommand("gen-fixture", "Generate a simplicial fixture file");
    gen_cmd->add_option("--kind", kind, "constant | nerve | circle")->required();
    gen_cmd->add_option("--m", m, "modulus")->required();
    gen_cmd->add_option("--levels", levels, "truncation level N")->required();
    gen_cmd->add_option("--out", out, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(validate_cmd)) return cmd_validate(file);
        if (app.got_subcommand(detect_cmd)) return cmd_detect(file, max_closure, stats, threads);
        if (app.got_subcommand(fill_cmd)) {
            if (pretty && base < 2) throw UsageError("--pretty needs --base B with B >= 2");
            return cmd_fill(file, n, k, raw_faces, pretty, base);
        }
        if (app.got_subcommand(lift_cmd)) return cmd_lift(file, n, k, y, raw_faces, trace);
        if (app.got_subcommand(verify_cmd)) {
            if (budget == 0) {
                budget = 100'000'000ULL;
                if (const char* env = std::getenv("MALTSEV_KAN_BUDGET")) budget = std::stoull(env);
            }
            return cmd_verify_fibration(file, max_dim, budget, threads, report_path);
        }
        if (app.got_subcommand(kan12_cmd)) {
            if (m < 2) throw UsageError("--m must be at least 2");
            return cmd_kan12(m, pretty);
        }
        if (app.got_subcommand(gen_cmd)) return cmd_gen_fixture(kind, m, levels, out);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
