#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dqm/dqm_file.hpp"
#include "dqm/dual_decompositions.hpp"
#include "dqm/error.hpp"
#include "dqm/inequalities.hpp"
#include "dqm/random.hpp"
#include "dqm/verification.hpp"

namespace dqm::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string format_real12(double v) {
    if (v == 0.0) v = 0.0;  // drops the sign of -0
    std::ostringstream os;
    os << std::setprecision(12) << v;
    std::string s = os.str();
    return s == "-0" ? "0" : s;
}

Json pair_json(const DualNumber& d) { return Json::array({d.st, d.in}); }

std::string join(const std::vector<DualNumber>& values) {
    std::string s;
    for (const auto& v : values) s += (s.empty() ? "" : " ") + format_dual(v.st, v.in);
    return s;
}

std::string echo(const std::vector<std::string>& args) {
    std::string s;
    for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
    return s;
}

struct Options {
    std::string file_a;
    std::string file_b;
    std::optional<double> cluster_tol;
    bool json = false;
    std::string norm_kind = "fro";
    std::string check_name;
    std::optional<std::size_t> k;
    std::string gen_kind;
    std::size_t m = 0;
    std::optional<std::size_t> n;
    std::uint64_t seed = SuiteConfig{}.seed;
    std::vector<std::string> outs;
    std::size_t trials = SuiteConfig{}.trials;
    std::size_t max_size = SuiteConfig{}.max_size;
    std::vector<int> criteria;
    std::optional<int> inject;
};

int cmd_eig(const Options& o, std::ostream& out) {
    const auto values = eigenvalues(load_dqm(o.file_a), o.cluster_tol);
    if (o.json) {
        Json j{{"command", "eig"}, {"file", o.file_a}, {"eigenvalues", Json::array()}};
        for (const auto& v : values) j["eigenvalues"].push_back(pair_json(v));
        out << j.dump(2) << "\n";
    } else {
        out << join(values) << "\n";
    }
    return Pass;
}

int cmd_svd(const Options& o, std::ostream& out) {
    const DualSVD d = dq_svd(load_dqm(o.file_a), o.cluster_tol);
    if (o.json) {
        Json j{{"command", "svd"}, {"file", o.file_a}, {"sigmas", Json::array()}};
        for (const auto& v : d.sigmas) j["sigmas"].push_back(pair_json(v));
        j["r"] = d.appreciable_rank;
        j["t"] = d.rank;
        j["s"] = d.sigmas.size();
        out << j.dump(2) << "\n";
    } else {
        out << join(d.sigmas) << "; r=" << d.appreciable_rank << " t=" << d.rank << " s=" << d.sigmas.size() << "\n";
    }
    return Pass;
}

int cmd_norm(const Options& o, std::ostream& out) {
    const DQMatrix a = load_dqm(o.file_a);
    const DualNumber v = o.norm_kind == "spec" ? spectral_norm(a) : frobenius_norm(a);
    if (o.json) {
        out << Json{{"command", "norm"}, {"kind", o.norm_kind}, {"file", o.file_a}, {"value", pair_json(v)}}.dump(2) << "\n";
    } else {
        out << format_dual(v.st, v.in) << "\n";
    }
    return Pass;
}

std::vector<InequalityReport> evaluate_check(const Options& o) {
    const DQMatrix a = load_dqm(o.file_a);
    const auto second = [&] {
        if (o.file_b.empty()) throw Error(ErrorCode::PreconditionViolated, "check '" + o.check_name + "' needs two files");
        return load_dqm(o.file_b);
    };
    const std::string& name = o.check_name;
    if (name == "vn") return {von_neumann_check(a, second())};
    if (name == "vn-herm") return {hermitian_trace_check(a, second())};
    if (name == "hw") return {hoffman_wielandt_singular(a, second())};
    if (name == "hw-herm") return {hoffman_wielandt_hermitian(a, second())};
    if (name == "lem43") return hermitian_part_vs_singular(a);
    if (name == "kyfan") {
        if (o.k) return {ky_fan_partial_trace_check(a, *o.k)};
        return ky_fan_partial_trace_all(a);
    }
    // cauchy: both files are read as vectors in row-major order
    const DQMatrix b = second();
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vectors differ in length");
    return {cauchy_schwarz_check(a.entries(), b.entries())};
}

int cmd_check(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const auto reports = evaluate_check(o);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    bool holds = true;
    bool condition = true;
    std::optional<DualNumber> worst;
    for (const auto& r : reports) {
        holds = holds && r.holds;
        condition = condition && r.condition_met;
        if (!worst || r.slack < *worst) worst = r.slack;
    }
    const int code = !condition ? Usage : holds ? Pass : Violated;
    const std::string verdict = !condition ? "condition not met" : holds ? "holds" : "violated";

    if (o.json) {
        Json j{{"command", echo(args)}, {"seed", nullptr}, {"instances", reports.size()}, {"checks", Json::array()}};
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const auto& r = reports[i];
            j["checks"].push_back(Json{{"index", i + 1},
                                       {"holds", r.holds},
                                       {"condition_met", r.condition_met},
                                       {"lhs", pair_json(r.lhs)},
                                       {"rhs", pair_json(r.rhs)},
                                       {"slack", pair_json(r.slack)}});
        }
        j["worst_slack"] = worst ? pair_json(*worst) : Json(nullptr);
        j["result"] = verdict;
        j["wall_seconds"] = wall;
        out << j.dump(2) << "\n";
        return code;
    }
    out << "command: " << echo(args) << "\n";
    out << "instances: " << reports.size() << "\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        out << (r.holds ? "[PASS] " : "[FAIL] ") << o.check_name;
        if (reports.size() > 1) out << " #" << i + 1;
        out << ": lhs " << format_dual(r.lhs.st, r.lhs.in) << " rhs " << format_dual(r.rhs.st, r.rhs.in) << " slack "
            << format_dual(r.slack.st, r.slack.in);
        if (!r.condition_met) out << " (condition not met)";
        out << "\n";
    }
    if (worst) out << "worst slack: " << format_dual(worst->st, worst->in) << "\n";
    out << "wall time: " << std::fixed << std::setprecision(3) << wall << " s\n" << std::defaultfloat;
    out << "result: " << verdict << "\n";
    return code;
}

int cmd_gen(const Options& o, std::ostream& out) {
    const GeneratorKind kind = parse_generator_kind(o.gen_kind);
    const std::size_t expected = produces_pair(kind) ? 2 : 1;
    if (o.outs.size() != expected) {
        throw Error(ErrorCode::PreconditionViolated,
                    "kind '" + o.gen_kind + "' writes " + std::to_string(expected) + " file(s); pass --out that many times");
    }
    const auto mats = generate(kind, o.m, o.n.value_or(o.m), o.seed);
    for (std::size_t i = 0; i < mats.size(); ++i) {
        save_dqm(o.outs[i], mats[i]);
        out << "wrote " << o.outs[i] << " (" << mats[i].rows() << "x" << mats[i].cols() << ")\n";
    }
    return Pass;
}

int cmd_verify(const Options& o, std::ostream& out) {
    SuiteConfig config;
    config.seed = o.seed;
    config.trials = o.trials;
    config.max_size = o.max_size;
    config.criteria = o.criteria;
    config.inject_failure = o.inject;
    config.cli = [](const std::vector<std::string>& args) {
        std::ostringstream sink;
        return run(args, sink, sink);
    };
    const RunReport report = run_suite(config);
    if (o.json) {
        out << to_json(report) << "\n";
    } else {
        out << "command: " << report.command << "\n";
        for (const auto& c : report.checks) {
            out << summary_line(c) << "\n";
            for (const auto& n : c.notes) out << "    " << n << "\n";
        }
        out << "instances: " << report.instances << "\n";
        out << "wall time: " << std::fixed << std::setprecision(2) << report.wall_seconds << " s\n" << std::defaultfloat;
        out << "result: " << (report.passed() ? "all checks passed" : "failures present") << "\n";
    }
    return report.passed() ? Pass : Violated;
}

}  // namespace

std::string format_dual(double st, double in) { return "(" + format_real12(st) + ", " + format_real12(in) + ")"; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dual quaternion matrix decompositions and inequality checks", "dqm"};
    app.require_subcommand(1);
    Options o;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--cluster-tol", o.cluster_tol, "multiplicity clustering tolerance")->check(CLI::NonNegativeNumber);
        sub->add_flag("--json", o.json, "machine-readable output");
    };

    auto* eig = app.add_subcommand("eig", "eigenvalues of a Hermitian matrix");
    eig->add_option("file", o.file_a)->required();
    add_common(eig);

    auto* svd = app.add_subcommand("svd", "singular values with ranks r, t and s = min(m, n)");
    svd->add_option("file", o.file_a)->required();
    add_common(svd);

    auto* norm = app.add_subcommand("norm", "Frobenius or spectral norm");
    norm->add_option("file", o.file_a)->required();
    norm->add_option("--kind", o.norm_kind)->check(CLI::IsMember({"fro", "spec"}));
    add_common(norm);

    auto* check = app.add_subcommand("check", "evaluate one inequality");
    check->add_option("name", o.check_name)
        ->required()
        ->check(CLI::IsMember({"vn", "vn-herm", "hw", "hw-herm", "kyfan", "lem43", "cauchy"}));
    check->add_option("fileA", o.file_a)->required();
    check->add_option("fileB", o.file_b);
    check->add_option("--k", o.k, "prefix length for kyfan (all k when omitted)");
    add_common(check);

    auto* gen = app.add_subcommand("gen", "write seeded random matrices");
    gen->add_option("--kind", o.gen_kind)
        ->required()
        ->check(CLI::IsMember({"general", "hermitian", "infinitesimal", "eps-perturb-pair", "clustered-herm-pair"}));
    gen->add_option("--m", o.m)->required();
    gen->add_option("--n", o.n, "columns (defaults to m; square kinds ignore it)");
    gen->add_option("--seed", o.seed);
    gen->add_option("--out", o.outs, "output path; pair kinds take it twice")->required();

    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--seed", o.seed, "base seed for every criterion");
    verify->add_option("--trials", o.trials, "base trial count (per-criterion counts scale from it)");
    verify->add_option("--max-size", o.max_size, "largest m or n drawn");
    verify->add_option("--criteria", o.criteria, "subset of criteria 1-10")->delimiter(',');
    verify->add_option("--inject-failure", o.inject)->group("");
    verify->add_flag("--json", o.json, "machine-readable output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        // help and version requests report success
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: " << e.what() << "\n";
        return Usage;
    }

    try {
        if (eig->parsed()) return cmd_eig(o, out);
        if (svd->parsed()) return cmd_svd(o, out);
        if (norm->parsed()) return cmd_norm(o, out);
        if (check->parsed()) return cmd_check(o, args, out);
        if (gen->parsed()) return cmd_gen(o, out);
        if (o.trials == 0) throw Error(ErrorCode::PreconditionViolated, "--trials must be positive");
        return cmd_verify(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return Usage;
    }
}

}  // namespace dqm::cli
