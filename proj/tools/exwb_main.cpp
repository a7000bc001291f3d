#include "exwb/bounds.hpp"
#include "exwb/canonical.hpp"
#include "exwb/expsim.hpp"
#include "exwb/graph.hpp"
#include "exwb/realization.hpp"
#include "exwb/round.hpp"
#include "exwb/simplex.hpp"
#include "exwb/theta.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr std::uint64_t kDefaultSeed = 12345;  // fixed default: bare reruns reproduce

constexpr const char* kSchemaFooter = R"(File schemas:
  graph        {"n": <int>, "edges": [[i, j], ...]} with 1-based vertex indices.
  realization  {"dimension": d, "state": [amp, ...], "vectors": {"1": [amp, ...], ...}}
               where amp is an integer, a "num/den" string, or a [re, im] pair of those.
  setup        {"input": {"pol": "H"|"V", "oam": m}, "elements": [{"kind": ...}, ...]}.
  report       the JSON written by `simulate` (readable back via `certify --report`).

Exit codes: 0 success/certified, 1 negative verdict, 2 input error, 3 solver failure.)";

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot open output file " + path);
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct SimOptions {
    std::string graph_path;
    std::string realization_path;
    long long shots = 1000000;
    std::uint64_t seed = kDefaultSeed;
    double depolarizing = 0.0;
    double misalign_sigma = 0.0;
    std::string out_path;
    std::string format = "json";
    exwb::HistogramSpec hist;
};

exwb::ExperimentReport run_simulation(const SimOptions& opt, const exwb::ExclusivityGraph& g) {
    const exwb::QuantumRealization realization =
        exwb::QuantumRealization::load(opt.realization_path);
    exwb::NoiseModel noise;
    noise.depolarizing_weight = opt.depolarizing;
    noise.misalignment_sigma = opt.misalign_sigma;
    noise.shots_per_setting = opt.shots;
    noise.dimension = realization.dimension;
    const int alpha = exwb::independence_number(g).first;
    return exwb::run_experiment(realization, g, noise, opt.seed, alpha, opt.hist);
}

int cmd_bounds(const std::string& graph_path, const std::string& out_path) {
    const exwb::ExclusivityGraph g = exwb::ExclusivityGraph::load(graph_path);
    write_output(out_path, exwb::bounds_report_to_json(exwb::bounds_report(g)));
    return 0;
}

int cmd_verify(const std::string& graph_path, const std::string& realization_path,
               const std::string& tol_text, const std::string& out_path) {
    const exwb::ExclusivityGraph g = exwb::ExclusivityGraph::load(graph_path);
    const exwb::QuantumRealization realization = exwb::QuantumRealization::load(realization_path);
    const exwb::Rational tol = exwb::parse_rational(tol_text);
    const exwb::RealizationReport report = exwb::realization_report(realization, g, tol);
    write_output(out_path, exwb::realization_report_to_json(report));
    return report.violation_count == 0 ? 0 : 1;
}

int cmd_simulate(const SimOptions& opt) {
    const exwb::ExclusivityGraph g = exwb::ExclusivityGraph::load(opt.graph_path);
    const exwb::ExperimentReport report = run_simulation(opt, g);
    if (opt.format == "csv") {
        std::string csv = "# seed=" + std::to_string(opt.seed) + "\n";
        csv += exwb::histogram_to_csv(report.histogram);
        write_output(opt.out_path, csv);
    } else {
        write_output(opt.out_path, exwb::experiment_report_to_json(report));
    }
    return 0;
}

int cmd_certify(const SimOptions& opt, const std::string& report_path) {
    const exwb::ExclusivityGraph g = exwb::ExclusivityGraph::load(opt.graph_path);
    const int alpha = exwb::independence_number(g).first;
    exwb::EpsilonReport eps;
    nlohmann::ordered_json doc;
    if (!report_path.empty()) {
        const exwb::ExperimentReport stored =
            exwb::experiment_report_from_json(read_file(report_path));
        if (static_cast<int>(stored.matrix.entries.size()) != g.vertex_count())
            throw std::invalid_argument("report: matrix is " +
                                        std::to_string(stored.matrix.entries.size()) +
                                        "x... but graph has " +
                                        std::to_string(g.vertex_count()) + " vertices");
        eps = exwb::epsilon_certify(stored.table.sum, alpha, g.vertex_count(),
                                    exwb::symmetrized_edge_epsilons(stored.matrix, g));
        doc["seed"] = stored.seed;
        doc["source"] = report_path;
    } else {
        const exwb::ExperimentReport fresh = run_simulation(opt, g);
        eps = fresh.epsilon;
        doc["seed"] = opt.seed;
        doc["source"] = "fresh simulation";
    }
    doc["epsilon"] = nlohmann::ordered_json::parse(exwb::epsilon_report_to_json(eps));
    write_output(opt.out_path, doc.dump(2) + "\n");
    if (!eps.advantage)
        std::cerr << "verdict: no advantage (sum " << eps.sigma_measured
                  << " does not exceed the classical bound " << eps.classical_bound << ")\n";
    return eps.certified ? 0 : 1;
}

int cmd_bench(const std::string& out_path) {
    using clock = std::chrono::steady_clock;
    const auto ms = [](clock::time_point a, clock::time_point b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
    };
    nlohmann::ordered_json doc;

    auto t0 = clock::now();
    const exwb::ExclusivityGraph g10 = exwb::canonical_graph();
    const exwb::BoundsReport b10 = exwb::bounds_report(g10);
    auto t1 = clock::now();
    nlohmann::ordered_json jg;
    jg["alpha"] = b10.alpha;
    jg["theta"] = exwb::round12(b10.theta);
    jg["alpha_star"] = exwb::to_fraction_string(b10.alpha_star);
    doc["canonical_graph"] = jg;
    std::cerr << "bounds(canonical graph): " << ms(t0, t1) << " ms\n";

    t0 = clock::now();
    const exwb::ExclusivityGraph c5(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}});
    const exwb::BoundsReport bc5 = exwb::bounds_report(c5);
    t1 = clock::now();
    nlohmann::ordered_json jc;
    jc["alpha"] = bc5.alpha;
    jc["theta"] = exwb::round12(bc5.theta);
    jc["alpha_star"] = exwb::to_fraction_string(bc5.alpha_star);
    doc["c5"] = jc;
    std::cerr << "bounds(C5): " << ms(t0, t1) << " ms\n";

    t0 = clock::now();
    exwb::NoiseModel noise;
    noise.shots_per_setting = 10000;
    const exwb::ExperimentReport rep =
        exwb::run_experiment(exwb::canonical_realization(), g10, noise, kDefaultSeed, b10.alpha);
    t1 = clock::now();
    nlohmann::ordered_json js;
    js["seed"] = kDefaultSeed;
    js["shots_per_setting"] = noise.shots_per_setting;
    js["sum"] = exwb::round12(rep.table.sum);
    js["certified"] = rep.epsilon.certified;
    doc["simulate"] = js;
    std::cerr << "simulate(10^4 shots): " << ms(t0, t1) << " ms\n";

    write_output(out_path, doc.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exwb — exclusivity-graph workbench: classical, quantum, and postquantum "
                 "bounds, realization verification, and photonic experiment simulation"};
    app.require_subcommand(1);
    app.footer(kSchemaFooter);

    std::string graph_path, realization_path, out_path, tol_text = "0", report_path;
    SimOptions sim;

    auto* bounds = app.add_subcommand(
        "bounds", "Compute alpha, theta, and the fractional packing number of a graph");
    bounds->add_option("--graph", graph_path, "graph JSON file")->required();
    bounds->add_option("--out", out_path, "output path (default: stdout)");
    bounds->footer(kSchemaFooter);

    auto* verify = app.add_subcommand(
        "verify", "Check a realization against a graph: edge orthogonality and probabilities");
    verify->add_option("--graph", graph_path, "graph JSON file")->required();
    verify->add_option("--realization", realization_path, "realization JSON file")->required();
    verify->add_option("--tol", tol_text,
                       "orthogonality tolerance as a rational, e.g. 0 or 1/1000 (default 0)");
    verify->add_option("--out", out_path, "output path (default: stdout)");
    verify->footer(kSchemaFooter);

    const auto add_sim_flags = [&](CLI::App* cmd, bool realization_required) {
        cmd->add_option("--graph", sim.graph_path, "graph JSON file")->required();
        auto* r = cmd->add_option("--realization", sim.realization_path, "realization JSON file");
        if (realization_required)
            r->required();
        cmd->add_option("--shots", sim.shots, "shots per setting (default 1000000)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", sim.seed, "RNG seed (default 12345)");
        cmd->add_option("--depolarizing", sim.depolarizing,
                        "depolarizing weight in [0,1] (default 0)");
        cmd->add_option("--misalign-sigma", sim.misalign_sigma,
                        "analyzer misalignment scale in radians (default 0)");
        cmd->add_option("--out", sim.out_path, "output path (default: stdout)");
        cmd->footer(kSchemaFooter);
    };

    auto* simulate = app.add_subcommand(
        "simulate", "Monte Carlo run: per-vertex table, exclusivity matrix, histogram, epsilon");
    add_sim_flags(simulate, true);
    simulate->add_option("--format", sim.format, "json (full report) or csv (histogram bins)")
        ->check(CLI::IsMember({"json", "csv"}));
    simulate->add_option("--hist-lo", sim.hist.lo, "histogram lower edge (default 0)");
    simulate->add_option("--hist-hi", sim.hist.hi, "histogram upper edge (default 0.08)");
    simulate->add_option("--hist-width", sim.hist.width, "histogram bin width (default 0.005)");

    auto* certify = app.add_subcommand(
        "certify", "Epsilon-robustness verdict from a fresh simulation or a stored report");
    add_sim_flags(certify, false);
    certify->add_option("--report", report_path,
                        "existing simulate JSON report to certify instead of simulating");

    auto* bench = app.add_subcommand(
        "bench", "Deterministic benchmark values to --out, timings to stderr");
    bench->add_option("--out", out_path, "output path (default: stdout)");
    bench->footer(kSchemaFooter);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (bounds->parsed())
            return cmd_bounds(graph_path, out_path);
        if (verify->parsed())
            return cmd_verify(graph_path, realization_path, tol_text, out_path);
        if (simulate->parsed())
            return cmd_simulate(sim);
        if (certify->parsed()) {
            if (report_path.empty() && sim.realization_path.empty())
                throw std::invalid_argument("certify needs --realization or --report");
            return cmd_certify(sim, report_path);
        }
        if (bench->parsed())
            return cmd_bench(out_path);
    } catch (const exwb::SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
