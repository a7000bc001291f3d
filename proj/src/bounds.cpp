#include "exwb/bounds.hpp"

#include "exwb/round.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace exwb {

namespace {

constexpr std::size_t kMaxCliqueRows = 100000;

}  // namespace

FractionalPackingCertificate fractional_packing(const ExclusivityGraph& g) {
    const int n = g.vertex_count();
    auto cliques = maximal_cliques(g);
    if (cliques.size() > kMaxCliqueRows)
        throw SolverError("fractional_packing: clique enumeration overflow (" +
                          std::to_string(cliques.size()) + " maximal cliques)");

    // One row per maximal clique; smaller cliques are dominated by these.
    std::vector<std::vector<Rational>> a(cliques.size(),
                                         std::vector<Rational>(static_cast<std::size_t>(n)));
    for (std::size_t q = 0; q < cliques.size(); ++q)
        for (const int v : cliques[q].members)
            a[q][static_cast<std::size_t>(v - 1)] = 1;
    const std::vector<Rational> b(cliques.size(), Rational(1));
    const std::vector<Rational> c(static_cast<std::size_t>(n), Rational(1));

    LpSolution lp = solve_packing_lp(a, b, c);

    FractionalPackingCertificate cert;
    cert.value = lp.value;
    cert.weights = std::move(lp.x);
    cert.clique_duals = std::move(lp.dual);
    cert.cliques = std::move(cliques);

    // Every vertex lies in some maximal clique, so w_i <= 1 already follows
    // from the rows; re-check everything anyway, exactly.
    Rational total(0);
    for (const auto& w : cert.weights) {
        if (w < 0 || w > 1)
            throw SolverError("fractional_packing: weight outside [0,1]");
        total += w;
    }
    if (total != cert.value)
        throw SolverError("fractional_packing: weights do not sum to the reported value");
    for (const auto& q : cert.cliques) {
        Rational s(0);
        for (const int v : q.members)
            s += cert.weights[static_cast<std::size_t>(v - 1)];
        if (s > 1)
            throw SolverError("fractional_packing: clique constraint violated");
    }
    return cert;
}

BoundsReport bounds_report(const ExclusivityGraph& g) {
    BoundsReport report;
    auto [alpha, witness] = independence_number(g);
    report.alpha = alpha;
    report.alpha_witness = witness.members;

    ThetaOptions opts;
    opts.tol = 1e-8;
    const ThetaResult theta = lovasz_theta(g, opts);
    report.theta = theta.value;
    report.theta_gap = theta.duality_gap;

    const FractionalPackingCertificate packing = fractional_packing(g);
    report.alpha_star = packing.value;
    report.weights = packing.weights;

    const double alpha_star = to_double(report.alpha_star);
    report.no_postquantum_advantage =
        std::abs(report.theta - alpha_star) <= 1e-6 && Rational(report.alpha) < report.alpha_star;
    return report;
}

std::string bounds_report_to_json(const BoundsReport& report) {
    nlohmann::ordered_json doc;
    doc["alpha"] = report.alpha;
    doc["alpha_witness"] = report.alpha_witness;
    doc["theta"] = round12(report.theta);
    doc["theta_gap"] = round12(report.theta_gap);
    doc["alpha_star"] = to_fraction_string(report.alpha_star);
    auto weights = nlohmann::ordered_json::array();
    for (const auto& w : report.weights)
        weights.push_back(to_fraction_string(w));
    doc["weights"] = weights;
    doc["no_postquantum_advantage"] = report.no_postquantum_advantage;
    return doc.dump(2) + "\n";
}

}  // namespace exwb
