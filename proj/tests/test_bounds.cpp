#include "exwb/bounds.hpp"
#include "exwb/canonical.hpp"
#include "exwb/graph.hpp"
#include "exwb/rng.hpp"
#include "exwb/theta.hpp"

#include "doctest.h"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

using namespace exwb;

namespace {

ExclusivityGraph cycle5() {
    return ExclusivityGraph(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}});
}

ExclusivityGraph complete(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            edges.emplace_back(i, j);
    return ExclusivityGraph(n, edges);
}

ExclusivityGraph random_graph(int n, double p, std::uint64_t seed) {
    Xoshiro256 rng = setting_stream(seed, 1, 1);
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (rng.uniform01() < p)
                edges.emplace_back(i, j);
    return ExclusivityGraph(n, edges);
}

int brute_force_alpha(const ExclusivityGraph& g) {
    const int n = g.vertex_count();
    int best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        bool ok = true;
        for (const auto& [i, j] : g.edges())
            if ((mask >> (i - 1) & 1) && (mask >> (j - 1) & 1)) {
                ok = false;
                break;
            }
        if (!ok)
            continue;
        int size = 0;
        for (int v = 0; v < n; ++v)
            size += static_cast<int>(mask >> v & 1);
        best = std::max(best, size);
    }
    return best;
}

// The certificate's own feasibility, re-verified here in exact arithmetic.
void check_packing_feasible(const ExclusivityGraph& g, const FractionalPackingCertificate& c) {
    REQUIRE(c.weights.size() == static_cast<std::size_t>(g.vertex_count()));
    Rational sum(0);
    for (const auto& w : c.weights) {
        CHECK(w >= 0);
        CHECK(w <= 1);
        sum += w;
    }
    CHECK(sum == c.value);
    for (const auto& clique : c.cliques) {
        Rational row(0);
        for (int v : clique.members)
            row += c.weights[static_cast<std::size_t>(v - 1)];
        CHECK(row <= 1);
    }
}

}  // namespace

TEST_CASE("fractional packing on complete graphs") {
    // K_n has a single maximal clique, so alpha* = 1.
    for (int n : {3, 5}) {
        const FractionalPackingCertificate c = fractional_packing(complete(n));
        CHECK(c.value == Rational(1));
        check_packing_feasible(complete(n), c);
    }
}

TEST_CASE("fractional packing on the 5-cycle") {
    const FractionalPackingCertificate c = fractional_packing(cycle5());
    CHECK(c.value == Rational(5, 2));
    check_packing_feasible(cycle5(), c);

    // The optimum of C5 is unique (w_i = 1/2 everywhere): every edge
    // constraint is tight and symmetric. Freeze it.
    for (const auto& w : c.weights)
        CHECK(w == Rational(1, 2));

    // Exact dual certificate: C5's maximal cliques are its 5 edges; y = 1/2
    // on each covers every vertex with total 5/2.
    REQUIRE(c.cliques.size() == 5);
    REQUIRE(c.clique_duals.size() == 5);
    Rational dual_total(0);
    for (const auto& y : c.clique_duals) {
        CHECK(y >= 0);
        dual_total += y;
    }
    CHECK(dual_total == c.value);
}

TEST_CASE("fractional packing on the bundled ten-vertex graph") {
    const ExclusivityGraph g = canonical_graph();
    const FractionalPackingCertificate c = fractional_packing(g);
    CHECK(c.value == Rational(7, 2));
    check_packing_feasible(g, c);

    // The realization's own probabilities are a feasible point with the same
    // total, so they are optimal too: alpha* is attained by the quantum
    // assignment {1,4,6,8} -> 1/2, rest -> 1/4.
    std::vector<Rational> quantum(10, Rational(1, 4));
    for (int v : {1, 4, 6, 8})
        quantum[static_cast<std::size_t>(v - 1)] = Rational(1, 2);
    Rational total(0);
    for (const auto& w : quantum)
        total += w;
    CHECK(total == Rational(7, 2));
    for (const auto& clique : maximal_cliques(g)) {
        Rational row(0);
        for (int v : clique.members)
            row += quantum[static_cast<std::size_t>(v - 1)];
        CHECK(row <= 1);
    }
}

TEST_CASE("lovasz theta on reference graphs") {
    SUBCASE("complete graph") {
        const ThetaResult r = lovasz_theta(complete(5));
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-4));
    }

    SUBCASE("5-cycle hits sqrt(5)") {
        const ThetaResult r = lovasz_theta(cycle5());
        CHECK(r.value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-4));
        CHECK(r.duality_gap < 1e-5);
        CHECK(r.value <= r.dual_bound + 1e-9);
    }

    SUBCASE("edgeless graph") {
        const ThetaResult r = lovasz_theta(ExclusivityGraph(7, {}));
        CHECK(r.value == doctest::Approx(7.0).epsilon(1e-4));
    }

    SUBCASE("bundled ten-vertex graph") {
        const ThetaResult r = lovasz_theta(canonical_graph());
        CHECK(r.value == doctest::Approx(3.5).epsilon(1e-4));
    }
}

TEST_CASE("theta feasible matrix is a certificate") {
    const ExclusivityGraph g = cycle5();
    const ThetaResult r = lovasz_theta(g, {1e-8, 10000});
    const Eigen::MatrixXd& X = r.feasible_matrix;
    REQUIRE(X.rows() == 5);
    REQUIRE(X.cols() == 5);

    CHECK(std::abs(X.trace() - 1.0) < 1e-9);
    for (const auto& [i, j] : g.edges()) {
        CHECK(std::abs(X(i - 1, j - 1)) < 1e-9);
        CHECK(std::abs(X(j - 1, i - 1)) < 1e-9);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(X);
    CHECK(eig.eigenvalues().minCoeff() > -1e-7);
    CHECK(std::abs(X.sum() - r.value) < 1e-9);
}

TEST_CASE("sandwich alpha <= theta <= alpha* on seeded random graphs") {
    int done = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const int n = 4 + static_cast<int>(seed % 9);  // 4..12
        const double p = 0.15 + 0.06 * static_cast<double>(seed % 8);
        const ExclusivityGraph g = random_graph(n, p, seed);

        const int alpha = brute_force_alpha(g);  // exhaustive oracle
        const ThetaResult theta = lovasz_theta(g);
        const FractionalPackingCertificate packing = fractional_packing(g);
        check_packing_feasible(g, packing);

        CHECK(static_cast<double>(alpha) <= theta.value + 1e-4);
        CHECK(theta.value <= to_double(packing.value) + 2e-4);
        ++done;
    }
    CHECK(done == 20);
}

TEST_CASE("bounds report on reference graphs") {
    SUBCASE("5-cycle") {
        const BoundsReport r = bounds_report(cycle5());
        CHECK(r.alpha == 2);
        CHECK(r.theta == doctest::Approx(std::sqrt(5.0)).epsilon(1e-4));
        CHECK(r.alpha_star == Rational(5, 2));
        // theta = sqrt(5) < 5/2: fractional packing still beats quantum here.
        CHECK_FALSE(r.no_postquantum_advantage);
    }

    SUBCASE("complete graph") {
        const BoundsReport r = bounds_report(complete(4));
        CHECK(r.alpha == 1);
        CHECK(r.theta == doctest::Approx(1.0).epsilon(1e-4));
        CHECK(r.alpha_star == Rational(1));
        // alpha = alpha*: nothing beats classical, so no strict advantage.
        CHECK_FALSE(r.no_postquantum_advantage);
    }

    SUBCASE("bundled ten-vertex graph") {
        const BoundsReport r = bounds_report(canonical_graph());
        CHECK(r.alpha == 3);
        CHECK(r.theta == doctest::Approx(3.5).epsilon(1e-4));
        CHECK(r.alpha_star == Rational(7, 2));
        CHECK(r.no_postquantum_advantage);
        CHECK(static_cast<int>(r.alpha_witness.size()) == 3);
    }

    SUBCASE("JSON shape") {
        const std::string text = bounds_report_to_json(bounds_report(cycle5()));
        CHECK(text.find("\"alpha\": 2") != std::string::npos);
        CHECK(text.find("\"alpha_star\": \"5/2\"") != std::string::npos);
        CHECK(text.find("\"no_postquantum_advantage\": false") != std::string::npos);
        CHECK(text.find("\"theta\"") != std::string::npos);
        CHECK(text.find("\"weights\"") != std::string::npos);
    }
}
