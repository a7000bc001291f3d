#include "exwb/bounds.hpp"
#include "exwb/canonical.hpp"
#include "exwb/graph.hpp"
#include "exwb/realization.hpp"

#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

using namespace exwb;

TEST_CASE("bundled realization reproduces the exact probabilities") {
    const QuantumRealization r = canonical_realization();
    REQUIRE(r.dimension == 4);
    REQUIRE(r.family.vectors.size() == 10);

    for (int v = 1; v <= 10; ++v) {
        const Rational p =
            vertex_probability(r.state, r.family.vectors[static_cast<std::size_t>(v - 1)]);
        const bool heavy = (v == 1 || v == 4 || v == 6 || v == 8);
        CHECK(p == (heavy ? Rational(1, 2) : Rational(1, 4)));
    }
    CHECK(quantum_sum(r.state, r.family) == Rational(7, 2));

    // A family holding just the state itself sums to the self-projection, 1.
    ProjectorFamily self;
    self.vectors.push_back(r.state.amplitudes);
    CHECK(quantum_sum(r.state, self) == Rational(1));

    // The sum never exceeds the fractional packing number of the graph the
    // family is compatible with; here both are exactly 7/2.
    CHECK(quantum_sum(r.state, r.family) <= fractional_packing(canonical_graph()).value);
}

TEST_CASE("vertex probabilities against a different state") {
    // With state (1,1,1,1) the exact values follow from |sum of entries|^2.
    const QuantumRealization r = canonical_realization();
    StateVector flat;
    flat.amplitudes.assign(4, RationalComplex(1, 0));

    const std::vector<Rational> expected = {
        Rational(1, 2), Rational(0), Rational(0), Rational(0), Rational(1),
        Rational(0),    Rational(1, 4), Rational(1, 2), Rational(1, 4), Rational(1, 4)};
    Rational sum(0);
    for (int v = 1; v <= 10; ++v) {
        const auto& vec = r.family.vectors[static_cast<std::size_t>(v - 1)];
        const Rational p = vertex_probability(flat, vec);
        CHECK(p == expected[static_cast<std::size_t>(v - 1)]);
        sum += p;

        // The exact value agrees with a plain floating-point evaluation.
        std::complex<double> ip(0, 0);
        double n2s = 0, n2v = 0;
        for (int k = 0; k < 4; ++k) {
            const std::complex<double> a(to_double(flat.amplitudes[k].re),
                                         to_double(flat.amplitudes[k].im));
            const std::complex<double> b(to_double(vec[k].re), to_double(vec[k].im));
            ip += std::conj(a) * b;
            n2s += std::norm(a);
            n2v += std::norm(b);
        }
        CHECK(std::abs(to_double(p) - std::norm(ip) / (n2s * n2v)) <= 1e-12);
    }
    CHECK(sum == Rational(11, 4));
}

TEST_CASE("probabilities are scale and global-phase invariant") {
    const QuantumRealization r = canonical_realization();
    const auto& v8 = r.family.vectors[7];

    StateVector scaled = r.state;
    for (auto& a : scaled.amplitudes)
        a = a * RationalComplex(Rational(-5, 3), Rational(0));
    CHECK(vertex_probability(scaled, v8) == vertex_probability(r.state, v8));

    StateVector phased = r.state;
    for (auto& a : phased.amplitudes)
        a = a * RationalComplex(0, 1);  // global factor i
    CHECK(vertex_probability(phased, v8) == vertex_probability(r.state, v8));

    auto v8_scaled = v8;
    for (auto& a : v8_scaled)
        a = a * RationalComplex(7, 2);
    CHECK(vertex_probability(r.state, v8_scaled) == vertex_probability(r.state, v8));
}

TEST_CASE("vertex probability input validation") {
    StateVector psi;
    psi.amplitudes = {RationalComplex(1, 0), RationalComplex(0, 0)};
    CHECK_THROWS_AS(vertex_probability(psi, {RationalComplex(0, 0), RationalComplex(0, 0)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(vertex_probability(psi, {RationalComplex(1, 0)}), std::invalid_argument);
}

TEST_CASE("compatibility verification") {
    const QuantumRealization r = canonical_realization();
    const ExclusivityGraph g = canonical_graph();

    SUBCASE("bundled family is exactly compatible") {
        const auto overlaps = verify_compatibility(r.family, g);
        REQUIRE(overlaps.size() == 21);
        for (const auto& e : overlaps) {
            CHECK(e.overlap2 == Rational(0));
            CHECK_FALSE(e.violation);
        }
    }

    SUBCASE("corrupting one vector flags exactly its edges") {
        ProjectorFamily broken = r.family;
        broken.vectors[0] = {RationalComplex(0, 0), RationalComplex(0, 0), RationalComplex(1, 0),
                             RationalComplex(2, 0)};
        const auto overlaps = verify_compatibility(broken, g);
        int violations = 0;
        for (const auto& e : overlaps)
            if (e.violation) {
                ++violations;
                CHECK((e.i == 1 || e.j == 1));
                CHECK(e.overlap2 > Rational(0));
            }
        CHECK(violations == 4);  // vertex 1 sits on four edges
    }

    SUBCASE("tolerance can absorb a small overlap") {
        ProjectorFamily broken = r.family;
        broken.vectors[0] = {RationalComplex(0, 0), RationalComplex(0, 0), RationalComplex(1, 0),
                             RationalComplex(2, 0)};
        // tol = 1 accepts any overlap.
        const auto overlaps = verify_compatibility(broken, g, Rational(1));
        for (const auto& e : overlaps)
            CHECK_FALSE(e.violation);
    }
}

TEST_CASE("overlap classification") {
    const QuantumRealization r = canonical_realization();
    const auto matrix = overlap_classification(r.family);
    REQUIRE(matrix.size() == 10);

    // (1,2) orthogonal, (1,4) unbiased at exactly 1/d = 1/4, diagonal 1.
    CHECK(matrix[0][1].kind == OverlapKind::orthogonal);
    CHECK(matrix[0][1].value == Rational(0));
    CHECK(matrix[0][3].kind == OverlapKind::unbiased);
    CHECK(matrix[0][3].value == Rational(1, 4));
    CHECK(matrix[0][0].kind == OverlapKind::other);
    CHECK(matrix[0][0].value == Rational(1));
    // Symmetry of |<.|.>|^2.
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            CHECK(matrix[i][j].value == matrix[j][i].value);
}

TEST_CASE("realization JSON round trip") {
    const QuantumRealization r = canonical_realization();
    const std::string text = r.to_json_text();
    const QuantumRealization back = QuantumRealization::from_json_text(text);
    CHECK(back.dimension == r.dimension);
    CHECK(back.state.amplitudes.size() == r.state.amplitudes.size());
    for (std::size_t k = 0; k < r.state.amplitudes.size(); ++k)
        CHECK(back.state.amplitudes[k] == r.state.amplitudes[k]);
    for (std::size_t i = 0; i < r.family.vectors.size(); ++i)
        for (std::size_t k = 0; k < r.family.vectors[i].size(); ++k)
            CHECK(back.family.vectors[i][k] == r.family.vectors[i][k]);
    CHECK(back.to_json_text() == text);
}

TEST_CASE("realization JSON accepts integer and fraction shorthand") {
    const std::string text = R"({
      "dimension": 2,
      "state": [1, 0],
      "vectors": {"1": ["1/2", "1/2"], "2": [[0, 1], 1]}
    })";
    const QuantumRealization r = QuantumRealization::from_json_text(text);
    CHECK(r.dimension == 2);
    CHECK(r.state.amplitudes[0] == RationalComplex(1, 0));
    CHECK(r.family.vectors[0][0] == RationalComplex(Rational(1, 2), Rational(0)));
    CHECK(r.family.vectors[1][0] == RationalComplex(0, 1));
    CHECK(r.family.vectors[1][1] == RationalComplex(1, 0));
}

TEST_CASE("realization JSON rejects malformed input with field names") {
    CHECK_THROWS_WITH_AS(
        QuantumRealization::from_json_text(R"({"state": [1], "vectors": {"1": [1]}})"),
        doctest::Contains("dimension:"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        QuantumRealization::from_json_text(
            R"({"dimension": 2, "state": [0, 0], "vectors": {"1": [1, 0]}})"),
        doctest::Contains("state:"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        QuantumRealization::from_json_text(
            R"({"dimension": 2, "state": [1, 0], "vectors": {"1": [1, 0], "3": [0, 1]}})"),
        doctest::Contains("vectors:"), std::invalid_argument);
    CHECK_THROWS_AS(
        QuantumRealization::from_json_text(
            R"({"dimension": 2, "state": [1, 0], "vectors": {"1": [1, 0, 0]}})"),
        std::invalid_argument);
}

TEST_CASE("realization report against the bundled graph") {
    const RealizationReport report =
        realization_report(canonical_realization(), canonical_graph());
    CHECK(report.dimension == 4);
    CHECK(report.quantum_sum == Rational(7, 2));
    CHECK(report.violation_count == 0);
    REQUIRE(report.per_vertex_probabilities.size() == 10);
    CHECK(report.per_vertex_probabilities[0] == Rational(1, 2));
    CHECK(report.per_vertex_probabilities[1] == Rational(1, 4));

    const std::string json = realization_report_to_json(report);
    CHECK(json.find("\"quantum_sum\": \"7/2\"") != std::string::npos);
    CHECK(json.find("\"violation_count\": 0") != std::string::npos);

    // Vertex-count mismatch is a hard error.
    CHECK_THROWS_AS(realization_report(canonical_realization(), ExclusivityGraph(9, {})),
                    std::invalid_argument);
}
