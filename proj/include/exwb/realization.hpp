#pragma once

#include "exwb/graph.hpp"
#include "exwb/rational.hpp"

#include <string>
#include <vector>

namespace exwb {

// State and projector vectors are kept non-normalized; all probability
// formulas normalize explicitly, so integer-entry inputs stay exact.

struct StateVector {
    std::vector<RationalComplex> amplitudes;
};

// Vertex-indexed family: vectors[i] belongs to vertex i+1.
struct ProjectorFamily {
    std::vector<std::vector<RationalComplex>> vectors;
};

struct QuantumRealization {
    int dimension = 0;
    StateVector state;
    ProjectorFamily family;

    static QuantumRealization from_json_text(const std::string& text);
    static QuantumRealization load(const std::string& path);
    std::string to_json_text() const;
};

// |<psi|v>|^2 / (|psi|^2 |v|^2), exact. Throws std::invalid_argument on a
// zero vector or dimension mismatch.
Rational vertex_probability(const StateVector& psi, const std::vector<RationalComplex>& v);

// Sum of vertex_probability over the family.
Rational quantum_sum(const StateVector& psi, const ProjectorFamily& fam);

struct EdgeOverlap {
    int i = 0, j = 0;        // edge endpoints, 1-based
    Rational overlap2;       // normalized |<v_i|v_j>|^2, exact
    bool violation = false;  // overlap above the requested tolerance
};

// Normalized overlap for every graph edge; violation iff
// |<v_i|v_j>| > tol * |v_i| * |v_j| (exact comparison via squares).
std::vector<EdgeOverlap> verify_compatibility(const ProjectorFamily& fam,
                                              const ExclusivityGraph& g,
                                              const Rational& tol = Rational(0));

enum class OverlapKind { orthogonal, unbiased, other };

struct OverlapEntry {
    OverlapKind kind = OverlapKind::other;
    Rational value;  // normalized overlap^2
};

// Full pairwise matrix (diagonal included): overlap^2 of 0 -> orthogonal,
// exactly 1/d -> unbiased, anything else -> other.
std::vector<std::vector<OverlapEntry>> overlap_classification(const ProjectorFamily& fam);

struct RealizationReport {
    int dimension = 0;
    std::vector<Rational> per_vertex_probabilities;
    Rational quantum_sum;
    std::vector<EdgeOverlap> edge_overlaps;
    int violation_count = 0;
};

// Aggregates probabilities and edge compatibility against a graph. Throws
// std::invalid_argument when vertex counts or dimensions do not line up.
RealizationReport realization_report(const QuantumRealization& realization,
                                     const ExclusivityGraph& g,
                                     const Rational& tol = Rational(0));

std::string realization_report_to_json(const RealizationReport& report);

}  // namespace exwb
