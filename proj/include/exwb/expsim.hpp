#pragma once

#include "exwb/graph.hpp"
#include "exwb/realization.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace exwb {

struct NoiseModel {
    double depolarizing_weight = 0.0;  // in [0,1]; mixes toward 1/dimension
    double misalignment_sigma = 0.0;   // radians; analyzer perturbation scale
    long long shots_per_setting = 1000000;
    int dimension = 4;  // depolarizing target 1/d for the scalar entry point;
                        // the run_* functions use the realization's dimension
};

struct EstimatedProbability {
    double value = 0.0;  // counts / shots
    double error = 0.0;  // sqrt(max(counts, 1)) / shots; zero counts get the one-count floor
    long long counts = 0;
    long long shots = 0;
};

double depolarize(double p, double weight, int dimension);

// Depolarizes p per the noise model, then draws shots_per_setting Bernoulli
// samples from a stream seeded with `seed`. Analyzer misalignment lives in
// the run_* functions, which own analyzer vectors; it has no effect here.
EstimatedProbability simulate_counts(double p, const NoiseModel& noise, std::uint64_t seed);

struct Table1Result {
    std::vector<EstimatedProbability> per_vertex;
    double sum = 0.0;
    double sum_error = 0.0;  // quadrature sum of the per-vertex errors
};

// Per-vertex yes-probability estimates. Setting i draws from the stream
// (seed, 0, i); one misalignment unitary per setting.
Table1Result run_table1(const QuantumRealization& realization, const NoiseModel& noise,
                        std::uint64_t seed);

struct MatrixResult {
    std::vector<std::vector<EstimatedProbability>> entries;  // entries[i-1][j-1]
};

// Entry (i,j): analyzer j firing on prepared state i, stream (seed, i, j).
// Diagonal entries are the generation/analysis fidelities.
MatrixResult run_exclusivity_matrix(const QuantumRealization& realization,
                                    const NoiseModel& noise, std::uint64_t seed);

struct HistogramSpec {
    double lo = 0.0;
    double hi = 0.08;
    double width = 0.005;
};

struct HistogramBin {
    double left = 0.0;
    double right = 0.0;
    int count = 0;
};

struct Histogram {
    HistogramSpec spec;
    std::vector<HistogramBin> bins;
    int underflow = 0;
    int overflow = 0;
};

// Histogram over the ordered edge-pair entries (i,j) and (j,i) of the matrix.
Histogram edge_pair_histogram(const MatrixResult& matrix, const ExclusivityGraph& g,
                              const HistogramSpec& spec = {});

struct EdgeEpsilon {
    int i = 0, j = 0;
    double value = 0.0;
    double error = 0.0;
};

// Per-edge exclusivity violation, taken as the symmetrized mean of the two
// ordered matrix entries for the edge.
std::vector<EdgeEpsilon> symmetrized_edge_epsilons(const MatrixResult& matrix,
                                                   const ExclusivityGraph& g);

struct EpsilonReport {
    double sigma_measured = 0.0;
    int classical_bound = 0;
    int vertex_count = 0;
    double epsilon_threshold = 0.0;  // (sigma - C) / (n - C)
    std::vector<EdgeEpsilon> per_edge;
    double mean_epsilon = 0.0;
    double mean_epsilon_error = 0.0;
    bool advantage = false;  // sigma_measured > classical_bound
    bool certified = false;  // advantage and every per-edge epsilon < threshold
};

// Threshold from C(1-eps) + n*eps < sigma, i.e. eps < (sigma-C)/(n-C).
// sigma <= C is a negative verdict (certified = false), not an error.
EpsilonReport epsilon_certify(double sigma_measured, int classical_bound, int vertex_count,
                              const std::vector<EdgeEpsilon>& per_edge);

struct ExperimentReport {
    std::uint64_t seed = 0;
    NoiseModel noise;
    Table1Result table;
    MatrixResult matrix;
    Histogram histogram;
    EpsilonReport epsilon;
};

ExperimentReport run_experiment(const QuantumRealization& realization, const ExclusivityGraph& g,
                                const NoiseModel& noise, std::uint64_t seed, int classical_bound,
                                const HistogramSpec& spec = {});

std::string experiment_report_to_json(const ExperimentReport& report);

// Parses seed, noise, table, and matrix back; histogram and epsilon are left
// default (recompute them from the parsed matrix when needed).
ExperimentReport experiment_report_from_json(const std::string& text);

std::string histogram_to_csv(const Histogram& h);
std::string epsilon_report_to_json(const EpsilonReport& report);

}  // namespace exwb
