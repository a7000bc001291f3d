#include "exwb/expsim.hpp"

#include "exwb/rng.hpp"
#include "exwb/round.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace exwb {

namespace {

using Cx = std::complex<double>;

constexpr double kInvSqrt2 = 0.70710678118654752440;

void validate_noise(const NoiseModel& noise) {
    if (noise.depolarizing_weight < 0.0 || noise.depolarizing_weight > 1.0)
        throw std::invalid_argument("noise: depolarizing_weight must be in [0,1]");
    if (noise.misalignment_sigma < 0.0)
        throw std::invalid_argument("noise: misalignment_sigma must be nonnegative");
    if (noise.shots_per_setting < 1)
        throw std::invalid_argument("noise: shots_per_setting must be at least 1");
}

Eigen::VectorXcd to_unit_cvector(const std::vector<RationalComplex>& v) {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k)
        out(static_cast<Eigen::Index>(k)) = Cx(to_double(v[k].re), to_double(v[k].im));
    return out.normalized();
}

// GUE-style Hermitian G (unit-variance entries, drawn in a fixed order:
// diagonal first, then the upper triangle row by row), then U = exp(-i sigma G).
Eigen::MatrixXcd misalignment_unitary(int d, double sigma, Xoshiro256& rng) {
    Eigen::MatrixXcd g(d, d);
    for (int k = 0; k < d; ++k)
        g(k, k) = rng.gaussian();
    for (int k = 0; k < d; ++k)
        for (int l = k + 1; l < d; ++l) {
            g(k, l) = Cx(rng.gaussian(), rng.gaussian()) * kInvSqrt2;
            g(l, k) = std::conj(g(k, l));
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
    Eigen::VectorXcd phases(d);
    for (int k = 0; k < d; ++k)
        phases(k) = std::exp(Cx(0.0, -sigma * es.eigenvalues()(k)));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

EstimatedProbability estimate(double p, long long shots, Xoshiro256& rng) {
    long long counts = 0;
    for (long long t = 0; t < shots; ++t)
        if (rng.bernoulli(p))
            ++counts;
    EstimatedProbability e;
    e.counts = counts;
    e.shots = shots;
    e.value = static_cast<double>(counts) / static_cast<double>(shots);
    e.error = std::sqrt(static_cast<double>(std::max(counts, 1LL))) / static_cast<double>(shots);
    return e;
}

double noisy_probability(const Eigen::VectorXcd& state, const Eigen::VectorXcd& analyzer,
                         const NoiseModel& noise, int dimension, Xoshiro256& rng) {
    double p;
    if (noise.misalignment_sigma > 0.0) {
        const Eigen::MatrixXcd u =
            misalignment_unitary(dimension, noise.misalignment_sigma, rng);
        p = std::norm((u * analyzer).dot(state));
    } else {
        p = std::norm(analyzer.dot(state));
    }
    p = depolarize(p, noise.depolarizing_weight, dimension);
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace

double depolarize(double p, double weight, int dimension) {
    if (weight < 0.0 || weight > 1.0)
        throw std::invalid_argument("depolarize: weight must be in [0,1]");
    if (dimension < 1)
        throw std::invalid_argument("depolarize: dimension must be positive");
    return (1.0 - weight) * p + weight / static_cast<double>(dimension);
}

EstimatedProbability simulate_counts(double p, const NoiseModel& noise, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("simulate_counts: p must be in [0,1]");
    validate_noise(noise);
    Xoshiro256 rng(seed);
    return estimate(depolarize(p, noise.depolarizing_weight, noise.dimension),
                    noise.shots_per_setting, rng);
}

Table1Result run_table1(const QuantumRealization& realization, const NoiseModel& noise,
                        std::uint64_t seed) {
    validate_noise(noise);
    const Eigen::VectorXcd psi = to_unit_cvector(realization.state.amplitudes);
    Table1Result result;
    double err2 = 0.0;
    for (std::size_t i = 0; i < realization.family.vectors.size(); ++i) {
        Xoshiro256 rng = setting_stream(seed, 0, static_cast<int>(i + 1));
        const Eigen::VectorXcd analyzer = to_unit_cvector(realization.family.vectors[i]);
        const double p = noisy_probability(psi, analyzer, noise, realization.dimension, rng);
        const EstimatedProbability e = estimate(p, noise.shots_per_setting, rng);
        result.sum += e.value;
        err2 += e.error * e.error;
        result.per_vertex.push_back(e);
    }
    result.sum_error = std::sqrt(err2);
    return result;
}

MatrixResult run_exclusivity_matrix(const QuantumRealization& realization,
                                    const NoiseModel& noise, std::uint64_t seed) {
    validate_noise(noise);
    const std::size_t n = realization.family.vectors.size();
    std::vector<Eigen::VectorXcd> vecs;
    vecs.reserve(n);
    for (const auto& v : realization.family.vectors)
        vecs.push_back(to_unit_cvector(v));
    MatrixResult result;
    result.entries.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        result.entries[i].reserve(n);
        for (std::size_t j = 0; j < n; ++j) {
            Xoshiro256 rng =
                setting_stream(seed, static_cast<int>(i + 1), static_cast<int>(j + 1));
            const double p =
                noisy_probability(vecs[i], vecs[j], noise, realization.dimension, rng);
            result.entries[i].push_back(estimate(p, noise.shots_per_setting, rng));
        }
    }
    return result;
}

Histogram edge_pair_histogram(const MatrixResult& matrix, const ExclusivityGraph& g,
                              const HistogramSpec& spec) {
    if (!(spec.width > 0.0) || !(spec.hi > spec.lo))
        throw std::invalid_argument("histogram: need width > 0 and hi > lo");
    Histogram h;
    h.spec = spec;
    const int nbins =
        static_cast<int>(std::ceil((spec.hi - spec.lo) / spec.width - 1e-12));
    for (int k = 0; k < nbins; ++k) {
        HistogramBin bin;
        bin.left = spec.lo + k * spec.width;
        bin.right = std::min(spec.lo + (k + 1) * spec.width, spec.hi);
        h.bins.push_back(bin);
    }
    const auto record = [&](double v) {
        if (v < spec.lo) {
            ++h.underflow;
        } else if (v >= spec.hi) {
            ++h.overflow;
        } else {
            const int k = std::min(static_cast<int>((v - spec.lo) / spec.width), nbins - 1);
            ++h.bins[static_cast<std::size_t>(k)].count;
        }
    };
    for (const auto& [i, j] : g.edges()) {
        record(matrix.entries[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)].value);
        record(matrix.entries[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)].value);
    }
    return h;
}

std::vector<EdgeEpsilon> symmetrized_edge_epsilons(const MatrixResult& matrix,
                                                   const ExclusivityGraph& g) {
    std::vector<EdgeEpsilon> out;
    out.reserve(g.edges().size());
    for (const auto& [i, j] : g.edges()) {
        const auto& a = matrix.entries[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
        const auto& b = matrix.entries[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)];
        EdgeEpsilon e;
        e.i = i;
        e.j = j;
        e.value = 0.5 * (a.value + b.value);
        e.error = 0.5 * std::sqrt(a.error * a.error + b.error * b.error);
        out.push_back(e);
    }
    return out;
}

EpsilonReport epsilon_certify(double sigma_measured, int classical_bound, int vertex_count,
                              const std::vector<EdgeEpsilon>& per_edge) {
    if (vertex_count <= classical_bound)
        throw std::invalid_argument("epsilon_certify: vertex_count must exceed classical_bound");
    EpsilonReport report;
    report.sigma_measured = sigma_measured;
    report.classical_bound = classical_bound;
    report.vertex_count = vertex_count;
    report.epsilon_threshold =
        (sigma_measured - classical_bound) / static_cast<double>(vertex_count - classical_bound);
    report.per_edge = per_edge;
    report.advantage = sigma_measured > static_cast<double>(classical_bound);
    double mean = 0.0, err2 = 0.0;
    bool all_below = true;
    for (const auto& e : per_edge) {
        mean += e.value;
        err2 += e.error * e.error;
        if (!(e.value < report.epsilon_threshold))
            all_below = false;
    }
    if (!per_edge.empty()) {
        mean /= static_cast<double>(per_edge.size());
        report.mean_epsilon_error = std::sqrt(err2) / static_cast<double>(per_edge.size());
    }
    report.mean_epsilon = mean;
    report.certified = report.advantage && all_below;
    return report;
}

ExperimentReport run_experiment(const QuantumRealization& realization, const ExclusivityGraph& g,
                                const NoiseModel& noise, std::uint64_t seed, int classical_bound,
                                const HistogramSpec& spec) {
    if (static_cast<int>(realization.family.vectors.size()) != g.vertex_count())
        throw std::invalid_argument("run_experiment: realization has " +
                                    std::to_string(realization.family.vectors.size()) +
                                    " vectors but graph has " +
                                    std::to_string(g.vertex_count()) + " vertices");
    ExperimentReport report;
    report.seed = seed;
    report.noise = noise;
    report.table = run_table1(realization, noise, seed);
    report.matrix = run_exclusivity_matrix(realization, noise, seed);
    report.histogram = edge_pair_histogram(report.matrix, g, spec);
    report.epsilon = epsilon_certify(report.table.sum, classical_bound, g.vertex_count(),
                                     symmetrized_edge_epsilons(report.matrix, g));
    return report;
}

namespace {

nlohmann::ordered_json estimated_to_json(const EstimatedProbability& e) {
    nlohmann::ordered_json j;
    j["value"] = round12(e.value);
    j["error"] = round12(e.error);
    j["counts"] = e.counts;
    j["shots"] = e.shots;
    return j;
}

EstimatedProbability estimated_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("value") || !j.contains("error") || !j.contains("counts") ||
        !j.contains("shots"))
        throw std::invalid_argument(where + ": expected {value, error, counts, shots}");
    EstimatedProbability e;
    e.value = j["value"].get<double>();
    e.error = j["error"].get<double>();
    e.counts = j["counts"].get<long long>();
    e.shots = j["shots"].get<long long>();
    return e;
}

nlohmann::ordered_json epsilon_to_json_obj(const EpsilonReport& report) {
    nlohmann::ordered_json j;
    j["sigma_measured"] = round12(report.sigma_measured);
    j["classical_bound"] = report.classical_bound;
    j["vertex_count"] = report.vertex_count;
    j["epsilon_threshold"] = round12(report.epsilon_threshold);
    j["threshold_formula"] =
        "(sigma_measured - classical_bound) / (vertex_count - classical_bound)";
    auto edges = nlohmann::ordered_json::array();
    for (const auto& e : report.per_edge) {
        nlohmann::ordered_json entry;
        entry["i"] = e.i;
        entry["j"] = e.j;
        entry["value"] = round12(e.value);
        entry["error"] = round12(e.error);
        edges.push_back(entry);
    }
    j["per_edge"] = edges;
    j["mean_epsilon"] = round12(report.mean_epsilon);
    j["mean_epsilon_error"] = round12(report.mean_epsilon_error);
    j["advantage"] = report.advantage;
    j["certified"] = report.certified;
    return j;
}

}  // namespace

std::string experiment_report_to_json(const ExperimentReport& report) {
    nlohmann::ordered_json doc;
    doc["seed"] = report.seed;
    nlohmann::ordered_json noise;
    noise["depolarizing_weight"] = round12(report.noise.depolarizing_weight);
    noise["misalignment_sigma"] = round12(report.noise.misalignment_sigma);
    noise["shots_per_setting"] = report.noise.shots_per_setting;
    noise["dimension"] = report.noise.dimension;
    doc["noise"] = noise;
    nlohmann::ordered_json table;
    auto per_vertex = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < report.table.per_vertex.size(); ++i) {
        nlohmann::ordered_json row = estimated_to_json(report.table.per_vertex[i]);
        row["vertex"] = static_cast<int>(i + 1);
        per_vertex.push_back(row);
    }
    table["per_vertex"] = per_vertex;
    table["sum"] = round12(report.table.sum);
    table["sum_error"] = round12(report.table.sum_error);
    doc["table"] = table;
    auto matrix = nlohmann::ordered_json::array();
    for (const auto& row : report.matrix.entries) {
        auto jrow = nlohmann::ordered_json::array();
        for (const auto& e : row)
            jrow.push_back(estimated_to_json(e));
        matrix.push_back(jrow);
    }
    doc["matrix"] = matrix;
    nlohmann::ordered_json hist;
    hist["lo"] = round12(report.histogram.spec.lo);
    hist["hi"] = round12(report.histogram.spec.hi);
    hist["width"] = round12(report.histogram.spec.width);
    auto bins = nlohmann::ordered_json::array();
    for (const auto& b : report.histogram.bins) {
        nlohmann::ordered_json jb;
        jb["left"] = round12(b.left);
        jb["right"] = round12(b.right);
        jb["count"] = b.count;
        bins.push_back(jb);
    }
    hist["bins"] = bins;
    hist["underflow"] = report.histogram.underflow;
    hist["overflow"] = report.histogram.overflow;
    doc["histogram"] = hist;
    doc["epsilon"] = epsilon_to_json_obj(report.epsilon);
    return doc.dump(2) + "\n";
}

ExperimentReport experiment_report_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("report: invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw std::invalid_argument("report: top level must be an object");
    ExperimentReport report;
    if (!doc.contains("seed") || !doc["seed"].is_number())
        throw std::invalid_argument("seed: expected a number");
    report.seed = doc["seed"].get<std::uint64_t>();
    if (!doc.contains("noise") || !doc["noise"].is_object())
        throw std::invalid_argument("noise: expected an object");
    const auto& noise = doc["noise"];
    for (const char* key :
         {"depolarizing_weight", "misalignment_sigma", "shots_per_setting", "dimension"})
        if (!noise.contains(key) || !noise[key].is_number())
            throw std::invalid_argument(std::string("noise.") + key + ": expected a number");
    report.noise.depolarizing_weight = noise["depolarizing_weight"].get<double>();
    report.noise.misalignment_sigma = noise["misalignment_sigma"].get<double>();
    report.noise.shots_per_setting = noise["shots_per_setting"].get<long long>();
    report.noise.dimension = noise["dimension"].get<int>();
    if (!doc.contains("table") || !doc["table"].is_object() ||
        !doc["table"].contains("per_vertex") || !doc["table"]["per_vertex"].is_array())
        throw std::invalid_argument("table.per_vertex: expected an array");
    for (std::size_t i = 0; i < doc["table"]["per_vertex"].size(); ++i)
        report.table.per_vertex.push_back(estimated_from_json(
            doc["table"]["per_vertex"][i], "table.per_vertex[" + std::to_string(i) + "]"));
    if (!doc["table"].contains("sum") || !doc["table"]["sum"].is_number())
        throw std::invalid_argument("table.sum: expected a number");
    report.table.sum = doc["table"]["sum"].get<double>();
    report.table.sum_error = doc["table"].value("sum_error", 0.0);
    if (!doc.contains("matrix") || !doc["matrix"].is_array())
        throw std::invalid_argument("matrix: expected an array of arrays");
    for (std::size_t i = 0; i < doc["matrix"].size(); ++i) {
        const auto& jrow = doc["matrix"][i];
        if (!jrow.is_array())
            throw std::invalid_argument("matrix[" + std::to_string(i) + "]: expected an array");
        std::vector<EstimatedProbability> row;
        for (std::size_t j = 0; j < jrow.size(); ++j)
            row.push_back(estimated_from_json(
                jrow[j], "matrix[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
        report.matrix.entries.push_back(std::move(row));
    }
    return report;
}

std::string histogram_to_csv(const Histogram& h) {
    std::string out = "bin_left,bin_right,occurrences\n";
    char buf[128];
    for (const auto& b : h.bins) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%d\n", b.left, b.right, b.count);
        out += buf;
    }
    return out;
}

std::string epsilon_report_to_json(const EpsilonReport& report) {
    return epsilon_to_json_obj(report).dump(2) + "\n";
}

}  // namespace exwb
