#include "exwb/realization.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace exwb {

namespace {

Rational norm2(const std::vector<RationalComplex>& v) {
    Rational s(0);
    for (const auto& a : v)
        s += a.abs2();
    return s;
}

RationalComplex inner_product(const std::vector<RationalComplex>& a,
                              const std::vector<RationalComplex>& b) {
    RationalComplex s;
    for (std::size_t k = 0; k < a.size(); ++k)
        s = s + a[k].conj() * b[k];
    return s;
}

bool all_zero(const std::vector<RationalComplex>& v) {
    for (const auto& a : v)
        if (!a.is_zero())
            return false;
    return true;
}

Rational parse_component(const nlohmann::json& v, const std::string& where) {
    if (v.is_number_integer())
        return Rational(v.get<long long>());
    if (v.is_string())
        return parse_rational(v.get<std::string>());
    throw std::invalid_argument(where + ": expected an integer or a \"num/den\" string");
}

RationalComplex parse_amplitude(const nlohmann::json& v, const std::string& where) {
    if (v.is_number_integer() || v.is_string())
        return RationalComplex(parse_component(v, where), Rational(0));
    if (v.is_array()) {
        if (v.size() != 2)
            throw std::invalid_argument(where + ": expected a [real, imaginary] pair");
        return RationalComplex(parse_component(v[0], where + "[0]"),
                               parse_component(v[1], where + "[1]"));
    }
    throw std::invalid_argument(where + ": expected an integer, a string, or a pair");
}

std::vector<RationalComplex> parse_vector(const nlohmann::json& arr, int dimension,
                                          const std::string& where) {
    if (!arr.is_array())
        throw std::invalid_argument(where + ": expected an array of amplitudes");
    if (static_cast<int>(arr.size()) != dimension)
        throw std::invalid_argument(where + ": expected " + std::to_string(dimension) +
                                    " amplitudes, got " + std::to_string(arr.size()));
    std::vector<RationalComplex> out;
    out.reserve(arr.size());
    for (std::size_t k = 0; k < arr.size(); ++k)
        out.push_back(parse_amplitude(arr[k], where + "[" + std::to_string(k) + "]"));
    return out;
}

nlohmann::ordered_json amplitude_to_json(const RationalComplex& a) {
    return nlohmann::ordered_json::array(
        {to_fraction_string(a.re), to_fraction_string(a.im)});
}

nlohmann::ordered_json vector_to_json(const std::vector<RationalComplex>& v) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& a : v)
        arr.push_back(amplitude_to_json(a));
    return arr;
}

}  // namespace

QuantumRealization QuantumRealization::from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("realization: invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw std::invalid_argument("realization: top level must be an object");
    if (!doc.contains("dimension") || !doc["dimension"].is_number_integer())
        throw std::invalid_argument("dimension: expected an integer");
    const int d = doc["dimension"].get<int>();
    if (d < 1)
        throw std::invalid_argument("dimension: must be positive");
    if (!doc.contains("state"))
        throw std::invalid_argument("state: missing");
    if (!doc.contains("vectors") || !doc["vectors"].is_object())
        throw std::invalid_argument("vectors: expected an object keyed by vertex index");

    QuantumRealization r;
    r.dimension = d;
    r.state.amplitudes = parse_vector(doc["state"], d, "state");
    if (all_zero(r.state.amplitudes))
        throw std::invalid_argument("state: must not be the zero vector");

    const auto& vecs = doc["vectors"];
    const int n = static_cast<int>(vecs.size());
    r.family.vectors.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const std::string key = std::to_string(i);
        if (!vecs.contains(key))
            throw std::invalid_argument("vectors: missing key \"" + key +
                                        "\" (keys must be 1.." + std::to_string(n) + ")");
        auto v = parse_vector(vecs[key], d, "vectors[\"" + key + "\"]");
        if (all_zero(v))
            throw std::invalid_argument("vectors[\"" + key + "\"]: must not be the zero vector");
        r.family.vectors[static_cast<std::size_t>(i - 1)] = std::move(v);
    }
    return r;
}

QuantumRealization QuantumRealization::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("realization: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string QuantumRealization::to_json_text() const {
    nlohmann::ordered_json doc;
    doc["dimension"] = dimension;
    doc["state"] = vector_to_json(state.amplitudes);
    auto vecs = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < family.vectors.size(); ++i)
        vecs[std::to_string(i + 1)] = vector_to_json(family.vectors[i]);
    doc["vectors"] = vecs;
    return doc.dump(2) + "\n";
}

Rational vertex_probability(const StateVector& psi, const std::vector<RationalComplex>& v) {
    if (psi.amplitudes.size() != v.size())
        throw std::invalid_argument("vertex_probability: dimension mismatch");
    const Rational np = norm2(psi.amplitudes);
    const Rational nv = norm2(v);
    if (np == 0 || nv == 0)
        throw std::invalid_argument("vertex_probability: zero vector");
    return inner_product(psi.amplitudes, v).abs2() / (np * nv);
}

Rational quantum_sum(const StateVector& psi, const ProjectorFamily& fam) {
    Rational s(0);
    for (const auto& v : fam.vectors)
        s += vertex_probability(psi, v);
    return s;
}

std::vector<EdgeOverlap> verify_compatibility(const ProjectorFamily& fam,
                                              const ExclusivityGraph& g,
                                              const Rational& tol) {
    if (static_cast<int>(fam.vectors.size()) != g.vertex_count())
        throw std::invalid_argument("verify_compatibility: family has " +
                                    std::to_string(fam.vectors.size()) + " vectors but graph has " +
                                    std::to_string(g.vertex_count()) + " vertices");
    if (tol < 0)
        throw std::invalid_argument("verify_compatibility: tol must be nonnegative");
    std::vector<EdgeOverlap> out;
    out.reserve(g.edges().size());
    for (const auto& [i, j] : g.edges()) {
        const auto& vi = fam.vectors[static_cast<std::size_t>(i - 1)];
        const auto& vj = fam.vectors[static_cast<std::size_t>(j - 1)];
        EdgeOverlap e;
        e.i = i;
        e.j = j;
        e.overlap2 = inner_product(vi, vj).abs2() / (norm2(vi) * norm2(vj));
        e.violation = e.overlap2 > tol * tol;
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<std::vector<OverlapEntry>> overlap_classification(const ProjectorFamily& fam) {
    const std::size_t n = fam.vectors.size();
    if (n == 0)
        throw std::invalid_argument("overlap_classification: empty family");
    const Rational inv_d(1, static_cast<int>(fam.vectors[0].size()));
    std::vector<std::vector<OverlapEntry>> m(n, std::vector<OverlapEntry>(n));
    for (std::size_t a = 0; a < n; ++a) {
        const Rational na = norm2(fam.vectors[a]);
        for (std::size_t b = 0; b < n; ++b) {
            const Rational nb = norm2(fam.vectors[b]);
            OverlapEntry& e = m[a][b];
            e.value = inner_product(fam.vectors[a], fam.vectors[b]).abs2() / (na * nb);
            if (e.value == 0)
                e.kind = OverlapKind::orthogonal;
            else if (e.value == inv_d)
                e.kind = OverlapKind::unbiased;
            else
                e.kind = OverlapKind::other;
        }
    }
    return m;
}

RealizationReport realization_report(const QuantumRealization& realization,
                                     const ExclusivityGraph& g, const Rational& tol) {
    RealizationReport report;
    report.dimension = realization.dimension;
    report.per_vertex_probabilities.reserve(realization.family.vectors.size());
    for (const auto& v : realization.family.vectors)
        report.per_vertex_probabilities.push_back(vertex_probability(realization.state, v));
    report.quantum_sum = quantum_sum(realization.state, realization.family);
    report.edge_overlaps = verify_compatibility(realization.family, g, tol);
    for (const auto& e : report.edge_overlaps)
        if (e.violation)
            ++report.violation_count;
    return report;
}

std::string realization_report_to_json(const RealizationReport& report) {
    nlohmann::ordered_json doc;
    doc["dimension"] = report.dimension;
    auto probs = nlohmann::ordered_json::array();
    for (const auto& p : report.per_vertex_probabilities)
        probs.push_back(to_fraction_string(p));
    doc["per_vertex_probabilities"] = probs;
    doc["quantum_sum"] = to_fraction_string(report.quantum_sum);
    auto edges = nlohmann::ordered_json::array();
    for (const auto& e : report.edge_overlaps) {
        nlohmann::ordered_json entry;
        entry["i"] = e.i;
        entry["j"] = e.j;
        entry["overlap2"] = to_fraction_string(e.overlap2);
        entry["violation"] = e.violation;
        edges.push_back(entry);
    }
    doc["edges"] = edges;
    doc["violation_count"] = report.violation_count;
    return doc.dump(2) + "\n";
}

}  // namespace exwb
