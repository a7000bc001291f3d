#include "exwb/bounds.hpp"
#include "exwb/canonical.hpp"
#include "exwb/expsim.hpp"
#include "exwb/graph.hpp"
#include "exwb/photonics.hpp"
#include "exwb/realization.hpp"
#include "exwb/round.hpp"
#include "exwb/theta.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

namespace py = pybind11;

namespace {

// Accepts int, "num/den" string, or a (re, im) pair of those.
exwb::RationalComplex amplitude_from_py(const py::handle& obj) {
    if (py::isinstance<py::int_>(obj))
        return exwb::RationalComplex(exwb::Rational(obj.cast<long long>()), exwb::Rational(0));
    if (py::isinstance<py::str>(obj))
        return exwb::RationalComplex(exwb::parse_rational(obj.cast<std::string>()),
                                     exwb::Rational(0));
    if (py::isinstance<py::tuple>(obj) || py::isinstance<py::list>(obj)) {
        const py::sequence seq = py::reinterpret_borrow<py::sequence>(obj);
        if (seq.size() != 2)
            throw py::value_error("amplitude pair must have exactly two entries");
        const auto part = [](const py::handle& h) {
            if (py::isinstance<py::int_>(h))
                return exwb::Rational(h.cast<long long>());
            if (py::isinstance<py::str>(h))
                return exwb::parse_rational(h.cast<std::string>());
            throw py::value_error("amplitude component must be an int or a \"num/den\" string");
        };
        return exwb::RationalComplex(part(seq[0]), part(seq[1]));
    }
    throw py::value_error("amplitude must be an int, a \"num/den\" string, or a (re, im) pair");
}

std::vector<std::vector<exwb::RationalComplex>> vectors_from_py(const py::sequence& vectors) {
    std::vector<std::vector<exwb::RationalComplex>> out;
    for (const auto& vec : vectors) {
        std::vector<exwb::RationalComplex> v;
        for (const auto& amp : py::reinterpret_borrow<py::sequence>(vec))
            v.push_back(amplitude_from_py(amp));
        out.push_back(std::move(v));
    }
    return out;
}

exwb::Ququart ququart_from_py(const std::vector<exwb::Complex>& amps) {
    if (amps.size() != 4)
        throw py::value_error("a ququart needs exactly 4 amplitudes");
    exwb::Ququart q{};
    for (std::size_t k = 0; k < 4; ++k)
        q[k] = amps[k];
    return q;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exclusivity-graph workbench: graph bounds, quantum realizations, and "
              "photonic experiment simulation";

    py::register_exception<exwb::SolverError>(m, "SolverError");

    py::class_<exwb::ExclusivityGraph>(m, "ExclusivityGraph")
        .def(py::init<int, std::vector<std::pair<int, int>>>(), py::arg("n"), py::arg("edges"))
        .def_property_readonly("n", &exwb::ExclusivityGraph::vertex_count)
        .def_property_readonly("edges",
                               [](const exwb::ExclusivityGraph& g) { return g.edges(); })
        .def("has_edge", &exwb::ExclusivityGraph::has_edge, py::arg("i"), py::arg("j"))
        .def("to_json", &exwb::ExclusivityGraph::to_json_text)
        .def_static("from_json", &exwb::ExclusivityGraph::from_json_text, py::arg("text"))
        .def("__repr__", [](const exwb::ExclusivityGraph& g) {
            return "ExclusivityGraph(n=" + std::to_string(g.vertex_count()) +
                   ", edges=" + std::to_string(g.edge_count()) + ")";
        });

    m.def(
        "orthogonality_graph",
        [](const py::sequence& vectors, const std::string& tol) {
            return exwb::orthogonality_graph(vectors_from_py(vectors),
                                             exwb::parse_rational(tol));
        },
        py::arg("vectors"), py::arg("tol") = "0",
        "Graph with an edge wherever |<v_i|v_j>| <= tol |v_i| |v_j|, exact arithmetic; "
        "amplitudes are ints, \"num/den\" strings, or (re, im) pairs of those");

    m.def(
        "independence_number",
        [](const exwb::ExclusivityGraph& g) {
            const auto [value, witness] = exwb::independence_number(g);
            return py::make_tuple(value, witness.members);
        },
        py::arg("graph"));

    m.def(
        "maximal_cliques",
        [](const exwb::ExclusivityGraph& g) {
            std::vector<std::vector<int>> out;
            for (const auto& c : exwb::maximal_cliques(g))
                out.push_back(c.members);
            return out;
        },
        py::arg("graph"));

    m.def(
        "best_classical_assignment",
        [](const exwb::ExclusivityGraph& g) {
            const auto r = exwb::best_classical_assignment(g);
            return py::make_tuple(r.sum, r.assignment);
        },
        py::arg("graph"));

    m.def(
        "lovasz_theta",
        [](const exwb::ExclusivityGraph& g, double tol, int max_iterations) {
            exwb::ThetaOptions opts;
            opts.tol = tol;
            opts.max_iterations = max_iterations;
            const exwb::ThetaResult r = exwb::lovasz_theta(g, opts);
            py::dict d;
            d["value"] = r.value;
            d["dual_bound"] = r.dual_bound;
            d["duality_gap"] = r.duality_gap;
            d["iterations"] = r.iterations;
            return d;
        },
        py::arg("graph"), py::arg("tol") = 1e-6, py::arg("max_iterations") = 10000);

    m.def(
        "fractional_packing",
        [](const exwb::ExclusivityGraph& g) {
            const exwb::FractionalPackingCertificate c = exwb::fractional_packing(g);
            py::dict d;
            d["value"] = exwb::to_fraction_string(c.value);
            py::list weights;
            for (const auto& w : c.weights)
                weights.append(exwb::to_fraction_string(w));
            d["weights"] = weights;
            return d;
        },
        py::arg("graph"));

    m.def(
        "bounds_report",
        [](const exwb::ExclusivityGraph& g) {
            return exwb::bounds_report_to_json(exwb::bounds_report(g));
        },
        py::arg("graph"), "Full bounds report as a JSON string");

    m.def(
        "verify_realization",
        [](const std::string& realization_json, const std::string& graph_json,
           const std::string& tol) {
            const auto realization = exwb::QuantumRealization::from_json_text(realization_json);
            const auto g = exwb::ExclusivityGraph::from_json_text(graph_json);
            return exwb::realization_report_to_json(
                exwb::realization_report(realization, g, exwb::parse_rational(tol)));
        },
        py::arg("realization_json"), py::arg("graph_json"), py::arg("tol") = "0",
        "Realization report (probabilities, quantum sum, edge overlaps) as JSON");

    m.def(
        "quantum_sum",
        [](const std::string& realization_json) {
            const auto r = exwb::QuantumRealization::from_json_text(realization_json);
            return exwb::to_fraction_string(exwb::quantum_sum(r.state, r.family));
        },
        py::arg("realization_json"), "Exact quantum sum as a \"num/den\" string");

    m.def(
        "run_experiment",
        [](const std::string& realization_json, const std::string& graph_json, long long shots,
           std::uint64_t seed, double depolarizing, double misalign_sigma) {
            const auto realization = exwb::QuantumRealization::from_json_text(realization_json);
            const auto g = exwb::ExclusivityGraph::from_json_text(graph_json);
            exwb::NoiseModel noise;
            noise.depolarizing_weight = depolarizing;
            noise.misalignment_sigma = misalign_sigma;
            noise.shots_per_setting = shots;
            noise.dimension = realization.dimension;
            const int alpha = exwb::independence_number(g).first;
            return exwb::experiment_report_to_json(
                exwb::run_experiment(realization, g, noise, seed, alpha));
        },
        py::arg("realization_json"), py::arg("graph_json"), py::arg("shots") = 100000,
        py::arg("seed") = 12345, py::arg("depolarizing") = 0.0, py::arg("misalign_sigma") = 0.0,
        "Monte Carlo experiment report as a JSON string");

    m.def(
        "epsilon_certify",
        [](double sigma_measured, int classical_bound, int vertex_count,
           const std::vector<std::tuple<int, int, double, double>>& per_edge) {
            std::vector<exwb::EdgeEpsilon> edges;
            for (const auto& [i, j, value, error] : per_edge) {
                exwb::EdgeEpsilon e;
                e.i = i;
                e.j = j;
                e.value = value;
                e.error = error;
                edges.push_back(e);
            }
            return exwb::epsilon_report_to_json(
                exwb::epsilon_certify(sigma_measured, classical_bound, vertex_count, edges));
        },
        py::arg("sigma_measured"), py::arg("classical_bound"), py::arg("vertex_count"),
        py::arg("per_edge") = std::vector<std::tuple<int, int, double, double>>{},
        "Certification verdict as JSON; per_edge entries are (i, j, epsilon, error)");

    m.def(
        "design_preparation",
        [](const std::vector<exwb::Complex>& target) {
            return exwb::design_preparation(ququart_from_py(target)).to_json_text();
        },
        py::arg("target"), "Preparation setup JSON for a ququart target");

    m.def(
        "prepare_state",
        [](const std::string& setup_json) {
            const auto prepared =
                exwb::prepare_state(exwb::SetupDescriptor::from_json_text(setup_json));
            std::vector<exwb::Complex> amps(prepared.amplitudes.begin(),
                                            prepared.amplitudes.end());
            return py::make_tuple(amps, prepared.success_probability);
        },
        py::arg("setup_json"), "(amplitudes, success_probability) for a setup");

    m.def(
        "analyze_projection",
        [](const std::vector<exwb::Complex>& state, const std::vector<exwb::Complex>& analyzer) {
            return exwb::analyze_projection(ququart_from_py(state), ququart_from_py(analyzer));
        },
        py::arg("state"), py::arg("analyzer"));

    m.def("canonical_graph", &exwb::canonical_graph,
          "Orthogonality graph of the bundled ten-vector task");
    m.def(
        "canonical_realization",
        [] { return exwb::canonical_realization().to_json_text(); },
        "The bundled realization as JSON");
}
