#pragma once

#include "exwb/graph.hpp"
#include "exwb/simplex.hpp"

#include <Eigen/Dense>

namespace exwb {

struct ThetaOptions {
    double tol = 1e-6;          // required duality gap at termination
    int max_iterations = 10000;
};

struct ThetaResult {
    double value = 0;                 // <J, X> at the final primal iterate
    double dual_bound = 0;            // dual objective, an upper bound on theta
    double duality_gap = 0;           // <X, S> at termination
    Eigen::MatrixXd feasible_matrix;  // X: PSD, trace 1, zero on every edge
    int iterations = 0;
};

// Lovasz number via the edge-zero/trace-one formulation
//     theta(G) = max <J, X>  s.t.  X PSD, tr X = 1, X_ij = 0 for (i,j) in E,
// solved by a feasible-start primal-dual interior-point method (HKM direction
// with a Mehrotra predictor-corrector). Both X = I/n and the initial dual
// slack are strictly feasible, so the duality gap <X, S> brackets theta at
// every iterate: <J, X> <= theta(G) <= dual_bound.
//
// Throws SolverError if the gap does not reach opts.tol within the iteration
// budget, and std::invalid_argument for graphs above the supported size.
ThetaResult lovasz_theta(const ExclusivityGraph& g, const ThetaOptions& opts = {});

}  // namespace exwb
