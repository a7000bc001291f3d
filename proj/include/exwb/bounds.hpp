#pragma once

#include "exwb/graph.hpp"
#include "exwb/simplex.hpp"
#include "exwb/theta.hpp"

#include <string>
#include <vector>

namespace exwb {

// Optimal solution of   max sum_i w_i  s.t.  sum_{i in Q} w_i <= 1 for every
// maximal clique Q, 0 <= w_i <= 1. Value and weights are exact rationals and
// the optimum is proven by an exact dual solution inside the solver.
struct FractionalPackingCertificate {
    Rational value;
    std::vector<Rational> weights;        // one per vertex, 1-based order
    std::vector<Rational> clique_duals;   // multiplier per maximal clique row
    std::vector<Clique> cliques;          // the constraint rows used
};

FractionalPackingCertificate fractional_packing(const ExclusivityGraph& g);

struct BoundsReport {
    int alpha = 0;
    std::vector<int> alpha_witness;
    double theta = 0;
    double theta_gap = 0;
    Rational alpha_star;
    std::vector<Rational> weights;
    bool no_postquantum_advantage = false;
};

// alpha, theta and alpha* for one graph. no_postquantum_advantage is true iff
// theta matches alpha* within the solver tolerance while alpha < alpha*.
// The SDP runs at a gap tolerance of 1e-8 and the theta/alpha* comparison uses
// 1e-6.
BoundsReport bounds_report(const ExclusivityGraph& g);

std::string bounds_report_to_json(const BoundsReport& report);

}  // namespace exwb
