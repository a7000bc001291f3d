#pragma once

#include "exwb/rational.hpp"

#include <vector>

namespace exwb {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LpSolution {
    Rational value;
    std::vector<Rational> x;     // primal solution, one per column
    std::vector<Rational> dual;  // dual multipliers, one per row
};

// Exact primal simplex with Bland's rule for
//     max c'x  s.t.  A x <= b,  x >= 0,
// over rationals. Requires b >= 0 (the slack basis is then feasible, which is
// all the packing LPs here need). Bland's rule guarantees termination.
// Throws SolverError on unbounded problems or violated preconditions.
//
// On return the dual vector satisfies y >= 0, A'y >= c and b'y = c'x exactly,
// which is a proof of optimality; solve_packing_lp checks this before
// returning.
LpSolution solve_packing_lp(const std::vector<std::vector<Rational>>& A,
                            const std::vector<Rational>& b, const std::vector<Rational>& c);

}  // namespace exwb
