#pragma once

#include "exwb/graph.hpp"
#include "exwb/realization.hpp"

namespace exwb {

// The canonical ququart task bundled with the workbench: a dimension-4 state
// and ten integer test vectors whose orthogonality graph has alpha = 3 while
// theta and the fractional packing number both equal 7/2.

StateVector canonical_state();
std::vector<std::vector<RationalComplex>> canonical_vectors();
QuantumRealization canonical_realization();

// Orthogonality graph of the canonical vectors at tolerance 0 (10 vertices,
// 21 edges).
ExclusivityGraph canonical_graph();

}  // namespace exwb
