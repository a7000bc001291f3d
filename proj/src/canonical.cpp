#include "exwb/canonical.hpp"

namespace exwb {

namespace {

std::vector<RationalComplex> real_vector(int a, int b, int c, int d) {
    return {RationalComplex(Rational(a), Rational(0)), RationalComplex(Rational(b), Rational(0)),
            RationalComplex(Rational(c), Rational(0)), RationalComplex(Rational(d), Rational(0))};
}

}  // namespace

StateVector canonical_state() { return StateVector{real_vector(0, 0, 0, 1)}; }

std::vector<std::vector<RationalComplex>> canonical_vectors() {
    return {
        real_vector(0, 0, 1, 1),    // 1
        real_vector(1, -1, 1, -1),  // 2
        real_vector(1, -1, -1, 1),  // 3
        real_vector(1, 0, 0, -1),   // 4
        real_vector(1, 1, 1, 1),    // 5
        real_vector(0, 1, 0, -1),   // 6
        real_vector(-1, 1, 1, 1),   // 7
        real_vector(1, 0, 0, 1),    // 8
        real_vector(1, 1, 1, -1),   // 9
        real_vector(1, 1, -1, 1),   // 10
    };
}

QuantumRealization canonical_realization() {
    QuantumRealization r;
    r.dimension = 4;
    r.state = canonical_state();
    r.family.vectors = canonical_vectors();
    return r;
}

ExclusivityGraph canonical_graph() { return orthogonality_graph(canonical_vectors()); }

}  // namespace exwb
