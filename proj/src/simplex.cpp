#include "exwb/simplex.hpp"

namespace exwb {

namespace {

// Dense tableau, rows 0..m-1 are constraints, row m is the objective.
// Columns 0..n-1 structural, n..n+m-1 slacks, last column the rhs.
struct Tableau {
    std::size_t m, n;
    std::vector<std::vector<Rational>> t;
    std::vector<std::size_t> basis;  // basic variable of each row

    Tableau(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
            const std::vector<Rational>& c)
        : m(A.size()), n(c.size()), t(m + 1, std::vector<Rational>(n + m + 1)), basis(m) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                t[i][j] = A[i][j];
            t[i][n + i] = 1;
            t[i][n + m] = b[i];
            basis[i] = n + i;
        }
        for (std::size_t j = 0; j < n; ++j)
            t[m][j] = -c[j];
    }

    void pivot(std::size_t row, std::size_t col) {
        const Rational inv = Rational(1) / t[row][col];
        for (auto& v : t[row])
            v *= inv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == row || t[i][col] == 0)
                continue;
            const Rational f = t[i][col];
            for (std::size_t j = 0; j <= n + m; ++j)
                t[i][j] -= f * t[row][j];
        }
        basis[row] = col;
    }
};

}  // namespace

LpSolution solve_packing_lp(const std::vector<std::vector<Rational>>& A,
                            const std::vector<Rational>& b, const std::vector<Rational>& c) {
    const std::size_t m = A.size();
    const std::size_t n = c.size();
    for (const auto& row : A)
        if (row.size() != n)
            throw SolverError("simplex: constraint row width does not match objective");
    for (const auto& bi : b)
        if (bi < 0)
            throw SolverError("simplex: negative right-hand side (phase-1 not implemented)");
    if (b.size() != m)
        throw SolverError("simplex: rhs size does not match constraint count");
    Tableau tab(A, b, c);
    for (;;) {
        // Bland: entering variable is the lowest-index column with a negative
        // reduced cost; leaving row has the smallest ratio, ties broken by the
        // lowest basic variable index. No cycling, guaranteed termination.
        std::size_t enter = n + m;
        for (std::size_t j = 0; j < n + m; ++j) {
            if (tab.t[m][j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == n + m)
            break;  // optimal
        std::size_t leave = m;
        Rational best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (tab.t[i][enter] <= 0)
                continue;
            const Rational ratio = tab.t[i][n + m] / tab.t[i][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && tab.basis[i] < tab.basis[leave])) {
                best_ratio = ratio;
                leave = i;
            }
        }
        if (leave == m)
            throw SolverError("simplex: unbounded objective");
        tab.pivot(leave, enter);
    }

    LpSolution out;
    out.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis[i] < n)
            out.x[tab.basis[i]] = tab.t[i][n + m];
    out.dual.assign(m, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        out.dual[i] = tab.t[m][n + i];
    out.value = tab.t[m][n + m];

    // Exact optimality certificate: primal feasible, dual feasible, equal
    // objectives. All comparisons rational, so this is a proof.
    Rational primal_value(0);
    for (std::size_t j = 0; j < n; ++j) {
        if (out.x[j] < 0)
            throw SolverError("simplex: negative primal variable in solution");
        primal_value += c[j] * out.x[j];
    }
    for (std::size_t i = 0; i < m; ++i) {
        Rational lhs(0);
        for (std::size_t j = 0; j < n; ++j)
            lhs += A[i][j] * out.x[j];
        if (lhs > b[i])
            throw SolverError("simplex: primal constraint violated in solution");
        if (out.dual[i] < 0)
            throw SolverError("simplex: negative dual multiplier");
    }
    Rational dual_value(0);
    for (std::size_t i = 0; i < m; ++i)
        dual_value += b[i] * out.dual[i];
    for (std::size_t j = 0; j < n; ++j) {
        Rational reduced(0);
        for (std::size_t i = 0; i < m; ++i)
            reduced += A[i][j] * out.dual[i];
        if (reduced < c[j])
            throw SolverError("simplex: dual constraint violated");
    }
    if (primal_value != out.value || dual_value != out.value)
        throw SolverError("simplex: certificate mismatch between primal and dual objectives");
    return out;
}

}  // namespace exwb
