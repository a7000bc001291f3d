#include "exwb/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace exwb {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr int kMaxSdpVertices = 32;

// Largest t >= 0 with P + t dP still PSD, for P strictly positive definite.
double max_psd_step(const MatrixXd& p, const MatrixXd& dp) {
    Eigen::LLT<MatrixXd> llt(p);
    if (llt.info() != Eigen::Success)
        return 0.0;
    const MatrixXd l = llt.matrixL();
    MatrixXd w = l.triangularView<Eigen::Lower>().solve(dp);
    w = l.triangularView<Eigen::Lower>().solve(w.transpose()).transpose();
    const VectorXd ev =
        Eigen::SelfAdjointEigenSolver<MatrixXd>(0.5 * (w + w.transpose()),
                                                Eigen::EigenvaluesOnly)
            .eigenvalues();
    const double lambda_min = ev.minCoeff();
    if (lambda_min >= -1e-14)
        return std::numeric_limits<double>::infinity();
    return -1.0 / lambda_min;
}

}  // namespace

ThetaResult lovasz_theta(const ExclusivityGraph& g, const ThetaOptions& opts) {
    const int n = g.vertex_count();
    if (n > kMaxSdpVertices)
        throw std::invalid_argument("lovasz_theta: solver is sized for at most " +
                                    std::to_string(kMaxSdpVertices) + " vertices, got " +
                                    std::to_string(n));
    if (opts.tol <= 0)
        throw std::invalid_argument("lovasz_theta: tol must be positive");

    // Constraint 0 is tr(X) = 1; constraint 1+e is X_ij = 0 for edge e.
    const auto& edges = g.edges();
    const int m = 1 + static_cast<int>(edges.size());

    MatrixXd x = MatrixXd::Identity(n, n) / n;
    MatrixXd s = (n + 1.0) * MatrixXd::Identity(n, n) - MatrixXd::Ones(n, n);
    VectorXd y = VectorXd::Zero(m);
    y(0) = -(n + 1.0);

    // dS = -sum_k dy_k A_k with A_0 = I and A_e = E_ij + E_ji.
    const auto adjoint = [&](const VectorXd& dy) {
        MatrixXd out = -dy(0) * MatrixXd::Identity(n, n);
        for (int e = 0; e < m - 1; ++e) {
            const int i = edges[static_cast<std::size_t>(e)].first - 1;
            const int j = edges[static_cast<std::size_t>(e)].second - 1;
            out(i, j) -= dy(e + 1);
            out(j, i) -= dy(e + 1);
        }
        return out;
    };
    const auto constraint_values = [&](const MatrixXd& z) {
        VectorXd out(m);
        out(0) = z.trace();
        for (int e = 0; e < m - 1; ++e) {
            const int i = edges[static_cast<std::size_t>(e)].first - 1;
            const int j = edges[static_cast<std::size_t>(e)].second - 1;
            out(e + 1) = z(i, j) + z(j, i);
        }
        return out;
    };

    VectorXd b = VectorXd::Zero(m);
    b(0) = 1.0;

    ThetaResult result;
    double gap = (x.cwiseProduct(s)).sum();
    int iter = 0;
    for (; iter < opts.max_iterations && gap > opts.tol; ++iter) {
        Eigen::LLT<MatrixXd> s_llt(s);
        if (s_llt.info() != Eigen::Success)
            break;  // dual slack lost positive definiteness in floating point
        const MatrixXd sinv = s_llt.solve(MatrixXd::Identity(n, n));
        const double mu = gap / n;

        // Schur complement M_kl = tr(A_k X A_l S^-1); symmetric positive
        // definite because X and S are.
        MatrixXd schur(m, m);
        const MatrixXd t = sinv * x;
        schur(0, 0) = t.trace();
        for (int e = 0; e < m - 1; ++e) {
            const int i = edges[static_cast<std::size_t>(e)].first - 1;
            const int j = edges[static_cast<std::size_t>(e)].second - 1;
            const double v = t(i, j) + t(j, i);
            schur(0, e + 1) = v;
            schur(e + 1, 0) = v;
        }
        for (int e = 0; e < m - 1; ++e) {
            const int i = edges[static_cast<std::size_t>(e)].first - 1;
            const int j = edges[static_cast<std::size_t>(e)].second - 1;
            for (int f = e; f < m - 1; ++f) {
                const int k = edges[static_cast<std::size_t>(f)].first - 1;
                const int l = edges[static_cast<std::size_t>(f)].second - 1;
                const double v = x(j, k) * sinv(l, i) + x(j, l) * sinv(k, i) +
                                 x(i, k) * sinv(l, j) + x(i, l) * sinv(k, j);
                schur(e + 1, f + 1) = v;
                schur(f + 1, e + 1) = v;
            }
        }
        Eigen::LDLT<MatrixXd> schur_ldlt(schur);
        if (schur_ldlt.info() != Eigen::Success)
            break;

        // Affine predictor (sigma = 0).
        const VectorXd dy_aff = schur_ldlt.solve(b);
        const MatrixXd ds_aff = adjoint(dy_aff);
        MatrixXd dx_aff = -x - x * ds_aff * sinv;
        dx_aff = 0.5 * (dx_aff + dx_aff.transpose()).eval();
        const double ap_aff = std::min(1.0, max_psd_step(x, dx_aff));
        const double ad_aff = std::min(1.0, max_psd_step(s, ds_aff));
        const double gap_aff =
            ((x + ap_aff * dx_aff).cwiseProduct(s + ad_aff * ds_aff)).sum();
        double sigma = std::pow(std::max(gap_aff, 0.0) / gap, 3.0);
        sigma = std::clamp(sigma, 1e-6, 0.8);

        // Corrector.
        const MatrixXd corr = dx_aff * ds_aff * sinv;
        const VectorXd h = constraint_values(sinv);
        const VectorXd rhs = b - sigma * mu * h + constraint_values(corr);
        const VectorXd dy = schur_ldlt.solve(rhs);
        const MatrixXd ds = adjoint(dy);
        MatrixXd dx = sigma * mu * sinv - x - x * ds * sinv - corr;
        dx = 0.5 * (dx + dx.transpose()).eval();

        const double ap = std::min(1.0, 0.95 * max_psd_step(x, dx));
        const double ad = std::min(1.0, 0.95 * max_psd_step(s, ds));
        if (ap < 1e-12 && ad < 1e-12)
            break;  // stagnated
        x += ap * dx;
        y += ad * dy;
        s += ad * ds;
        gap = (x.cwiseProduct(s)).sum();
    }

    result.value = x.sum();
    result.dual_bound = -y(0);
    result.duality_gap = gap;
    result.feasible_matrix = x;
    result.iterations = iter;
    if (!(gap <= opts.tol))
        throw SolverError("lovasz_theta: duality gap " + std::to_string(gap) +
                          " did not reach tolerance " + std::to_string(opts.tol) + " after " +
                          std::to_string(iter) + " iterations");
    return result;
}

}  // namespace exwb
