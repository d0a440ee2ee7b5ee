#include "chronovec/svd.hpp"

#include <algorithm>
#include <cmath>

namespace chronovec {

namespace {

Eigen::MatrixXd thin_q(const Eigen::MatrixXd& Y) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Y);
    return qr.householderQ() * Eigen::MatrixXd::Identity(Y.rows(), Y.cols());
}

void fix_signs(Eigen::MatrixXd& U, Eigen::MatrixXd& V) {
    for (Eigen::Index j = 0; j < U.cols(); ++j) {
        Eigen::Index argmax = 0;
        U.col(j).cwiseAbs().maxCoeff(&argmax);
        if (U(argmax, j) < 0) {
            U.col(j) = -U.col(j);
            V.col(j) = -V.col(j);
        }
    }
}

}  // namespace

SvdFactors truncated_svd(const Eigen::SparseMatrix<double>& A, int d, const SvdOptions& opts) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    const int maxr = std::min(m, n);
    if (d < 1 || d > maxr)
        throw ValidationError("truncated_svd: rank " + std::to_string(d) + " out of range [1, " +
                              std::to_string(maxr) + "]");

    Rng rng(mix_seed(opts.seed, 0x51d5u));
    int sketch = std::min(maxr, d + std::max(2, opts.oversample));

    Eigen::MatrixXd Q, W, X;
    Eigen::VectorXd sigma;
    double last_change = std::numeric_limits<double>::infinity();

    while (true) {
        Eigen::MatrixXd omega(n, sketch);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < sketch; ++j) omega(i, j) = rng.gaussian();
        Q = thin_q(A * omega);

        Eigen::VectorXd prev = Eigen::VectorXd::Zero(d);
        bool converged = false;
        for (int it = 0; it < opts.max_iters; ++it) {
            Eigen::MatrixXd Bt = A.transpose() * Q;  // n x sketch, Bt^T = Q^T A
            Eigen::BDCSVD<Eigen::MatrixXd> svd(Bt, Eigen::ComputeThinU | Eigen::ComputeThinV);
            W = svd.matrixU();       // n x sketch
            X = svd.matrixV();       // sketch x sketch
            sigma = svd.singularValues();
            const double scale = std::max(sigma(0), 1e-30);
            last_change = (sigma.head(d) - prev).cwiseAbs().maxCoeff() / scale;
            prev = sigma.head(d);
            if (it + 1 >= opts.min_power_iters && last_change <= opts.tol) {
                converged = true;
                break;
            }
            Q = thin_q(A * W);  // power step
        }
        if (converged) break;
        if (sketch >= maxr)
            throw ConvergenceError("truncated_svd: no convergence at full sketch (last relative change " +
                                   std::to_string(last_change) + ")");
        sketch = std::min(2 * sketch, maxr);
        log_debug("truncated_svd: escalating sketch to " + std::to_string(sketch));
    }

    SvdFactors f;
    f.rank = d;
    f.U = Q * X.leftCols(d);  // m x d
    f.V = W.leftCols(d);      // n x d
    f.sigma = sigma.head(d);
    fix_signs(f.U, f.V);
    return f;
}

Eigen::SparseMatrix<double> to_eigen_sparse(const PpmiMatrix& m) {
    Eigen::SparseMatrix<double> A(m.rows, m.cols);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(m.nnz());
    for (int i = 0; i < m.rows; ++i)
        for (const auto& cell : m.row(i)) trips.emplace_back(i, cell.first, cell.second);
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
}

std::pair<SvdFactors, EmbeddingSet> svd_embeddings(const PpmiMatrix& m, const Vocabulary& vocab,
                                                   int d, double sigma_exponent, const SvdOptions& opts) {
    const int blocks = std::max<std::size_t>(m.meta.periods.size(), 1);
    if (m.rows != blocks * vocab.size())
        throw ValidationError("svd_embeddings: matrix rows do not match periods * |V|");
    SvdFactors f = truncated_svd(to_eigen_sparse(m), d, opts);

    EmbeddingSet set;
    set.method = m.meta.tagged ? "tsvd" : "svd";
    set.dim = d;
    set.words = vocab.words;
    set.periods = m.meta.periods.empty() ? std::vector<std::string>{""} : m.meta.periods;
    set.rows = f.U;
    if (sigma_exponent != 0.0)
        for (int j = 0; j < d; ++j) set.rows.col(j) *= std::pow(f.sigma(j), sigma_exponent);
    set.prov.seed = opts.seed;
    return {std::move(f), std::move(set)};
}

}  // namespace chronovec
