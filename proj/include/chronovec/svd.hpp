#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>

#include "chronovec/embed.hpp"
#include "chronovec/ppmi.hpp"

namespace chronovec {

// Rank-d factors with orthonormal columns (1e-8 tolerance) and nonincreasing
// singular values.
struct SvdFactors {
    Eigen::MatrixXd U;      // rows x d
    Eigen::VectorXd sigma;  // d, nonincreasing
    Eigen::MatrixXd V;      // cols x d
    int rank = 0;
};

struct SvdOptions {
    double tol = 1e-10;      // relative change of sigma_1..sigma_d between sweeps
    int max_iters = 200;     // per sketch size; the sketch is then doubled
    int min_power_iters = 4;
    int oversample = 8;
    std::uint64_t seed = 0x5eedbeef;
};

// Randomized subspace iteration with seeded start, power iterations until the
// leading singular values stabilize, and sketch escalation up to min(m, n)
// (where a single pass is exact). Signs are fixed so the largest-magnitude
// component of each left singular vector is positive.
SvdFactors truncated_svd(const Eigen::SparseMatrix<double>& A, int d, const SvdOptions& opts = {});

Eigen::SparseMatrix<double> to_eigen_sparse(const PpmiMatrix& m);

// SVD embeddings of a PPMI matrix: rows = U_d * diag(sigma^p). For a tagged
// matrix the row blocks map to (word, period) keys; for a single-period
// matrix all keys carry that period label.
std::pair<SvdFactors, EmbeddingSet> svd_embeddings(const PpmiMatrix& m, const Vocabulary& vocab,
                                                   int d, double sigma_exponent,
                                                   const SvdOptions& opts = {});

}  // namespace chronovec
