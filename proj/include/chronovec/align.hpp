#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "chronovec/embed.hpp"
#include "chronovec/ppmi.hpp"

namespace chronovec {

struct AlignmentMap {
    Eigen::MatrixXd Q;  // N x N orthogonal
    std::string source_period;
    std::string target_period;
    double residual = 0;     // ||W_src Q - W_dst||_F
    bool degenerate = false; // rank-deficient cross-covariance
};

// Classical orthogonal Procrustes: Q = A B^T from the SVD of W_src^T W_dst.
// No centering or scaling; rows must correspond word-for-word.
AlignmentMap procrustes_align(const Eigen::MatrixXd& W_src, const Eigen::MatrixXd& W_dst);

void write_alignment(const AlignmentMap& map, std::ostream& os);
AlignmentMap read_alignment(std::istream& is);

struct Dw2vConfig {
    int max_steps = 20000;
    double base_step = 0;       // 0 = scale from a Lipschitz estimate
    double grad_tol_rel = 1e-9; // stop at ||grad|| <= tol * initial ||grad||
    double armijo_c = 1e-4;
    std::uint64_t seed = 7;
    int vocab_cap = 5000;
};

// Joint factorization of the temporal PPMI matrices M^(t) ~ W^(t) W^(t)^T
// with ridge weight lambda and temporal smoothing weight tau.
struct Dw2vProblem {
    std::vector<PpmiMatrix> ppmi;  // T symmetric V x V matrices
    int rank = 0;
    double lambda = 10;
    double tau = 50;
    Dw2vConfig solver;
};

double dw2v_objective(const std::vector<Eigen::MatrixXd>& W, const Dw2vProblem& problem);
std::vector<Eigen::MatrixXd> dw2v_gradient(const std::vector<Eigen::MatrixXd>& W,
                                           const Dw2vProblem& problem);

struct Dw2vResult {
    std::vector<Eigen::MatrixXd> W;
    double objective = 0;
    double grad_norm = 0;
    int steps = 0;
    std::vector<double> trace;  // objective after each accepted step
};

// Gradient descent with Armijo backtracking from a seeded init (the same
// start matrix for every period). Objective is nonincreasing across
// accepted steps; exhausting the backtracking is reported as divergence.
Dw2vResult dw2v_solve(const Dw2vProblem& problem);

EmbeddingSet dw2v_embeddings(const Dw2vResult& result, const Vocabulary& vocab,
                             const std::vector<std::string>& period_labels);

}  // namespace chronovec
