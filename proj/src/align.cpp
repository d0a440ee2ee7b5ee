#include "chronovec/align.hpp"

#include <cmath>
#include <istream>
#include <ostream>

namespace chronovec {

AlignmentMap procrustes_align(const Eigen::MatrixXd& W_src, const Eigen::MatrixXd& W_dst) {
    if (W_src.rows() != W_dst.rows() || W_src.cols() != W_dst.cols())
        throw ValidationError("procrustes: embedding matrices must have equal shapes");
    if (W_src.rows() == 0 || W_src.cols() == 0) throw ValidationError("procrustes: empty input");

    const Eigen::MatrixXd C = W_src.transpose() * W_dst;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullU | Eigen::ComputeFullV);
    AlignmentMap map;
    map.Q = svd.matrixU() * svd.matrixV().transpose();
    map.residual = (W_src * map.Q - W_dst).norm();
    const auto& s = svd.singularValues();
    map.degenerate = s(s.size() - 1) <= 1e-12 * std::max(s(0), 1e-300);
    if (map.degenerate) log_warn("procrustes: rank-deficient cross-covariance, map is SVD-defined");
    return map;
}

void write_alignment(const AlignmentMap& map, std::ostream& os) {
    os << "chronovec-align v1\n";
    os << "source " << map.source_period << "\n";
    os << "target " << map.target_period << "\n";
    os << "dim " << map.Q.rows() << "\n";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", map.residual);
    os << "residual " << buf << "\n";
    os << "degenerate " << (map.degenerate ? 1 : 0) << "\n";
    for (Eigen::Index i = 0; i < map.Q.rows(); ++i) {
        for (Eigen::Index j = 0; j < map.Q.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", map.Q(i, j));
            os << (j ? " " : "") << buf;
        }
        os << "\n";
    }
}

AlignmentMap read_alignment(std::istream& is) {
    std::string tag;
    std::getline(is, tag);
    if (tag != "chronovec-align v1") throw ValidationError("not an alignment map file");
    AlignmentMap map;
    std::string key;
    int dim = 0, degen = 0;
    is >> key >> map.source_period;
    is >> key >> map.target_period;
    is >> key >> dim;
    is >> key >> map.residual;
    is >> key >> degen;
    if (dim <= 0) throw ValidationError("alignment map: bad dimension");
    map.degenerate = degen != 0;
    map.Q.resize(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (!(is >> map.Q(i, j))) throw ValidationError("alignment map: truncated matrix block");
    return map;
}

namespace {

void check_problem(const Dw2vProblem& problem) {
    if (problem.ppmi.empty()) throw ValidationError("dw2v: no PPMI matrices");
    const int v = problem.ppmi.front().cols;
    for (const auto& m : problem.ppmi)
        if (m.rows != v || m.cols != v)
            throw ValidationError("dw2v: PPMI matrices must be square and share dimensions");
    if (problem.rank < 1 || problem.rank > v) throw ValidationError("dw2v: rank out of range");
    if (!(problem.lambda >= 0) || !(problem.tau >= 0))
        throw ValidationError("dw2v: lambda and tau must be finite and nonnegative");
    if (v > problem.solver.vocab_cap)
        throw ValidationError("dw2v: vocabulary " + std::to_string(v) + " exceeds the configured cap " +
                              std::to_string(problem.solver.vocab_cap) +
                              " (the dense factors would not fit at full scale)");
}

// <M, W W^T> over the sparse entries only.
double sparse_inner(const PpmiMatrix& m, const Eigen::MatrixXd& W) {
    double acc = 0;
    for (int i = 0; i < m.rows; ++i)
        for (const auto& cell : m.row(i)) acc += cell.second * W.row(i).dot(W.row(cell.first));
    return acc;
}

Eigen::MatrixXd sparse_times_dense(const PpmiMatrix& m, const Eigen::MatrixXd& W) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m.rows, W.cols());
    for (int i = 0; i < m.rows; ++i)
        for (const auto& cell : m.row(i)) out.row(i) += cell.second * W.row(cell.first);
    return out;
}

double frob2(const PpmiMatrix& m) {
    double acc = 0;
    for (const auto& cell : m.cells) acc += cell.second * cell.second;
    return acc;
}

}  // namespace

double dw2v_objective(const std::vector<Eigen::MatrixXd>& W, const Dw2vProblem& problem) {
    check_problem(problem);
    if (W.size() != problem.ppmi.size()) throw ValidationError("dw2v: factor count does not match T");
    const int T = static_cast<int>(W.size());
    double f = 0;
    for (int t = 0; t < T; ++t) {
        if (W[t].rows() != problem.ppmi[t].rows || W[t].cols() != problem.rank)
            throw ValidationError("dw2v: factor shape mismatch at period " + std::to_string(t));
        const Eigen::MatrixXd gram = W[t].transpose() * W[t];  // d x d
        // ||M - W W^T||^2 = ||M||^2 - 2 <M, W W^T> + ||W^T W||^2
        f += 0.5 * (frob2(problem.ppmi[t]) - 2.0 * sparse_inner(problem.ppmi[t], W[t]) +
                    gram.squaredNorm());
        f += 0.5 * problem.lambda * W[t].squaredNorm();
        if (t > 0) f += 0.5 * problem.tau * (W[t - 1] - W[t]).squaredNorm();
    }
    return f;
}

std::vector<Eigen::MatrixXd> dw2v_gradient(const std::vector<Eigen::MatrixXd>& W,
                                           const Dw2vProblem& problem) {
    const int T = static_cast<int>(W.size());
    std::vector<Eigen::MatrixXd> grad(T);
    for (int t = 0; t < T; ++t) {
        const Eigen::MatrixXd gram = W[t].transpose() * W[t];
        grad[t] = 2.0 * (W[t] * gram - sparse_times_dense(problem.ppmi[t], W[t]));
        grad[t] += problem.lambda * W[t];
        if (t > 0) grad[t] += problem.tau * (W[t] - W[t - 1]);
        if (t + 1 < T) grad[t] += problem.tau * (W[t] - W[t + 1]);
    }
    return grad;
}

Dw2vResult dw2v_solve(const Dw2vProblem& problem) {
    check_problem(problem);
    const int T = static_cast<int>(problem.ppmi.size());
    const int v = problem.ppmi.front().cols;
    const int d = problem.rank;
    const Dw2vConfig& cfg = problem.solver;

    // The same seeded start matrix for every period keeps the smoothing term
    // zero at step 0.
    Rng rng(mix_seed(cfg.seed, 0xd2d2u));
    Eigen::MatrixXd W0(v, d);
    for (int i = 0; i < v; ++i)
        for (int j = 0; j < d; ++j) W0(i, j) = 0.1 * rng.gaussian();
    std::vector<Eigen::MatrixXd> W(T, W0);

    double max_m_norm = 0;
    for (const auto& m : problem.ppmi) max_m_norm = std::max(max_m_norm, std::sqrt(frob2(m)));

    Dw2vResult res;
    double f = dw2v_objective(W, problem);
    res.trace.push_back(f);
    double grad0 = -1;
    std::vector<Eigen::MatrixXd> cand(T);
    for (int step = 0; step < cfg.max_steps; ++step) {
        auto grad = dw2v_gradient(W, problem);
        double g2 = 0;
        for (const auto& g : grad) g2 += g.squaredNorm();
        const double gnorm = std::sqrt(g2);
        res.grad_norm = gnorm;
        if (grad0 < 0) grad0 = gnorm;
        if (gnorm <= cfg.grad_tol_rel * grad0 + 1e-300) break;

        double s;
        if (cfg.base_step > 0) {
            s = cfg.base_step;
        } else {
            double max_gram = 0;
            for (const auto& w : W) max_gram = std::max(max_gram, (w.transpose() * w).norm());
            const double lip = 2.0 * (3.0 * max_gram + max_m_norm) + problem.lambda + 4.0 * problem.tau;
            s = 1.0 / std::max(lip, 1e-12);
        }
        const double s_min = s * 1e-18;
        bool accepted = false;
        while (s > s_min) {
            for (int t = 0; t < T; ++t) cand[t] = W[t] - s * grad[t];
            const double f_new = dw2v_objective(cand, problem);
            if (f_new <= f - cfg.armijo_c * s * g2) {
                W.swap(cand);
                f = f_new;
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if (!accepted)
            throw ConvergenceError("dw2v: line search failed at step " + std::to_string(step) +
                                   " (objective " + std::to_string(f) + ", grad norm " +
                                   std::to_string(gnorm) + ")");
        res.trace.push_back(f);
        res.steps = step + 1;
    }
    res.W = std::move(W);
    res.objective = f;
    return res;
}

EmbeddingSet dw2v_embeddings(const Dw2vResult& result, const Vocabulary& vocab,
                             const std::vector<std::string>& period_labels) {
    if (result.W.size() != period_labels.size())
        throw ValidationError("dw2v_embeddings: period label count mismatch");
    EmbeddingSet set;
    set.method = "dw2v";
    set.dim = static_cast<int>(result.W.front().cols());
    set.words = vocab.words;
    set.periods = period_labels;
    set.rows.resize(static_cast<std::int64_t>(period_labels.size()) * vocab.size(), set.dim);
    for (std::size_t t = 0; t < result.W.size(); ++t)
        set.rows.middleRows(static_cast<std::int64_t>(t) * vocab.size(), vocab.size()) = result.W[t];
    return set;
}

}  // namespace chronovec
