#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace chronovec::oracle {

DenseCounts dense_count(const std::vector<NgramRecord>& records, const Vocabulary& vocab, int window) {
    const int v = vocab.size();
    DenseCounts out;
    out.pair.assign(v, std::vector<std::int64_t>(v, 0));
    out.center.assign(v, 0);
    out.context.assign(v, 0);
    for (const auto& rec : records) {
        const int n = static_cast<int>(rec.tokens.size());
        std::vector<int> ids(n);
        for (int p = 0; p < n; ++p) ids[p] = vocab.find(rec.tokens[p]);
        for (int p = 0; p < n; ++p) {
            for (int q = 0; q < n; ++q) {
                if (p == q || std::abs(p - q) > window) continue;
                if (ids[p] < 0 || ids[q] < 0) continue;
                out.pair[ids[p]][ids[q]] += rec.match_count;
                out.center[ids[p]] += rec.match_count;
                out.context[ids[q]] += rec.match_count;
                out.total += rec.match_count;
            }
        }
    }
    return out;
}

Eigen::MatrixXd dense_ppmi(const DenseCounts& joint, const DenseCounts& marginals) {
    const int v = static_cast<int>(joint.pair.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(v, v);
    const double total = static_cast<double>(marginals.total);
    for (int i = 0; i < v; ++i) {
        for (int j = 0; j < v; ++j) {
            if (joint.pair[i][j] <= 0) continue;
            const double value =
                std::log(static_cast<double>(joint.pair[i][j]) * total /
                         (static_cast<double>(marginals.center[i]) * static_cast<double>(marginals.context[j])));
            if (value > 0.0) m(i, j) = value;
        }
    }
    return m;
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = static_cast<double>(i + j) / 2.0 + 1.0;
        i = j + 1;
    }
    return ranks;
}

double tie_term(std::span<const double> v) {
    std::vector<double> sorted(v.begin(), v.end());
    std::sort(sorted.begin(), sorted.end());
    double t_sum = 0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        t_sum += (t * t * t - t) / 12.0;
        i = j + 1;
    }
    return t_sum;
}

}  // namespace

double spearman_rank_formula(std::span<const double> xs, std::span<const double> ys) {
    const double n = static_cast<double>(xs.size());
    const auto rx = average_ranks(xs);
    const auto ry = average_ranks(ys);
    double d2 = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
    const double K = (n * n * n - n) / 6.0;
    const double tx = tie_term(xs), ty = tie_term(ys);
    return (K - d2 - tx - ty) / std::sqrt((K - 2.0 * tx) * (K - 2.0 * ty));
}

}  // namespace chronovec::oracle
