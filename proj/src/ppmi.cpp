#include "chronovec/ppmi.hpp"

#include <algorithm>
#include <cmath>

namespace chronovec {

double PpmiMatrix::at(int i, int j) const {
    auto r = row(i);
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const std::pair<int, double>& cell, int col) { return cell.first < col; });
    if (it != r.end() && it->first == j) return it->second;
    return 0.0;
}

namespace {

PpmiMatrix ppmi_from(const CoocCounts& joint, const std::vector<std::int64_t>& center_marg,
                     const std::vector<std::int64_t>& context_marg, std::int64_t total,
                     PpmiMeta meta) {
    if (total <= 0) throw ValidationError("PPMI: total pair count must be positive");
    const int v = joint.vocab_size;

    // Bucket sort the sparse entries by row, then by column within the row.
    std::vector<std::vector<std::pair<int, double>>> rows(v);
    const double dtotal = static_cast<double>(total);
    for (const auto& kv : joint.pair_counts) {
        if (kv.second <= 0) continue;
        int i = static_cast<int>(kv.first / v);
        int j = static_cast<int>(kv.first % v);
        if (center_marg[i] <= 0 || context_marg[j] <= 0)
            throw ValidationError("PPMI: zero marginal for a word that appears in a pair");
        double value = std::log(static_cast<double>(kv.second) * dtotal /
                                (static_cast<double>(center_marg[i]) * static_cast<double>(context_marg[j])));
        if (value > 0.0) rows[i].emplace_back(j, value);
    }

    PpmiMatrix m;
    m.rows = v;
    m.cols = v;
    m.meta = std::move(meta);
    m.row_ptr.assign(v + 1, 0);
    std::size_t n = 0;
    for (auto& r : rows) n += r.size();
    m.cells.reserve(n);
    for (int i = 0; i < v; ++i) {
        std::sort(rows[i].begin(), rows[i].end());
        m.row_ptr[i] = m.cells.size();
        m.cells.insert(m.cells.end(), rows[i].begin(), rows[i].end());
    }
    m.row_ptr[v] = m.cells.size();
    return m;
}

}  // namespace

PpmiMatrix build_ppmi(const CoocCounts& counts) {
    PpmiMeta meta;
    if (!counts.period.empty()) meta.periods = {counts.period};
    meta.marginals = "segment";
    return ppmi_from(counts, counts.center_marginals, counts.context_marginals, counts.total_pairs,
                     std::move(meta));
}

PpmiMatrix build_temporal_ppmi(const CoocCounts& segment_counts, const CoocCounts& whole_counts) {
    if (segment_counts.vocab_size != whole_counts.vocab_size)
        throw ValidationError("temporal PPMI: vocabulary size mismatch");
    PpmiMeta meta;
    meta.periods = {segment_counts.period};
    meta.marginals = "corpus";
    if (segment_counts.total_pairs == 0) {
        // Empty period segment: a valid all-zero matrix.
        PpmiMatrix m;
        m.rows = m.cols = segment_counts.vocab_size;
        m.row_ptr.assign(m.rows + 1, 0);
        m.meta = std::move(meta);
        m.meta.marginals = "corpus(empty-segment)";
        return m;
    }
    return ppmi_from(segment_counts, whole_counts.center_marginals, whole_counts.context_marginals,
                     whole_counts.total_pairs, std::move(meta));
}

PpmiMatrix build_temporal_ppmi(const PeriodizedCorpus& corpus, const Vocabulary& vocab, int window,
                               const std::string& period) {
    CoocCounts seg = count_pairs(corpus, vocab, window, period);
    CoocCounts whole = whole_corpus_counts(corpus, vocab, window);
    PpmiMatrix m = build_temporal_ppmi(seg, whole);
    m.meta.window = window;
    return m;
}

PpmiMatrix concat_tagged_ppmi(const std::vector<PpmiMatrix>& per_period) {
    if (per_period.size() < 2) throw ValidationError("tagged PPMI concat needs at least 2 periods");
    const int cols = per_period.front().cols;
    for (const auto& m : per_period) {
        if (m.cols != cols || m.rows != per_period.front().rows)
            throw ValidationError("tagged PPMI concat: per-period matrix dimensions differ");
        if (m.meta.window != per_period.front().meta.window)
            throw ValidationError("tagged PPMI concat: window radius differs across inputs");
    }
    PpmiMatrix out;
    out.cols = cols;
    out.rows = 0;
    out.meta.window = per_period.front().meta.window;
    out.meta.tagged = true;
    out.meta.marginals = per_period.front().meta.marginals;
    out.row_ptr.push_back(0);
    for (const auto& m : per_period) {
        for (const auto& p : m.meta.periods) out.meta.periods.push_back(p);
        for (int i = 0; i < m.rows; ++i) {
            auto r = m.row(i);
            out.cells.insert(out.cells.end(), r.begin(), r.end());
            out.row_ptr.push_back(out.cells.size());
        }
        out.rows += m.rows;
    }
    return out;
}

double sparse_row_cosine(const PpmiMatrix& a, int i, const PpmiMatrix& b, int j) {
    auto ra = a.row(i);
    auto rb = b.row(j);
    double dot = 0, na = 0, nb = 0;
    std::size_t p = 0, q = 0;
    while (p < ra.size() && q < rb.size()) {
        if (ra[p].first == rb[q].first) {
            dot += ra[p].second * rb[q].second;
            ++p, ++q;
        } else if (ra[p].first < rb[q].first) {
            ++p;
        } else {
            ++q;
        }
    }
    for (const auto& c : ra) na += c.second * c.second;
    for (const auto& c : rb) nb += c.second * c.second;
    if (na == 0.0 || nb == 0.0) throw DegenerateError("cosine of a zero PPMI row");
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace chronovec
