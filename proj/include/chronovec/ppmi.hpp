#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chronovec/cooc.hpp"

namespace chronovec {

struct PpmiMeta {
    std::vector<std::string> periods;  // periods covered, in row-block order
    int window = 0;
    bool tagged = false;               // rows are (period, word) blocks
    std::string marginals = "segment"; // "segment" or "corpus"
};

// Sparse nonnegative matrix in CSR form; zero entries are implicit and every
// stored value is strictly positive.
struct PpmiMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::size_t> row_ptr;           // rows + 1
    std::vector<std::pair<int, double>> cells;  // (col, value), sorted by col within a row
    PpmiMeta meta;

    std::size_t nnz() const { return cells.size(); }
    std::span<const std::pair<int, double>> row(int i) const {
        return {cells.data() + row_ptr[i], cells.data() + row_ptr[i + 1]};
    }
    double at(int i, int j) const;
};

// M_ij = max(log(#(w_i,c_j) * |D| / (#(w_i) * #(c_j))), 0) with |D| the total
// pair count of `counts`; zero and nonpositive-log entries are omitted.
PpmiMatrix build_ppmi(const CoocCounts& counts);

// Joint counts from one period, marginals and |D| from the whole corpus: the
// naturally aligned temporal PPMI. An empty segment yields a matrix with no
// entries (flagged via meta.periods).
PpmiMatrix build_temporal_ppmi(const PeriodizedCorpus& corpus, const Vocabulary& vocab, int window,
                               const std::string& period);
// Same, given precomputed counts (the smoothness harness reuses these).
PpmiMatrix build_temporal_ppmi(const CoocCounts& segment_counts, const CoocCounts& whole_counts);

// Row-stacks per-period matrices: row (t * |V| + i) is row i of input t.
PpmiMatrix concat_tagged_ppmi(const std::vector<PpmiMatrix>& per_period);

// Cosine between sparse rows; throws DegenerateError on a zero row.
double sparse_row_cosine(const PpmiMatrix& a, int i, const PpmiMatrix& b, int j);

}  // namespace chronovec
