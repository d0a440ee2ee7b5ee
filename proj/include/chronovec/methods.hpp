#pragma once

#include <string>
#include <vector>

#include "chronovec/align.hpp"
#include "chronovec/cooc.hpp"
#include "chronovec/embed.hpp"
#include "chronovec/sgns.hpp"
#include "chronovec/svd.hpp"

namespace chronovec {

inline const std::vector<std::string>& known_methods() {
    static const std::vector<std::string> m = {"ppmi", "svd", "tsvd", "sgns", "tsgns", "dw2v"};
    return m;
}

struct MethodOptions {
    int window = 2;
    int dim = 300;
    double sigma_exponent = 0;
    TrainConfig train;
    PairStreamConfig stream;
    SvdOptions svd;
    double dw2v_lambda = 10;
    double dw2v_tau = 50;
    Dw2vConfig dw2v;
    // Dense PPMI embedding rows are |V| wide; refuse to materialize beyond
    // this many total entries (the smoothness harness stays sparse instead).
    std::int64_t ppmi_dense_cap = 50'000'000;
};

struct CorpusCounts {
    std::vector<CoocCounts> per_period;
    CoocCounts whole;
};
CorpusCounts compute_counts(const PeriodizedCorpus& corpus, const Vocabulary& vocab, int window);

// Builds the embedding set for any method in known_methods(). Per-period
// methods (svd, sgns) train each period independently; their cross-period
// cosines are meaningless without an alignment map, and EmbeddingSet
// carries that fact. `counts` may pass precomputed co-occurrence counts.
EmbeddingSet build_method_embeddings(const std::string& method, const PeriodizedCorpus& corpus,
                                     const Vocabulary& vocab, const MethodOptions& opts,
                                     const CorpusCounts* counts = nullptr);

}  // namespace chronovec
