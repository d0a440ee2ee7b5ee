#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "chronovec/corpus.hpp"

namespace chronovec {

// Sparse center x context counts for one period (or the whole corpus),
// with marginals. Symmetric window, so pair_counts(i,j) == pair_counts(j,i).
struct CoocCounts {
    std::string period;  // label, or "" for whole-corpus counts
    int vocab_size = 0;
    std::unordered_map<std::uint64_t, std::int64_t> pair_counts;
    std::vector<std::int64_t> center_marginals;
    std::vector<std::int64_t> context_marginals;
    std::int64_t total_pairs = 0;

    std::uint64_t key(int center, int context) const {
        return static_cast<std::uint64_t>(center) * vocab_size + context;
    }
    std::int64_t at(int center, int context) const {
        auto it = pair_counts.find(key(center, context));
        return it == pair_counts.end() ? 0 : it->second;
    }
    void add(int center, int context, std::int64_t w) {
        pair_counts[key(center, context)] += w;
        center_marginals[center] += w;
        context_marginals[context] += w;
        total_pairs += w;
    }
    // Elementwise accumulate; periods must share the vocabulary.
    void merge(const CoocCounts& other);
    // Sorted "center<TAB>context<TAB>count" rows under a header with the
    // marginal totals; the oracle-test interchange format.
    std::string to_text(const Vocabulary& vocab) const;
};

// Counts every in-vocabulary token as a center against the in-vocabulary
// tokens within +-window raw positions, clipped at record bounds. Weighted
// by match_count.
CoocCounts count_pairs(const PeriodizedCorpus& corpus, const Vocabulary& vocab, int window,
                       const std::string& period_label);
CoocCounts count_pairs_segment(const std::vector<NgramRecord>& records, const Vocabulary& vocab,
                               int window, const std::string& label);
// Sum over all periods (marginals and |D| on the whole corpus).
CoocCounts whole_corpus_counts(const PeriodizedCorpus& corpus, const Vocabulary& vocab, int window);

// (word, period) -> t * |V| + i index arithmetic for the tagged input layer.
struct TaggedVocabulary {
    const Vocabulary* base = nullptr;
    int num_periods = 0;

    int size() const { return num_periods * base->size(); }
    int tagged_index(int word, int period) const { return period * base->size() + word; }
    std::pair<int, int> untag(int tagged) const {  // (word, period)
        return {tagged % base->size(), tagged / base->size()};
    }
};

struct TrainingPair {
    std::uint32_t center;   // tagged index in tagged streams, plain otherwise
    std::uint32_t context;  // untagged unless tagged_contexts
    std::uint32_t weight;   // record multiplicity
};

struct PairStreamConfig {
    double subsample_threshold = 0.0;  // 0 disables subsampling
    std::uint64_t seed = 1;
    bool tagged_contexts = false;  // tag the output side too (comparison mode)
};

// Emits the pairs of count_pairs for every period in corpus order, centers
// tagged with the record's period. Deterministic given (corpus order, seed).
std::vector<TrainingPair> tagged_pair_stream(const PeriodizedCorpus& corpus, const Vocabulary& vocab,
                                             int window, const PairStreamConfig& config);

// Untagged stream over a single segment, for per-period SGNS baselines.
std::vector<TrainingPair> plain_pair_stream(const std::vector<NgramRecord>& records,
                                            const Vocabulary& vocab, int window,
                                            const PairStreamConfig& config);

}  // namespace chronovec
