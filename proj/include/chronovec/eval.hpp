#pragma once

#include <span>
#include <string>
#include <vector>

#include "chronovec/align.hpp"
#include "chronovec/methods.hpp"
#include "chronovec/report.hpp"

namespace chronovec {

// One cell of the context-overlap suite: alpha is the fraction of copied
// probe-word lines whose context tokens get replaced by random vocabulary
// words, so overlap = (1 - alpha) * 100%.
struct PerturbationSpec {
    std::vector<std::string> probe_words;
    std::string t;
    std::string t_plus_1;
    double alpha = 0;
    std::uint64_t seed = 1;
};

// For every probe word w: drop all records in t+1 whose middle token is w,
// copy w's middle-token records from t, then rewrite the four context tokens
// of an alpha-weight fraction of the copies. Selection and replacements are
// functions of (seed, word, record) only, so the perturbed sets nest as
// alpha grows. Records in the two segments must be 5-grams.
PeriodizedCorpus perturb_overlap(const PeriodizedCorpus& corpus, const Vocabulary& vocab,
                                 const PerturbationSpec& spec);

// Pearson correlation of fractional ranks (average ranks on ties).
double spearman(std::span<const double> xs, std::span<const double> ys);

struct SmoothnessOptions {
    std::vector<double> alphas{0, 0.1, 0.2, 0.3, 0.4};
    std::vector<std::string> probes;
    std::string t;
    std::string t_plus_1;
    std::uint64_t perturb_seed = 1;
    MethodOptions method;
};

// Per (method, alpha): rebuild the perturbed corpus, train, and report the
// cross-period cosine of every probe plus the unweighted mean. Unaligned
// baselines (sgns, svd) are part of the comparison by design; this harness
// is the one place their cross-period cosines are computed.
EvalReport smoothness_curve(const std::vector<std::string>& methods, const PeriodizedCorpus& corpus,
                            const Vocabulary& vocab, const SmoothnessOptions& opts);

struct SimilarityPair {
    std::string w1, w2;
    double score;
};
// "word1 word2 score" rows, tab or space separated; '#' lines are comments.
std::vector<SimilarityPair> read_similarity_pairs(const std::string& path);

EvalReport similarity_benchmark(const EmbeddingSet& set, const std::vector<SimilarityPair>& pairs,
                                const std::string& period);

// Per selected word, Spearman between the across-period series of embedding
// norm and of normalized frequency. Empty `words` selects every word
// observed in all periods.
EvalReport norm_frequency_correlation(const EmbeddingSet& set, const PeriodizedCorpus& corpus,
                                      const Vocabulary& vocab, const std::vector<std::string>& words);

struct DisplacementEntry {
    std::string word;
    double displacement;  // 1 - cosine(w at t0, w at t1)
};
// Ranked descending, ties broken lexicographically; words unobserved in
// either period are excluded and counted. Unaligned embeddings need `map`
// (source t0 -> target t1); otherwise a GuardError. top_k of 0 returns the
// full ranking.
std::vector<DisplacementEntry> semantic_displacement(const EmbeddingSet& set, const std::string& t0,
                                                     const std::string& t1, std::size_t top_k,
                                                     const AlignmentMap* map = nullptr,
                                                     std::size_t* excluded = nullptr);

EvalReport known_shift_benchmark(const EmbeddingSet& set, const std::vector<std::string>& shifted,
                                 const std::vector<std::string>& control, const std::string& t0,
                                 const std::string& t1, const AlignmentMap* map = nullptr);

struct NeighborHit {
    std::string word;
    std::string period;
    double cosine;
    bool observed;
};
// Top-k (word, period) keys by cosine to the query vector, restricted to
// target_periods, never returning the query key. Tie-break: cosine desc,
// word asc, period asc.
std::vector<NeighborHit> temporal_neighbors(const EmbeddingSet& set, const std::string& word,
                                            const std::string& period, std::size_t k,
                                            const std::vector<std::string>& target_periods);

struct TrajectoryPoint {
    std::string word;
    std::string period;
    double x, y;
    bool is_query;
};
// The word's vector at each period plus its k nearest same-period neighbors,
// projected to 2D by PCA of the centered gathered vectors.
std::vector<TrajectoryPoint> trajectory_export(const EmbeddingSet& set, const std::string& word,
                                               const std::vector<std::string>& periods, std::size_t k);
std::string trajectory_svg(const std::vector<TrajectoryPoint>& points);

// One word per line; '#' starts a comment.
std::vector<std::string> read_word_list(const std::string& path);

}  // namespace chronovec
