#include "chronovec/cooc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace chronovec {

void CoocCounts::merge(const CoocCounts& other) {
    if (vocab_size != other.vocab_size) throw ValidationError("cooc merge: vocabulary size mismatch");
    for (const auto& kv : other.pair_counts) pair_counts[kv.first] += kv.second;
    for (int i = 0; i < vocab_size; ++i) {
        center_marginals[i] += other.center_marginals[i];
        context_marginals[i] += other.context_marginals[i];
    }
    total_pairs += other.total_pairs;
}

std::string CoocCounts::to_text(const Vocabulary& vocab) const {
    std::vector<std::uint64_t> keys;
    keys.reserve(pair_counts.size());
    for (const auto& kv : pair_counts) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    std::ostringstream os;
    os << "# cooc period=" << (period.empty() ? "<all>" : period) << " vocab=" << vocab_size
       << " total_pairs=" << total_pairs << " entries=" << keys.size() << "\n";
    for (auto k : keys) {
        int c = static_cast<int>(k / vocab_size);
        int x = static_cast<int>(k % vocab_size);
        os << vocab.words[c] << '\t' << vocab.words[x] << '\t' << pair_counts.at(k) << '\n';
    }
    return os.str();
}

namespace {

// Maps a record to vocabulary indices; out-of-vocabulary tokens keep their
// position (they separate their neighbours) but produce no pairs.
inline void record_indices(const NgramRecord& rec, const Vocabulary& vocab, std::vector<int>& ids) {
    ids.clear();
    for (const auto& tok : rec.tokens) ids.push_back(vocab.find(tok));
}

template <typename Emit>
inline void windowed_pairs(const std::vector<int>& ids, int window, Emit&& emit) {
    const int n = static_cast<int>(ids.size());
    for (int p = 0; p < n; ++p) {
        if (ids[p] < 0) continue;
        const int lo = std::max(0, p - window);
        const int hi = std::min(n - 1, p + window);
        for (int q = lo; q <= hi; ++q) {
            if (q == p || ids[q] < 0) continue;
            emit(ids[p], ids[q]);
        }
    }
}

}  // namespace

CoocCounts count_pairs_segment(const std::vector<NgramRecord>& records, const Vocabulary& vocab,
                               int window, const std::string& label) {
    if (window < 1) throw ValidationError("window radius must be >= 1");
    CoocCounts counts;
    counts.period = label;
    counts.vocab_size = vocab.size();
    counts.center_marginals.assign(vocab.size(), 0);
    counts.context_marginals.assign(vocab.size(), 0);
    std::vector<int> ids;
    for (const auto& rec : records) {
        record_indices(rec, vocab, ids);
        windowed_pairs(ids, window, [&](int c, int x) { counts.add(c, x, rec.match_count); });
    }
    return counts;
}

CoocCounts count_pairs(const PeriodizedCorpus& corpus, const Vocabulary& vocab, int window,
                       const std::string& period_label) {
    int t = corpus.period_index(period_label);
    return count_pairs_segment(corpus.segments[t], vocab, window, period_label);
}

CoocCounts whole_corpus_counts(const PeriodizedCorpus& corpus, const Vocabulary& vocab, int window) {
    CoocCounts counts;
    counts.period = "";
    counts.vocab_size = vocab.size();
    counts.center_marginals.assign(vocab.size(), 0);
    counts.context_marginals.assign(vocab.size(), 0);
    std::vector<int> ids;
    for (const auto& seg : corpus.segments) {
        for (const auto& rec : seg) {
            record_indices(rec, vocab, ids);
            windowed_pairs(ids, window, [&](int c, int x) { counts.add(c, x, rec.match_count); });
        }
    }
    return counts;
}

namespace {

std::vector<TrainingPair> stream_impl(const PeriodizedCorpus* corpus,
                                      const std::vector<NgramRecord>* segment, int segment_period,
                                      const Vocabulary& vocab, int window,
                                      const PairStreamConfig& config, bool tagged) {
    if (window < 1) throw ValidationError("window radius must be >= 1");
    std::vector<TrainingPair> pairs;
    Rng rng(mix_seed(config.seed, 0x70a1u));

    // word2vec-style keep probability from corpus frequency of the context word
    std::vector<double> keep;
    if (config.subsample_threshold > 0) {
        std::int64_t total = 0;
        for (auto c : vocab.counts) total += c;
        keep.resize(vocab.size());
        for (int i = 0; i < vocab.size(); ++i) {
            double f = static_cast<double>(vocab.counts[i]) / static_cast<double>(total);
            double r = config.subsample_threshold / f;
            keep[i] = std::min(1.0, std::sqrt(r) + r);
        }
    }

    const int vsize = vocab.size();
    std::vector<int> ids;
    auto emit_segment = [&](const std::vector<NgramRecord>& records, int t) {
        for (const auto& rec : records) {
            record_indices(rec, vocab, ids);
            windowed_pairs(ids, window, [&](int c, int x) {
                if (!keep.empty() && rng.uniform01() >= keep[x]) return;
                TrainingPair p;
                p.center = static_cast<std::uint32_t>(tagged ? t * vsize + c : c);
                p.context = static_cast<std::uint32_t>(config.tagged_contexts && tagged ? t * vsize + x : x);
                p.weight = static_cast<std::uint32_t>(rec.match_count);
                pairs.push_back(p);
            });
        }
    };

    if (corpus) {
        for (int t = 0; t < corpus->num_periods(); ++t) emit_segment(corpus->segments[t], t);
    } else {
        emit_segment(*segment, segment_period);
    }
    return pairs;
}

}  // namespace

std::vector<TrainingPair> tagged_pair_stream(const PeriodizedCorpus& corpus, const Vocabulary& vocab,
                                             int window, const PairStreamConfig& config) {
    return stream_impl(&corpus, nullptr, 0, vocab, window, config, true);
}

std::vector<TrainingPair> plain_pair_stream(const std::vector<NgramRecord>& records,
                                            const Vocabulary& vocab, int window,
                                            const PairStreamConfig& config) {
    return stream_impl(nullptr, &records, 0, vocab, window, config, false);
}

}  // namespace chronovec
