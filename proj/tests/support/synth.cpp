#include "support/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace chronovec::synth {

namespace {

// Cumulative Zipf table over ranks 0..n-1; draw by binary search.
struct ZipfPool {
    std::vector<double> cdf;
    ZipfPool(int n, double s) {
        cdf.resize(n);
        double acc = 0;
        for (int r = 0; r < n; ++r) {
            acc += 1.0 / std::pow(static_cast<double>(r + 1), s);
            cdf[r] = acc;
        }
        for (auto& v : cdf) v /= acc;
    }
    int draw(Rng& rng) const {
        const double u = rng.uniform01();
        return static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    }
};

}  // namespace

std::string TopicCorpus::word(int index) const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "w%04d", index);
    return buf;
}

int TopicCorpus::topic_of(int word_index) const {
    if (word_index < cfg.common_words) return -1;
    return (word_index - cfg.common_words) / words_per_topic;
}

std::vector<std::string> TopicCorpus::topic_words(int topic, int count) const {
    std::vector<std::string> out;
    for (int r = 0; r < count && r < words_per_topic; ++r)
        out.push_back(word(cfg.common_words + topic * words_per_topic + r));
    return out;
}

TopicCorpus make_topic_corpus(const TopicCorpusConfig& cfg) {
    TopicCorpus tc;
    tc.cfg = cfg;
    tc.words_per_topic = (cfg.vocab_size - cfg.common_words) / cfg.topics;

    PeriodSpec spec;
    spec.start_year = cfg.year_start;
    spec.period_length = cfg.period_length;
    spec.end_year = cfg.year_start + cfg.periods * cfg.period_length;
    spec.validate();
    tc.corpus.spec = spec;
    tc.corpus.segments.resize(cfg.periods);
    for (int t = 0; t < cfg.periods; ++t) tc.corpus.periods.push_back(spec.label(t));

    const ZipfPool common_pool(cfg.common_words, cfg.zipf_s);
    const ZipfPool topic_pool(tc.words_per_topic, cfg.zipf_s);
    for (int t = 0; t < cfg.periods; ++t) {
        Rng rng(mix_seed(cfg.seed, 0xc0c0 + t));
        auto& seg = tc.corpus.segments[t];
        seg.reserve(cfg.lines_per_period);
        for (int l = 0; l < cfg.lines_per_period; ++l) {
            const int topic = static_cast<int>(rng.uniform_below(cfg.topics));
            NgramRecord rec;
            rec.year = cfg.year_start + t * cfg.period_length;
            rec.match_count = 1 + rng.uniform_below(cfg.max_match_count);
            rec.tokens.reserve(5);
            for (int j = 0; j < 5; ++j) {
                int idx;
                if (rng.uniform01() < cfg.common_fraction)
                    idx = common_pool.draw(rng);
                else
                    idx = cfg.common_words + topic * tc.words_per_topic + topic_pool.draw(rng);
                rec.tokens.push_back(tc.word(idx));
            }
            seg.push_back(std::move(rec));
        }
    }
    return tc;
}

void plant_context_swap(TopicCorpus& tc, const std::string& word, int to_topic, int period) {
    const ZipfPool topic_pool(tc.words_per_topic, tc.cfg.zipf_s);
    const ZipfPool common_pool(tc.cfg.common_words, tc.cfg.zipf_s);
    Rng rng(mix_seed(tc.cfg.seed, fnv1a64(word) ^ 0x5117));
    for (auto& rec : tc.corpus.segments[period]) {
        if (rec.tokens[2] != word) continue;
        for (int j = 0; j < 5; ++j) {
            if (j == 2) continue;
            int idx;
            if (rng.uniform01() < tc.cfg.common_fraction)
                idx = common_pool.draw(rng);
            else
                idx = tc.cfg.common_words + to_topic * tc.words_per_topic + topic_pool.draw(rng);
            rec.tokens[j] = tc.word(idx);
        }
    }
}

void plant_drift(TopicCorpus& tc, const std::string& word, int topic_a, int topic_b) {
    const int T = tc.corpus.num_periods();
    const ZipfPool topic_pool(tc.words_per_topic, tc.cfg.zipf_s);
    for (int t = 0; t < T; ++t) {
        Rng rng(mix_seed(tc.cfg.seed, fnv1a64(word) ^ (0xd41f + t)));
        const double frac_b = T == 1 ? 0.0 : static_cast<double>(t) / (T - 1);
        for (auto& rec : tc.corpus.segments[t]) {
            if (rec.tokens[2] != word) continue;
            for (int j = 0; j < 5; ++j) {
                if (j == 2) continue;
                const int topic = rng.uniform01() < frac_b ? topic_b : topic_a;
                rec.tokens[j] = tc.word(tc.cfg.common_words + topic * tc.words_per_topic + topic_pool.draw(rng));
            }
        }
    }
}

void remove_word_in_period(TopicCorpus& tc, const std::string& w, int period) {
    Rng rng(mix_seed(tc.cfg.seed, fnv1a64(w) ^ 0x4e40));
    int wi = -1;
    for (int i = 0; i < tc.cfg.vocab_size; ++i)
        if (tc.word(i) == w) wi = i;
    if (wi < 0) throw ValidationError("remove_word_in_period: unknown synthetic word " + w);
    const int topic = tc.topic_of(wi) < 0 ? 0 : tc.topic_of(wi);
    for (auto& rec : tc.corpus.segments[period])
        for (auto& tok : rec.tokens)
            while (tok == w) {
                const int r = static_cast<int>(rng.uniform_below(tc.words_per_topic));
                tok = tc.word(tc.cfg.common_words + topic * tc.words_per_topic + r);
            }
}

void plant_copied_contexts(TopicCorpus& tc, const std::string& x, const std::string& y, int period,
                           int source_period) {
    auto& seg = tc.corpus.segments[period];
    seg.erase(std::remove_if(seg.begin(), seg.end(),
                             [&](const NgramRecord& r) { return r.tokens[2] == x; }),
              seg.end());
    const int target_year = tc.cfg.year_start + period * tc.cfg.period_length;
    for (const auto& rec : tc.corpus.segments[source_period]) {
        if (rec.tokens[2] != y) continue;
        NgramRecord copy = rec;
        copy.tokens[2] = x;
        copy.year = target_year;
        seg.push_back(std::move(copy));
    }
}

PeriodizedCorpus make_interchangeable_corpus(int context_words, int lines, std::uint64_t seed,
                                             std::string* x_out, std::string* y_out) {
    PeriodSpec spec;
    spec.start_year = 1990;
    spec.end_year = 1992;
    spec.period_length = 1;
    PeriodizedCorpus corpus;
    corpus.spec = spec;
    corpus.segments.resize(2);
    corpus.periods = {spec.label(0), spec.label(1)};
    *x_out = "xx";
    *y_out = "yy";
    Rng rng(mix_seed(seed, 0x1c7a));
    auto ctx = [&](Rng& r) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "c%03d", r.uniform_below(context_words));
        return std::string(buf);
    };
    for (int l = 0; l < lines; ++l) {
        NgramRecord rec;
        rec.year = 1990;
        rec.match_count = 1;
        for (int j = 0; j < 5; ++j) rec.tokens.push_back(j == 2 ? (l % 2 ? *x_out : *y_out) : ctx(rng));
        corpus.segments[0].push_back(std::move(rec));
    }
    // tiny filler segment so the 2-period invariant holds
    for (int l = 0; l < std::max(lines / 10, 5); ++l) {
        NgramRecord rec;
        rec.year = 1991;
        rec.match_count = 1;
        for (int j = 0; j < 5; ++j) rec.tokens.push_back(ctx(rng));
        corpus.segments[1].push_back(std::move(rec));
    }
    return corpus;
}

void write_ngram_tsv(const PeriodizedCorpus& corpus, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write " + path);
    for (const auto& seg : corpus.segments) {
        for (const auto& rec : seg) {
            for (std::size_t j = 0; j < rec.tokens.size(); ++j) os << (j ? " " : "") << rec.tokens[j];
            os << '\t' << rec.year << '\t' << rec.match_count << '\t' << 1 << "\n";
        }
    }
}

}  // namespace chronovec::synth
