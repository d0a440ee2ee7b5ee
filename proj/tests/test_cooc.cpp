#include <doctest.h>

#include <map>

#include "chronovec/cooc.hpp"
#include "support/oracles.hpp"
#include "support/synth.hpp"

using namespace chronovec;

namespace {

PeriodizedCorpus two_period_corpus(std::vector<std::vector<std::vector<std::string>>> recs_per_period,
                                   std::int64_t weight = 1) {
    PeriodizedCorpus corpus;
    corpus.spec = {1990, 1990 + static_cast<int>(recs_per_period.size()), 1};
    corpus.segments.resize(recs_per_period.size());
    for (std::size_t t = 0; t < recs_per_period.size(); ++t) {
        corpus.periods.push_back(std::to_string(1990 + t));
        for (auto& tokens : recs_per_period[t])
            corpus.segments[t].push_back({tokens, 1990 + static_cast<int>(t), weight});
    }
    return corpus;
}

Vocabulary vocab_of(const PeriodizedCorpus& corpus) { return build_vocabulary(corpus, 1); }

}  // namespace

TEST_SUITE_BEGIN("cooc");

TEST_CASE("window enumeration on a 3-token record") {
    auto corpus = two_period_corpus({{{"a", "b", "c"}}, {}});
    auto vocab = vocab_of(corpus);
    auto counts = count_pairs(corpus, vocab, 1, "1990");
    const int a = vocab.index_of("a"), b = vocab.index_of("b"), c = vocab.index_of("c");
    CHECK(counts.at(a, b) == 1);
    CHECK(counts.at(b, a) == 1);
    CHECK(counts.at(b, c) == 1);
    CHECK(counts.at(c, b) == 1);
    CHECK(counts.at(a, c) == 0);
    CHECK(counts.total_pairs == 4);
}

TEST_CASE("5-gram with window 2 clips at record bounds") {
    auto corpus = two_period_corpus({{{"a", "b", "c", "d", "e"}}, {}}, 3);
    auto vocab = vocab_of(corpus);
    auto counts = count_pairs(corpus, vocab, 2, "1990");
    CHECK(counts.at(vocab.index_of("c"), vocab.index_of("a")) == 3);
    CHECK(counts.at(vocab.index_of("a"), vocab.index_of("d")) == 0);  // distance 3 > L
    // every token is a center: 2+3+4+3+2 = 14 positions, weight 3
    CHECK(counts.total_pairs == 14 * 3);
}

TEST_CASE("random text matches the dense brute-force oracle") {
    Rng rng(99);
    std::vector<std::string> words;
    for (int i = 0; i < 7; ++i) words.push_back(std::string(1, static_cast<char>('a' + i)));
    std::vector<std::string> text;
    for (int i = 0; i < 30; ++i) text.push_back(words[rng.uniform_below(7)]);
    auto corpus = two_period_corpus({{text}, {}});
    auto vocab = vocab_of(corpus);
    auto counts = count_pairs(corpus, vocab, 2, "1990");
    auto oracle = oracle::dense_count(corpus.segments[0], vocab, 2);
    for (int i = 0; i < vocab.size(); ++i) {
        CHECK(counts.center_marginals[i] == oracle.center[i]);
        CHECK(counts.context_marginals[i] == oracle.context[i]);
        for (int j = 0; j < vocab.size(); ++j) CHECK(counts.at(i, j) == oracle.pair[i][j]);
    }
    CHECK(counts.total_pairs == oracle.total);
}

TEST_CASE("out-of-vocabulary tokens keep their positions") {
    auto corpus = two_period_corpus({{{"a", "zz", "c"}}, {}});
    Vocabulary vocab;  // only a and c
    vocab.words = {"a", "c"};
    vocab.counts = {1, 1};
    vocab.index = {{"a", 0}, {"c", 1}};
    auto counts = count_pairs(corpus, vocab, 1, "1990");
    CHECK(counts.total_pairs == 0);  // a and c are 2 apart
    auto wide = count_pairs(corpus, vocab, 2, "1990");
    CHECK(wide.at(0, 1) == 1);
}

TEST_CASE("marginal consistency and period additivity") {
    synth::TopicCorpusConfig cfg;
    cfg.vocab_size = 120;
    cfg.topics = 4;
    cfg.common_words = 12;
    cfg.lines_per_period = 300;
    cfg.seed = 5;
    auto tc = synth::make_topic_corpus(cfg);
    auto vocab = build_vocabulary(tc.corpus, 1);
    auto whole = whole_corpus_counts(tc.corpus, vocab, 2);

    std::int64_t sum_pairs = 0;
    std::vector<std::int64_t> row_sums(vocab.size(), 0);
    for (const auto& kv : whole.pair_counts) {
        sum_pairs += kv.second;
        row_sums[kv.first / vocab.size()] += kv.second;
    }
    CHECK(sum_pairs == whole.total_pairs);
    for (int i = 0; i < vocab.size(); ++i) CHECK(row_sums[i] == whole.center_marginals[i]);

    CoocCounts merged;
    merged.vocab_size = vocab.size();
    merged.center_marginals.assign(vocab.size(), 0);
    merged.context_marginals.assign(vocab.size(), 0);
    for (const auto& label : tc.corpus.periods) merged.merge(count_pairs(tc.corpus, vocab, 2, label));
    CHECK(merged.total_pairs == whole.total_pairs);
    CHECK(merged.pair_counts.size() == whole.pair_counts.size());
    for (const auto& kv : whole.pair_counts) CHECK(merged.pair_counts.at(kv.first) == kv.second);
}

TEST_CASE("symmetric window implies symmetric counts") {
    synth::TopicCorpusConfig cfg;
    cfg.vocab_size = 60;
    cfg.topics = 3;
    cfg.common_words = 9;
    cfg.lines_per_period = 120;
    auto tc = synth::make_topic_corpus(cfg);
    auto vocab = build_vocabulary(tc.corpus, 1);
    auto counts = whole_corpus_counts(tc.corpus, vocab, 2);
    for (const auto& kv : counts.pair_counts) {
        const int i = static_cast<int>(kv.first / vocab.size());
        const int j = static_cast<int>(kv.first % vocab.size());
        CHECK(counts.at(j, i) == kv.second);
    }
}

TEST_CASE("tagged index arithmetic round-trips") {
    Vocabulary vocab;
    vocab.words = {"a", "b", "c"};
    vocab.counts = {3, 2, 1};
    vocab.index = {{"a", 0}, {"b", 1}, {"c", 2}};
    TaggedVocabulary tagged{&vocab, 2};
    CHECK(tagged.size() == 6);
    CHECK(tagged.tagged_index(2, 1) == 5);
    for (int k = 0; k < tagged.size(); ++k) {
        auto [w, t] = tagged.untag(k);
        CHECK(tagged.tagged_index(w, t) == k);
    }
}

TEST_CASE("tagged stream aggregates to the per-period counts") {
    synth::TopicCorpusConfig cfg;
    cfg.vocab_size = 60;
    cfg.topics = 3;
    cfg.common_words = 9;
    cfg.lines_per_period = 150;
    cfg.max_match_count = 4;
    auto tc = synth::make_topic_corpus(cfg);
    auto vocab = build_vocabulary(tc.corpus, 1);
    auto pairs = tagged_pair_stream(tc.corpus, vocab, 2, PairStreamConfig{});

    std::map<std::pair<int, int>, std::int64_t> agg;  // (untagged center, context)
    for (const auto& p : pairs) agg[{static_cast<int>(p.center % vocab.size()), p.context}] += p.weight;
    auto whole = whole_corpus_counts(tc.corpus, vocab, 2);
    CHECK(agg.size() == whole.pair_counts.size());
    for (const auto& [key, count] : agg) CHECK(whole.at(key.first, key.second) == count);

    // center tags match the record's period
    auto per0 = count_pairs(tc.corpus, vocab, 2, tc.corpus.periods[0]);
    std::int64_t tagged0 = 0;
    for (const auto& p : pairs)
        if (p.center < static_cast<std::uint32_t>(vocab.size())) tagged0 += p.weight;
    CHECK(tagged0 == per0.total_pairs);
}

TEST_CASE("tagged index formula in the stream") {
    // T=2, |V|=3: word index 2 in period 1 -> tagged 1*3+2 = 5
    auto corpus = two_period_corpus({{{"a", "b", "c"}}, {{"c", "b", "a"}}});
    Vocabulary vocab;
    vocab.words = {"a", "b", "c"};
    vocab.counts = {2, 2, 2};
    vocab.index = {{"a", 0}, {"b", 1}, {"c", 2}};
    auto pairs = tagged_pair_stream(corpus, vocab, 1, PairStreamConfig{});
    bool found = false;
    for (const auto& p : pairs)
        if (p.center == 5) found = true;  // c as center in period 1
    CHECK(found);
    for (const auto& p : pairs) {
        CHECK(p.center < 6);
        CHECK(p.context < 3);  // contexts untagged
    }
}

TEST_CASE("stream determinism and subsampling") {
    synth::TopicCorpusConfig cfg;
    cfg.vocab_size = 60;
    cfg.topics = 3;
    cfg.common_words = 9;
    cfg.lines_per_period = 100;
    auto tc = synth::make_topic_corpus(cfg);
    auto vocab = build_vocabulary(tc.corpus, 1);

    PairStreamConfig a{0.0, 7, false};
    auto s1 = tagged_pair_stream(tc.corpus, vocab, 2, a);
    auto s2 = tagged_pair_stream(tc.corpus, vocab, 2, a);
    REQUIRE(s1.size() == s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i) {
        CHECK(s1[i].center == s2[i].center);
        CHECK(s1[i].context == s2[i].context);
        CHECK(s1[i].weight == s2[i].weight);
    }

    PairStreamConfig sub{1e-4, 7, false};
    auto s3 = tagged_pair_stream(tc.corpus, vocab, 2, sub);
    CHECK(s3.size() < s1.size());  // frequent contexts get dropped
    auto s4 = tagged_pair_stream(tc.corpus, vocab, 2, sub);
    CHECK(s3.size() == s4.size());
}

TEST_CASE("tagged contexts mode tags the output side") {
    auto corpus = two_period_corpus({{{"a", "b"}}, {{"a", "b"}}});
    Vocabulary vocab;
    vocab.words = {"a", "b"};
    vocab.counts = {2, 2};
    vocab.index = {{"a", 0}, {"b", 1}};
    PairStreamConfig cfg{0.0, 1, true};
    auto pairs = tagged_pair_stream(corpus, vocab, 1, cfg);
    bool high_context = false;
    for (const auto& p : pairs)
        if (p.context >= 2) high_context = true;
    CHECK(high_context);
}

TEST_CASE("serialized counts are sorted with a marginal-total header") {
    auto corpus = two_period_corpus({{{"b", "a"}}, {}});
    auto vocab = vocab_of(corpus);
    auto counts = count_pairs(corpus, vocab, 1, "1990");
    auto text = counts.to_text(vocab);
    CHECK(text.find("total_pairs=2") != std::string::npos);
    CHECK(text.find("a\tb\t1") != std::string::npos);
    CHECK(text.find("b\ta\t1") != std::string::npos);
}

TEST_SUITE_END();
