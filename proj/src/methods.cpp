#include "chronovec/methods.hpp"

#include <algorithm>

namespace chronovec {

CorpusCounts compute_counts(const PeriodizedCorpus& corpus, const Vocabulary& vocab, int window) {
    CorpusCounts counts;
    counts.whole.period = "";
    counts.whole.vocab_size = vocab.size();
    counts.whole.center_marginals.assign(vocab.size(), 0);
    counts.whole.context_marginals.assign(vocab.size(), 0);
    for (int t = 0; t < corpus.num_periods(); ++t) {
        counts.per_period.push_back(
            count_pairs_segment(corpus.segments[t], vocab, window, corpus.periods[t]));
        counts.whole.merge(counts.per_period.back());
    }
    return counts;
}

namespace {

void attach_observed(EmbeddingSet& set, const PeriodizedCorpus& corpus, const Vocabulary& vocab) {
    PeriodWordStats stats = per_period_word_stats(corpus, vocab);
    set.observed.assign(static_cast<std::size_t>(corpus.num_periods()) * vocab.size(), 1);
    for (int t = 0; t < corpus.num_periods(); ++t)
        for (int i = 0; i < vocab.size(); ++i)
            if (stats.counts[t][i] == 0)
                set.observed[static_cast<std::size_t>(t) * vocab.size() + i] = 0;
}

EmbeddingSet build_ppmi_set(const PeriodizedCorpus& corpus, const Vocabulary& vocab,
                            const MethodOptions& opts, const CorpusCounts& counts) {
    const std::int64_t entries = static_cast<std::int64_t>(corpus.num_periods()) * vocab.size() * vocab.size();
    if (entries > opts.ppmi_dense_cap)
        throw ValidationError("ppmi embeddings: dense rows would hold " + std::to_string(entries) +
                              " values, above the cap " + std::to_string(opts.ppmi_dense_cap) +
                              "; use the smoothness harness for large sparse PPMI");
    EmbeddingSet set;
    set.method = "ppmi";
    set.dim = vocab.size();
    set.words = vocab.words;
    set.periods = corpus.periods;
    set.rows = MatrixRM::Zero(static_cast<std::int64_t>(corpus.num_periods()) * vocab.size(), vocab.size());
    for (int t = 0; t < corpus.num_periods(); ++t) {
        PpmiMatrix m = build_temporal_ppmi(counts.per_period[t], counts.whole);
        for (int i = 0; i < vocab.size(); ++i)
            for (const auto& cell : m.row(i))
                set.rows(static_cast<std::int64_t>(t) * vocab.size() + i, cell.first) = cell.second;
    }
    return set;
}

EmbeddingSet build_svd_set(const PeriodizedCorpus& corpus, const Vocabulary& vocab,
                           const MethodOptions& opts, const CorpusCounts& counts) {
    EmbeddingSet set;
    set.method = "svd";
    set.dim = opts.dim;
    set.words = vocab.words;
    set.periods = corpus.periods;
    set.rows.resize(static_cast<std::int64_t>(corpus.num_periods()) * vocab.size(), opts.dim);
    for (int t = 0; t < corpus.num_periods(); ++t) {
        // Per-period PPMI on the segment's own marginals: separate spaces.
        PpmiMatrix m = build_ppmi(counts.per_period[t]);
        SvdOptions sopts = opts.svd;
        sopts.seed = mix_seed(opts.svd.seed, fnv1a64(corpus.periods[t]));
        auto [factors, sub] = svd_embeddings(m, vocab, opts.dim, opts.sigma_exponent, sopts);
        set.rows.middleRows(static_cast<std::int64_t>(t) * vocab.size(), vocab.size()) = sub.rows;
    }
    set.prov.seed = opts.svd.seed;
    return set;
}

EmbeddingSet build_tsvd_set(const PeriodizedCorpus& corpus, const Vocabulary& vocab,
                            const MethodOptions& opts, const CorpusCounts& counts) {
    std::vector<PpmiMatrix> per_period;
    for (int t = 0; t < corpus.num_periods(); ++t)
        per_period.push_back(build_temporal_ppmi(counts.per_period[t], counts.whole));
    for (auto& m : per_period) m.meta.window = opts.window;
    PpmiMatrix stacked = concat_tagged_ppmi(per_period);
    auto [factors, set] = svd_embeddings(stacked, vocab, opts.dim, opts.sigma_exponent, opts.svd);
    return std::move(set);
}

EmbeddingSet build_sgns_set(const PeriodizedCorpus& corpus, const Vocabulary& vocab,
                            const MethodOptions& opts) {
    EmbeddingSet set;
    set.method = "sgns";
    set.dim = opts.dim;
    set.words = vocab.words;
    set.periods = corpus.periods;
    set.rows.resize(static_cast<std::int64_t>(corpus.num_periods()) * vocab.size(), opts.dim);
    const auto noise = make_noise_weights(vocab, 1, false);
    for (int t = 0; t < corpus.num_periods(); ++t) {
        // Independent runs: each period gets its own derived seed.
        const std::uint64_t period_seed = mix_seed(opts.train.seed, fnv1a64(corpus.periods[t]));
        PairStreamConfig scfg = opts.stream;
        scfg.seed = period_seed;
        scfg.tagged_contexts = false;
        auto pairs = plain_pair_stream(corpus.segments[t], vocab, opts.window, scfg);
        SgnsModel model = init_model(vocab, 1, opts.dim, SgnsMode::plain, period_seed);
        TrainConfig tcfg = opts.train;
        tcfg.seed = period_seed;
        train(model, pairs, noise, tcfg);
        set.rows.middleRows(static_cast<std::int64_t>(t) * vocab.size(), vocab.size()) = model.input;
    }
    set.prov.seed = opts.train.seed;
    return set;
}

EmbeddingSet build_tsgns_set(const PeriodizedCorpus& corpus, const Vocabulary& vocab,
                             const MethodOptions& opts) {
    PairStreamConfig scfg = opts.stream;
    scfg.seed = opts.train.seed;
    auto pairs = tagged_pair_stream(corpus, vocab, opts.window, scfg);
    SgnsModel model = init_model(vocab, corpus.num_periods(), opts.dim, SgnsMode::tagged,
                                 opts.train.seed, scfg.tagged_contexts);
    const auto noise = make_noise_weights(vocab, corpus.num_periods(), scfg.tagged_contexts);
    train(model, pairs, noise, opts.train);
    EmbeddingSet set = extract_embeddings(model, vocab, corpus.periods);
    set.prov.seed = opts.train.seed;
    return set;
}

EmbeddingSet build_dw2v_set(const PeriodizedCorpus& corpus, const Vocabulary& vocab,
                            const MethodOptions& opts, const CorpusCounts& counts) {
    Dw2vProblem problem;
    for (int t = 0; t < corpus.num_periods(); ++t)
        problem.ppmi.push_back(build_temporal_ppmi(counts.per_period[t], counts.whole));
    problem.rank = opts.dim;
    problem.lambda = opts.dw2v_lambda;
    problem.tau = opts.dw2v_tau;
    problem.solver = opts.dw2v;
    Dw2vResult result = dw2v_solve(problem);
    log_info("dw2v: objective " + std::to_string(result.objective) + " after " +
             std::to_string(result.steps) + " steps, grad norm " + std::to_string(result.grad_norm));
    EmbeddingSet set = dw2v_embeddings(result, vocab, corpus.periods);
    set.prov.seed = opts.dw2v.seed;
    return set;
}

}  // namespace

EmbeddingSet build_method_embeddings(const std::string& method, const PeriodizedCorpus& corpus,
                                     const Vocabulary& vocab, const MethodOptions& opts,
                                     const CorpusCounts* counts) {
    const auto& known = known_methods();
    if (std::find(known.begin(), known.end(), method) == known.end())
        throw ValidationError("unknown method \"" + method + "\"");

    CorpusCounts local;
    const bool needs_counts = method != "sgns" && method != "tsgns";
    if (needs_counts && !counts) {
        local = compute_counts(corpus, vocab, opts.window);
        counts = &local;
    }

    EmbeddingSet set;
    if (method == "ppmi")
        set = build_ppmi_set(corpus, vocab, opts, *counts);
    else if (method == "svd")
        set = build_svd_set(corpus, vocab, opts, *counts);
    else if (method == "tsvd")
        set = build_tsvd_set(corpus, vocab, opts, *counts);
    else if (method == "sgns")
        set = build_sgns_set(corpus, vocab, opts);
    else if (method == "tsgns")
        set = build_tsgns_set(corpus, vocab, opts);
    else
        set = build_dw2v_set(corpus, vocab, opts, *counts);

    attach_observed(set, corpus, vocab);
    set.prov.corpus_hash = corpus.content_hash();
    set.validate();
    return set;
}

}  // namespace chronovec
