#include "chronovec/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace chronovec {

namespace {

constexpr int kMiddle = 2;  // middle token of a 5-gram

bool is_probe_middle(const NgramRecord& rec, const std::set<std::string>& probes) {
    return rec.tokens.size() == 5 && probes.count(rec.tokens[kMiddle]) > 0;
}

}  // namespace

PeriodizedCorpus perturb_overlap(const PeriodizedCorpus& corpus, const Vocabulary& vocab,
                                 const PerturbationSpec& spec) {
    if (spec.alpha < 0 || spec.alpha > 1) throw ValidationError("perturbation: alpha must be in [0, 1]");
    if (spec.probe_words.empty()) throw ValidationError("perturbation: no probe words");
    const int t = corpus.period_index(spec.t);
    const int t1 = corpus.period_index(spec.t_plus_1);
    if (t == t1) throw ValidationError("perturbation: the two periods must differ");
    for (int seg : {t, t1})
        for (const auto& rec : corpus.segments[seg])
            if (rec.tokens.size() != 5)
                throw ValidationError("perturbation requires 5-gram records; segment " +
                                      corpus.periods[seg] + " has a record with " +
                                      std::to_string(rec.tokens.size()) + " tokens");

    const std::set<std::string> probes(spec.probe_words.begin(), spec.probe_words.end());

    // Records in t whose middle token is a probe word, bucketed by probe.
    std::unordered_map<std::string, std::vector<const NgramRecord*>> source;
    for (const auto& rec : corpus.segments[t])
        if (is_probe_middle(rec, probes)) source[rec.tokens[kMiddle]].push_back(&rec);
    std::string missing;
    for (const auto& w : spec.probe_words)
        if (!source.count(w)) missing += missing.empty() ? w : (", " + w);
    if (!missing.empty())
        throw ValidationError("perturbation: probe word(s) have no middle-token records in period " +
                              spec.t + ": " + missing);

    PeriodizedCorpus out;
    out.spec = corpus.spec;
    out.periods = corpus.periods;
    out.segments = corpus.segments;
    auto& target = out.segments[t1];
    target.clear();
    for (const auto& rec : corpus.segments[t1])
        if (!is_probe_middle(rec, probes)) target.push_back(rec);

    for (const auto& w : spec.probe_words) {
        const auto& records = source.at(w);
        std::int64_t total_weight = 0;
        for (auto* r : records) total_weight += r->match_count;

        // Same shuffle and same per-record replacements at every alpha, so
        // the perturbed subsets are prefixes of one another.
        const std::uint64_t word_seed = mix_seed(spec.seed, fnv1a64(w));
        Rng shuffle_rng(word_seed);
        std::vector<std::size_t> order(records.size());
        std::iota(order.begin(), order.end(), 0);
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[shuffle_rng.uniform_below(static_cast<std::uint32_t>(i))]);

        const double threshold = spec.alpha * static_cast<double>(total_weight);
        std::int64_t cumulative = 0;
        std::vector<NgramRecord> copies(records.size());
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
            const NgramRecord& src = *records[order[pos]];
            NgramRecord rec = src;
            if (static_cast<double>(cumulative) < threshold) {
                Rng rec_rng(mix_seed(word_seed, 0xa11a + pos));
                for (int j = 0; j < 5; ++j) {
                    if (j == kMiddle) continue;
                    rec.tokens[j] = vocab.words[rec_rng.uniform_below(static_cast<std::uint32_t>(vocab.size()))];
                }
            }
            cumulative += src.match_count;
            copies[order[pos]] = std::move(rec);  // keep segment-t record order
        }
        for (auto& rec : copies) target.push_back(std::move(rec));
    }
    return out;
}

namespace {

std::vector<double> frac_ranks(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based average rank
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw ValidationError("spearman: length mismatch");
    if (xs.size() < 2) throw ValidationError("spearman: need at least 2 observations");
    const auto rx = frac_ranks(xs);
    const auto ry = frac_ranks(ys);
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += rx[i], my += ry[i];
    mx /= n, my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = rx[i] - mx, dy = ry[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0)
        throw DegenerateError("spearman: correlation undefined for constant input");
    return sxy / std::sqrt(sxx * syy);
}

EvalReport smoothness_curve(const std::vector<std::string>& methods, const PeriodizedCorpus& corpus,
                            const Vocabulary& vocab, const SmoothnessOptions& opts) {
    if (methods.empty()) throw ValidationError("smoothness: no methods selected");
    for (const auto& m : methods)
        if (std::find(known_methods().begin(), known_methods().end(), m) == known_methods().end())
            throw ValidationError("smoothness: unknown method \"" + m + "\"");
    if (opts.probes.empty()) throw ValidationError("smoothness: no probe words");
    for (const auto& w : opts.probes) vocab.index_of(w);

    EvalReport report;
    report.task = "smoothness";
    report.params["methods"] = methods;
    report.params["probes"] = opts.probes;
    report.params["t"] = opts.t;
    report.params["t_plus_1"] = opts.t_plus_1;
    report.params["alphas"] = opts.alphas;
    report.params["perturb_seed"] = opts.perturb_seed;
    report.params["train_seed"] = opts.method.train.seed;
    report.params["window"] = opts.method.window;
    report.params["dim"] = opts.method.dim;
    report.params["epochs"] = opts.method.train.epochs;
    report.params["corpus_hash"] = to_hex16(corpus.content_hash());

    const bool want_counts = std::any_of(methods.begin(), methods.end(), [](const std::string& m) {
        return m == "ppmi" || m == "svd" || m == "tsvd" || m == "dw2v";
    });

    // method -> (overlap, mean) curve, in grid order
    std::map<std::string, std::vector<std::pair<double, double>>> curves;

    for (double alpha : opts.alphas) {
        PerturbationSpec spec;
        spec.probe_words = opts.probes;
        spec.t = opts.t;
        spec.t_plus_1 = opts.t_plus_1;
        spec.alpha = alpha;
        spec.seed = opts.perturb_seed;
        const PeriodizedCorpus perturbed = perturb_overlap(corpus, vocab, spec);
        const double overlap = (1.0 - alpha) * 100.0;

        CorpusCounts counts;
        if (want_counts) counts = compute_counts(perturbed, vocab, opts.method.window);

        for (const auto& method : methods) {
            std::vector<double> cosines;
            if (method == "ppmi") {
                // Stay sparse: temporal PPMI rows with whole-corpus marginals.
                const int it = perturbed.period_index(opts.t);
                const int it1 = perturbed.period_index(opts.t_plus_1);
                PpmiMatrix a = build_temporal_ppmi(counts.per_period[it], counts.whole);
                PpmiMatrix b = build_temporal_ppmi(counts.per_period[it1], counts.whole);
                for (const auto& w : opts.probes) {
                    const int i = vocab.index_of(w);
                    cosines.push_back(sparse_row_cosine(a, i, b, i));
                }
            } else {
                EmbeddingSet set =
                    build_method_embeddings(method, perturbed, vocab, opts.method, want_counts ? &counts : nullptr);
                const int pt = set.period_index(opts.t);
                const int pt1 = set.period_index(opts.t_plus_1);
                for (const auto& w : opts.probes) {
                    const int i = set.word_index(w);
                    // The harness compares aligned and unaligned methods on
                    // purpose; the public ops keep their guard.
                    cosines.push_back(cosine_similarity(set.vector_of(i, pt), set.vector_of(i, pt1)));
                }
            }
            double mean = std::accumulate(cosines.begin(), cosines.end(), 0.0) /
                          static_cast<double>(cosines.size());
            nlohmann::json item;
            item["method"] = method;
            item["alpha"] = alpha;
            item["overlap_pct"] = overlap;
            nlohmann::json per_word = nlohmann::json::object();
            for (std::size_t i = 0; i < opts.probes.size(); ++i) per_word[opts.probes[i]] = cosines[i];
            item["cosines"] = per_word;
            item["mean"] = mean;
            report.items.push_back(item);
            curves[method].emplace_back(overlap, mean);
            log_info("smoothness " + method + " overlap " + std::to_string(overlap) + "% mean " +
                     std::to_string(mean));
        }
    }

    for (const auto& method : methods) {
        const auto& curve = curves[method];
        std::vector<double> overlaps, means;
        for (auto& [o, m] : curve) overlaps.push_back(o), means.push_back(m);
        nlohmann::json agg;
        agg["overlap_pct"] = overlaps;
        agg["mean_cosine"] = means;
        try {
            agg["spearman_overlap_mean"] = spearman(overlaps, means);
        } catch (const DegenerateError&) {
            agg["spearman_overlap_mean"] = nullptr;
        }
        report.aggregates[method] = agg;
    }
    return report;
}

std::vector<SimilarityPair> read_similarity_pairs(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open similarity file: " + path);
    std::vector<SimilarityPair> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_ws(line);
        if (fields.size() != 3) throw ParseError(line_no, "expected \"word1 word2 score\"");
        double score;
        if (!parse_double(fields[2], score)) throw ParseError(line_no, "score is not a number");
        pairs.push_back({fields[0], fields[1], score});
    }
    return pairs;
}

EvalReport similarity_benchmark(const EmbeddingSet& set, const std::vector<SimilarityPair>& pairs,
                                const std::string& period) {
    if (pairs.empty()) throw ValidationError("similarity benchmark: no pairs");
    const int t = set.period_index(period);
    std::unordered_map<std::string, int> word_index;
    for (std::size_t i = 0; i < set.words.size(); ++i) word_index.emplace(set.words[i], static_cast<int>(i));
    std::vector<double> human, model;
    EvalReport report;
    report.task = "similarity";
    report.params["period"] = period;
    report.params["method"] = set.method;
    report.params["pairs"] = pairs.size();
    for (const auto& pair : pairs) {
        auto it1 = word_index.find(pair.w1);
        auto it2 = word_index.find(pair.w2);
        if (it1 == word_index.end() || it2 == word_index.end()) continue;
        const int i1 = it1->second, i2 = it2->second;
        if (!set.is_observed(i1, t) || !set.is_observed(i2, t)) continue;
        double cos;
        try {
            cos = cosine_similarity(set.vector_of(i1, t), set.vector_of(i2, t));
        } catch (const DegenerateError&) {
            continue;  // zero PPMI row behaves like an OOV word here
        }
        human.push_back(pair.score);
        model.push_back(cos);
        nlohmann::json item;
        item["w1"] = pair.w1;
        item["w2"] = pair.w2;
        item["human"] = pair.score;
        item["cosine"] = cos;
        report.items.push_back(item);
    }
    if (human.empty()) throw ValidationError("similarity benchmark: zero coverage for period " + period);
    report.aggregates["spearman"] = spearman(model, human);
    report.aggregates["coverage"] = static_cast<double>(human.size()) / pairs.size();
    report.aggregates["used"] = human.size();
    report.aggregates["total"] = pairs.size();
    return report;
}

EvalReport norm_frequency_correlation(const EmbeddingSet& set, const PeriodizedCorpus& corpus,
                                      const Vocabulary& vocab, const std::vector<std::string>& words) {
    if (set.num_periods() < 3)
        throw ValidationError("norm-frequency correlation needs at least 3 periods");
    PeriodWordStats stats = per_period_word_stats(corpus, vocab);
    std::vector<int> period_of_set(set.num_periods());
    for (int t = 0; t < set.num_periods(); ++t) period_of_set[t] = corpus.period_index(set.periods[t]);

    std::vector<std::string> selected = words;
    if (selected.empty()) {
        for (const auto& w : set.words) {
            const int vi = vocab.find(w);
            if (vi < 0) continue;
            bool everywhere = true;
            for (int t : period_of_set)
                if (stats.counts[t][vi] == 0) everywhere = false;
            if (everywhere) selected.push_back(w);
        }
    }

    EvalReport report;
    report.task = "norm_frequency";
    report.params["method"] = set.method;
    report.params["periods"] = set.periods;
    report.params["corpus_hash"] = to_hex16(corpus.content_hash());
    std::vector<double> rhos;
    std::size_t skipped_absent = 0, skipped_constant = 0;
    for (const auto& w : selected) {
        int vi;
        try {
            vi = vocab.index_of(w);
            (void)set.word_index(w);
        } catch (const LookupError&) {
            ++skipped_absent;
            continue;
        }
        bool everywhere = true;
        for (int t : period_of_set)
            if (stats.counts[t][vi] == 0) everywhere = false;
        if (!everywhere) {
            ++skipped_absent;
            continue;
        }
        std::vector<double> norms, freqs;
        const int wi = set.word_index(w);
        for (int t = 0; t < set.num_periods(); ++t) {
            norms.push_back(set.vector_of(wi, t).norm());
            freqs.push_back(static_cast<double>(stats.counts[period_of_set[t]][vi]) /
                            static_cast<double>(stats.totals[period_of_set[t]]));
        }
        double rho;
        try {
            rho = spearman(norms, freqs);
        } catch (const DegenerateError&) {
            ++skipped_constant;
            nlohmann::json item;
            item["word"] = w;
            item["note"] = "constant series, skipped";
            report.items.push_back(item);
            continue;
        }
        rhos.push_back(rho);
        nlohmann::json item;
        item["word"] = w;
        item["spearman"] = rho;
        item["norms"] = norms;
        item["frequencies"] = freqs;
        report.items.push_back(item);
    }
    if (rhos.empty()) throw ValidationError("norm-frequency correlation: no scorable words");
    report.aggregates["average_spearman"] =
        std::accumulate(rhos.begin(), rhos.end(), 0.0) / static_cast<double>(rhos.size());
    report.aggregates["words_scored"] = rhos.size();
    report.aggregates["skipped_absent"] = skipped_absent;
    report.aggregates["skipped_constant"] = skipped_constant;
    return report;
}

namespace {

// Cross-period cosine with the comparability guard and optional alignment.
double guarded_cross_cosine(const EmbeddingSet& set, int word, int t0, int t1,
                            const AlignmentMap* map) {
    if (!set.aligned()) {
        if (!map)
            throw GuardError("method \"" + set.method +
                             "\" embeds periods in separate spaces; supply a Procrustes alignment map");
        if (map->source_period != set.periods[t0] || map->target_period != set.periods[t1])
            throw ValidationError("alignment map covers " + map->source_period + "->" +
                                  map->target_period + ", not the requested periods");
        Eigen::RowVectorXd mapped = set.vector_of(word, t0) * map->Q;
        return cosine_similarity(mapped, set.vector_of(word, t1));
    }
    return cosine_similarity(set.vector_of(word, t0), set.vector_of(word, t1));
}

}  // namespace

std::vector<DisplacementEntry> semantic_displacement(const EmbeddingSet& set, const std::string& t0,
                                                     const std::string& t1, std::size_t top_k,
                                                     const AlignmentMap* map, std::size_t* excluded) {
    const int p0 = set.period_index(t0);
    const int p1 = set.period_index(t1);
    std::vector<DisplacementEntry> ranking;
    std::size_t skipped = 0;
    for (int i = 0; i < set.num_words(); ++i) {
        if (!set.is_observed(i, p0) || !set.is_observed(i, p1)) {
            ++skipped;
            continue;
        }
        double cos;
        try {
            cos = guarded_cross_cosine(set, i, p0, p1, map);
        } catch (const DegenerateError&) {
            ++skipped;
            continue;
        }
        ranking.push_back({set.words[i], 1.0 - cos});
    }
    std::sort(ranking.begin(), ranking.end(), [](const DisplacementEntry& a, const DisplacementEntry& b) {
        if (a.displacement != b.displacement) return a.displacement > b.displacement;
        return a.word < b.word;
    });
    if (top_k > 0 && ranking.size() > top_k) ranking.resize(top_k);
    if (excluded) *excluded = skipped;
    return ranking;
}

EvalReport known_shift_benchmark(const EmbeddingSet& set, const std::vector<std::string>& shifted,
                                 const std::vector<std::string>& control, const std::string& t0,
                                 const std::string& t1, const AlignmentMap* map) {
    if (shifted.empty() || control.empty())
        throw ValidationError("known-shift benchmark: both label sets must be nonempty");
    std::set<std::string> shifted_set(shifted.begin(), shifted.end());
    for (const auto& w : control)
        if (shifted_set.count(w))
            throw ValidationError("known-shift benchmark: word \"" + w + "\" appears in both label sets");

    const int p0 = set.period_index(t0);
    const int p1 = set.period_index(t1);
    struct Labeled {
        std::string word;
        double displacement;
        int label;
    };
    std::vector<Labeled> rows;
    std::size_t oov = 0;
    auto add = [&](const std::vector<std::string>& words, int label) {
        for (const auto& w : words) {
            int i;
            try {
                i = set.word_index(w);
            } catch (const LookupError&) {
                ++oov;
                continue;
            }
            if (!set.is_observed(i, p0) || !set.is_observed(i, p1)) {
                ++oov;
                continue;
            }
            double cos;
            try {
                cos = guarded_cross_cosine(set, i, p0, p1, map);
            } catch (const DegenerateError&) {
                ++oov;
                continue;
            }
            rows.push_back({w, 1.0 - cos, label});
        }
    };
    add(shifted, 1);
    add(control, 0);
    std::size_t n_shifted = 0;
    for (const auto& r : rows) n_shifted += r.label;
    if (n_shifted == 0 || n_shifted == rows.size())
        throw ValidationError("known-shift benchmark: a label set is empty after OOV filtering");

    std::vector<double> disp, labels;
    for (const auto& r : rows) disp.push_back(r.displacement), labels.push_back(r.label);
    const double rho = spearman(disp, labels);  // DegenerateError surfaces

    double mean_shifted = 0, mean_control = 0;
    for (const auto& r : rows) (r.label ? mean_shifted : mean_control) += r.displacement;
    mean_shifted /= static_cast<double>(n_shifted);
    mean_control /= static_cast<double>(rows.size() - n_shifted);

    std::sort(rows.begin(), rows.end(), [](const Labeled& a, const Labeled& b) {
        if (a.displacement != b.displacement) return a.displacement > b.displacement;
        return a.word < b.word;
    });
    // precision@k clamps k to the number of positive labels, otherwise the
    // metric is unattainable when the shifted set is smaller than k.
    auto precision_at = [&](std::size_t k) {
        const std::size_t k_eff = std::min(k, n_shifted);
        std::size_t hits = 0;
        for (std::size_t i = 0; i < std::min(k_eff, rows.size()); ++i) hits += rows[i].label;
        return static_cast<double>(hits) / static_cast<double>(k_eff);
    };

    EvalReport report;
    report.task = "known_shifts";
    report.params["t0"] = t0;
    report.params["t1"] = t1;
    report.params["method"] = set.method;
    report.params["shifted"] = shifted.size();
    report.params["control"] = control.size();
    for (const auto& r : rows) {
        nlohmann::json item;
        item["word"] = r.word;
        item["displacement"] = r.displacement;
        item["label"] = r.label ? "shifted" : "control";
        report.items.push_back(item);
    }
    report.aggregates["rank_correlation"] = rho;
    report.aggregates["mean_gap"] = mean_shifted - mean_control;
    report.aggregates["precision_at_10"] = precision_at(10);
    report.aggregates["precision_at_50"] = precision_at(50);
    report.aggregates["oov_excluded"] = oov;
    return report;
}

std::vector<NeighborHit> temporal_neighbors(const EmbeddingSet& set, const std::string& word,
                                            const std::string& period, std::size_t k,
                                            const std::vector<std::string>& target_periods) {
    if (!set.aligned())
        throw GuardError("method \"" + set.method +
                         "\" embeds periods in separate spaces; temporal neighbors are undefined");
    const int qw = set.word_index(word);
    const int qp = set.period_index(period);
    const auto query = set.vector_of(qw, qp);
    const double query_norm = query.norm();
    if (query_norm == 0) throw DegenerateError("query vector is zero");

    std::vector<NeighborHit> hits;
    for (const auto& target : target_periods) {
        const int tp = set.period_index(target);
        for (int i = 0; i < set.num_words(); ++i) {
            if (i == qw && tp == qp) continue;  // never return the query key
            const auto v = set.vector_of(i, tp);
            const double norm = v.norm();
            if (norm == 0) continue;
            hits.push_back({set.words[i], set.periods[tp], query.dot(v) / (query_norm * norm),
                            set.is_observed(i, tp)});
        }
    }
    std::sort(hits.begin(), hits.end(), [](const NeighborHit& a, const NeighborHit& b) {
        if (a.cosine != b.cosine) return a.cosine > b.cosine;
        if (a.word != b.word) return a.word < b.word;
        return a.period < b.period;
    });
    if (hits.size() > k) hits.resize(k);
    return hits;
}

std::vector<TrajectoryPoint> trajectory_export(const EmbeddingSet& set, const std::string& word,
                                               const std::vector<std::string>& periods, std::size_t k) {
    if (!set.aligned())
        throw GuardError("method \"" + set.method + "\" embeds periods in separate spaces");
    if (periods.empty()) throw ValidationError("trajectory: no periods given");
    const int wi = set.word_index(word);

    struct Gathered {
        std::string word, period;
        bool is_query;
        Eigen::RowVectorXd vec;
    };
    std::vector<Gathered> gathered;
    for (const auto& p : periods) {
        const int t = set.period_index(p);
        gathered.push_back({word, p, true, set.vector_of(wi, t)});
        for (const auto& hit : temporal_neighbors(set, word, p, k, {p}))
            gathered.push_back({hit.word, hit.period, false, set.vector_of(set.word_index(hit.word), t)});
    }
    if (gathered.size() < 2) throw ValidationError("trajectory: fewer than 2 gathered vectors");

    Eigen::MatrixXd G(gathered.size(), set.dim);
    for (std::size_t i = 0; i < gathered.size(); ++i) G.row(i) = gathered[i].vec;
    const Eigen::RowVectorXd mean = G.colwise().mean();
    G.rowwise() -= mean;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(G, Eigen::ComputeThinV);
    Eigen::MatrixXd dirs = svd.matrixV().leftCols(std::min<Eigen::Index>(2, svd.matrixV().cols()));
    for (Eigen::Index j = 0; j < dirs.cols(); ++j) {
        Eigen::Index argmax = 0;
        dirs.col(j).cwiseAbs().maxCoeff(&argmax);
        if (dirs(argmax, j) < 0) dirs.col(j) = -dirs.col(j);
    }
    Eigen::MatrixXd coords = G * dirs;

    std::vector<TrajectoryPoint> points;
    for (std::size_t i = 0; i < gathered.size(); ++i)
        points.push_back({gathered[i].word, gathered[i].period, coords(i, 0),
                          coords.cols() > 1 ? coords(i, 1) : 0.0, gathered[i].is_query});
    return points;
}

std::string trajectory_svg(const std::vector<TrajectoryPoint>& points) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& p : points) {
        xmin = std::min(xmin, p.x), xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y), ymax = std::max(ymax, p.y);
    }
    const double pad_x = std::max(1e-9, (xmax - xmin) * 0.1);
    const double pad_y = std::max(1e-9, (ymax - ymin) * 0.1);
    xmin -= pad_x, xmax += pad_x, ymin -= pad_y, ymax += pad_y;
    const int W = 720, H = 540;
    auto sx = [&](double x) { return (x - xmin) / (xmax - xmin) * (W - 80) + 40; };
    auto sy = [&](double y) { return H - 40 - (y - ymin) / (ymax - ymin) * (H - 80); };
    char buf[256];
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) +
                      "\" height=\"" + std::to_string(H) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // query trajectory polyline in period order of appearance
    std::string path;
    for (const auto& p : points) {
        if (!p.is_query) continue;
        std::snprintf(buf, sizeof(buf), "%s%.2f,%.2f", path.empty() ? "" : " ", sx(p.x), sy(p.y));
        path += buf;
    }
    svg += "<polyline points=\"" + path + "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n";
    for (const auto& p : points) {
        std::snprintf(buf, sizeof(buf),
                      "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%d\" fill=\"%s\"/>\n"
                      "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" fill=\"#333\">%s (%s)</text>\n",
                      sx(p.x), sy(p.y), p.is_query ? 5 : 3, p.is_query ? "#c0392b" : "#2980b9",
                      sx(p.x) + 6, sy(p.y) - 4, p.word.c_str(), p.period.c_str());
        svg += buf;
    }
    svg += "</svg>\n";
    return svg;
}

std::vector<std::string> read_word_list(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open word list: " + path);
    std::vector<std::string> words;
    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto fields = split_ws(line);
        if (fields.empty()) continue;
        if (fields.size() > 1) throw ValidationError("word list has a multi-word line: \"" + line + "\"");
        words.push_back(fields[0]);
    }
    return words;
}

}  // namespace chronovec
