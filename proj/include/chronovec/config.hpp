#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "chronovec/corpus.hpp"
#include "chronovec/methods.hpp"

namespace chronovec {

// Declarative run configuration: one file covering every pipeline stage.
// Every field has a default; unknown keys are rejected. Accepts JSON or a
// flat TOML-style "[section] / key = value" file.
struct RunConfig {
    // [ingest]
    std::string format = "ngram";  // ngram | plain
    std::int64_t min_count = 5;
    std::int64_t max_vocab = 0;  // 0 = unbounded
    bool lowercase = true;
    bool strip_pos_tags = true;
    bool alpha_only = true;
    int year_start = 1900;
    int year_end = 2000;
    int period_length = 10;
    std::string parse_policy = "skip";  // skip | abort

    // [cooc]
    int window = 2;
    bool tagged_contexts = false;
    double subsample_threshold = 0;

    // [train]
    int dim = 300;
    int epochs = 5;
    double learning_rate = 0.025;
    int negatives = 5;
    double noise_exponent = 0.75;
    std::uint64_t seed = 42;
    int workers = 1;

    // [svd]
    double sigma_exponent = 0;
    double svd_tol = 1e-6;
    int svd_max_iters = 100;

    // [dw2v]
    double dw2v_lambda = 10;
    double dw2v_tau = 50;
    int dw2v_max_steps = 2000;
    double dw2v_grad_tol = 1e-6;
    int dw2v_vocab_cap = 5000;

    // [eval]
    std::vector<double> alpha_grid{0, 0.1, 0.2, 0.3, 0.4};
    std::vector<std::string> probes;
    std::string period_t;
    std::string period_t1;
    int top_k = 10;

    static RunConfig load(const std::string& path);
    static RunConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    std::string hash() const;  // over the canonical serialization

    PeriodSpec period_spec() const;
    TokenFilter token_filter() const;
    CorpusFormat corpus_format() const;
    ParsePolicy policy() const;
    MethodOptions method_options() const;
};

}  // namespace chronovec
