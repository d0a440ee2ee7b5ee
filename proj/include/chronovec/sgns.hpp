#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "chronovec/cooc.hpp"
#include "chronovec/embed.hpp"

namespace chronovec {

enum class SgnsMode { plain, tagged };

// Input rows are per-(word, period) in tagged mode and per-word in plain
// mode; output rows live in the shared untagged context space unless
// tagged_contexts was requested.
struct SgnsModel {
    SgnsMode mode = SgnsMode::plain;
    int num_periods = 1;
    int vocab_size = 0;
    int dim = 0;
    bool tagged_contexts = false;
    MatrixRM input;   // input_rows() x dim
    MatrixRM output;  // output_rows() x dim

    int input_rows() const { return (mode == SgnsMode::tagged ? num_periods : 1) * vocab_size; }
    int output_rows() const { return (tagged_contexts ? num_periods : 1) * vocab_size; }
};

struct TrainConfig {
    int epochs = 5;
    double learning_rate = 0.025;  // linear decay to lr_floor_ratio * learning_rate
    double lr_floor_ratio = 1e-4;
    int negatives = 5;
    double noise_exponent = 0.75;
    std::uint64_t seed = 1;
    int workers = 1;  // >1 runs lock-free updates; determinism only at 1
};

// Input weights uniform in (-0.5/N, 0.5/N) from the seed, output weights zero.
SgnsModel init_model(const Vocabulary& vocab, int num_periods, int dim, SgnsMode mode,
                     std::uint64_t seed, bool tagged_contexts = false);

// Exact softmax over the model's output vocabulary; the small-scale
// verification path for the sampled objective.
double softmax_prob(const SgnsModel& model, int context, int center);

struct GradEntry {
    char side;  // 'i' input, 'o' output
    int row;
    Eigen::VectorXd grad;
};
struct GradSketch {
    std::vector<GradEntry> entries;
};

// loss = -log sigmoid(out_c . in_w) - sum_neg log sigmoid(-out_n . in_w),
// unweighted. Entries for repeated rows appear repeatedly (gradients sum).
std::pair<double, GradSketch> pair_loss_and_gradient(const SgnsModel& model, const TrainingPair& pair,
                                                     const std::vector<int>& negatives);

struct TrainResult {
    std::vector<double> epoch_mean_loss;  // weighted mean per epoch
    std::int64_t pair_events = 0;
    double final_lr = 0;
};

// Per-pair SGD over the materialized stream, pair weight acting as record
// multiplicity (scaled update, and the decay clock advances by weight).
// Negatives drawn from noise_weights^noise_exponent.
TrainResult train(SgnsModel& model, const std::vector<TrainingPair>& pairs,
                  const std::vector<std::int64_t>& noise_weights, const TrainConfig& config);

// Noise weights over the model's output vocabulary: corpus frequencies,
// replicated per period when contexts are tagged.
std::vector<std::int64_t> make_noise_weights(const Vocabulary& vocab, int num_periods,
                                             bool tagged_contexts);

// Input-weight row for a word; period is required iff the model is tagged.
Eigen::VectorXd embedding_of(const SgnsModel& model, const Vocabulary& vocab, const std::string& word,
                             std::optional<int> period);

// Assemble the trained input rows as an EmbeddingSet (method sgns/tsgns).
EmbeddingSet extract_embeddings(const SgnsModel& model, const Vocabulary& vocab,
                                const std::vector<std::string>& period_labels,
                                const PeriodWordStats* stats = nullptr);

}  // namespace chronovec
