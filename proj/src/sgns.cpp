#include "chronovec/sgns.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace chronovec {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// log(sigmoid(x)) without overflow on either tail.
inline double log_sigmoid(double x) {
    if (x >= 0) return -std::log1p(std::exp(-x));
    return x - std::log1p(std::exp(x));
}

// Vose alias table; construction order is fixed so sampling is
// deterministic given the seed.
class AliasTable {
public:
    AliasTable(const std::vector<std::int64_t>& weights, double exponent) {
        const std::size_t n = weights.size();
        prob_.resize(n);
        alias_.assign(n, 0);
        std::vector<double> scaled(n);
        double total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            scaled[i] = std::pow(static_cast<double>(std::max<std::int64_t>(weights[i], 0)), exponent);
            total += scaled[i];
        }
        if (total <= 0) throw ValidationError("negative-sampling noise distribution has zero mass");
        std::vector<std::uint32_t> small, large;
        for (std::size_t i = 0; i < n; ++i) {
            scaled[i] = scaled[i] * n / total;
            (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
        }
        while (!small.empty() && !large.empty()) {
            std::uint32_t s = small.back(), l = large.back();
            small.pop_back();
            prob_[s] = scaled[s];
            alias_[s] = l;
            scaled[l] -= 1.0 - scaled[s];
            if (scaled[l] < 1.0) {
                large.pop_back();
                small.push_back(l);
            }
        }
        for (auto i : large) prob_[i] = 1.0;
        for (auto i : small) prob_[i] = 1.0;
    }
    std::uint32_t draw(Rng& rng) const {
        std::uint32_t i = rng.uniform_below(static_cast<std::uint32_t>(prob_.size()));
        return rng.uniform01() < prob_[i] ? i : alias_[i];
    }

private:
    std::vector<double> prob_;
    std::vector<std::uint32_t> alias_;
};

}  // namespace

SgnsModel init_model(const Vocabulary& vocab, int num_periods, int dim, SgnsMode mode,
                     std::uint64_t seed, bool tagged_contexts) {
    if (dim < 1) throw ValidationError("hidden dimension must be >= 1");
    if (mode == SgnsMode::tagged && num_periods < 1)
        throw ValidationError("tagged model needs at least 1 period");
    SgnsModel model;
    model.mode = mode;
    model.num_periods = mode == SgnsMode::tagged ? num_periods : 1;
    model.vocab_size = vocab.size();
    model.dim = dim;
    model.tagged_contexts = tagged_contexts && mode == SgnsMode::tagged;
    model.input.resize(model.input_rows(), dim);
    model.output = MatrixRM::Zero(model.output_rows(), dim);
    Rng rng(mix_seed(seed, 0x16117u));
    const double scale = 0.5 / dim;
    for (int r = 0; r < model.input_rows(); ++r)
        for (int j = 0; j < dim; ++j) model.input(r, j) = (2.0 * rng.uniform01() - 1.0) * scale;
    return model;
}

double softmax_prob(const SgnsModel& model, int context, int center) {
    if (center < 0 || center >= model.input_rows()) throw LookupError("softmax_prob: center index out of range");
    if (context < 0 || context >= model.output_rows())
        throw LookupError("softmax_prob: context index out of range");
    Eigen::VectorXd logits = model.output * model.input.row(center).transpose();
    const double m = logits.maxCoeff();
    const double z = (logits.array() - m).exp().sum();
    return std::exp(logits(context) - m) / z;
}

std::pair<double, GradSketch> pair_loss_and_gradient(const SgnsModel& model, const TrainingPair& pair,
                                                     const std::vector<int>& negatives) {
    const auto in = model.input.row(pair.center);
    GradSketch sketch;
    Eigen::VectorXd in_grad = Eigen::VectorXd::Zero(model.dim);
    double loss = 0;

    const auto out_c = model.output.row(pair.context);
    const double s_pos = in.dot(out_c);
    loss -= log_sigmoid(s_pos);
    const double g_pos = sigmoid(s_pos) - 1.0;
    in_grad += g_pos * out_c.transpose();
    sketch.entries.push_back({'o', static_cast<int>(pair.context), g_pos * in.transpose()});

    for (int n : negatives) {
        const auto out_n = model.output.row(n);
        const double s_neg = in.dot(out_n);
        loss -= log_sigmoid(-s_neg);
        const double g_neg = sigmoid(s_neg);
        in_grad += g_neg * out_n.transpose();
        sketch.entries.push_back({'o', n, g_neg * in.transpose()});
    }
    sketch.entries.push_back({'i', static_cast<int>(pair.center), std::move(in_grad)});
    return {loss, std::move(sketch)};
}

std::vector<std::int64_t> make_noise_weights(const Vocabulary& vocab, int num_periods,
                                             bool tagged_contexts) {
    if (!tagged_contexts) return vocab.counts;
    std::vector<std::int64_t> w;
    w.reserve(static_cast<std::size_t>(num_periods) * vocab.size());
    for (int t = 0; t < num_periods; ++t) w.insert(w.end(), vocab.counts.begin(), vocab.counts.end());
    return w;
}

TrainResult train(SgnsModel& model, const std::vector<TrainingPair>& pairs,
                  const std::vector<std::int64_t>& noise_weights, const TrainConfig& config) {
    if (pairs.empty()) throw ValidationError("no training data: the pair stream is empty");
    if (config.negatives < 1) throw ValidationError("negatives per pair must be >= 1");
    if (config.learning_rate <= 0) throw ValidationError("learning rate must be positive");
    if (static_cast<int>(noise_weights.size()) != model.output_rows())
        throw ValidationError("noise weight vector does not match the output vocabulary");

    AliasTable noise(noise_weights, config.noise_exponent);
    std::int64_t total_weight = 0;
    for (const auto& p : pairs) total_weight += p.weight;
    const double total_progress = static_cast<double>(total_weight) * config.epochs;
    const double lr0 = config.learning_rate;
    const double lr_floor = config.lr_floor_ratio * lr0;
    const int k = config.negatives;
    const int dim = model.dim;

    std::atomic<std::int64_t> progress{0};
    TrainResult result;
    result.pair_events = static_cast<std::int64_t>(pairs.size()) * config.epochs;

    // One contiguous chunk of the stream; shared rows may race when
    // workers > 1 (word2vec-style updates).
    auto run_chunk = [&](std::size_t begin, std::size_t end, std::uint64_t rng_seed, int epoch,
                         double* loss_sum, double* weight_sum) {
        Rng rng(rng_seed);
        std::vector<double> in_grad(dim);
        std::vector<double*> out_rows(k + 1);
        std::vector<double> coeff(k + 1);
        for (std::size_t idx = begin; idx < end; ++idx) {
            const TrainingPair& pair = pairs[idx];
            const std::int64_t before = progress.fetch_add(pair.weight, std::memory_order_relaxed);
            const double frac = static_cast<double>(before) / total_progress;
            const double lr = std::max(lr_floor, lr0 * (1.0 - frac));
            const double step = lr * pair.weight;

            double* in = model.input.row(pair.center).data();
            out_rows[0] = model.output.row(pair.context).data();
            for (int s = 1; s <= k; ++s) out_rows[s] = model.output.row(noise.draw(rng)).data();

            // One pure gradient step per pair: all dots are evaluated before
            // any row moves, so repeated rows just sum their contributions.
            std::fill(in_grad.begin(), in_grad.end(), 0.0);
            double loss = 0;
            for (int s = 0; s <= k; ++s) {
                const double* out = out_rows[s];
                double dot = 0;
                for (int j = 0; j < dim; ++j) dot += in[j] * out[j];
                if (s == 0) {
                    loss -= log_sigmoid(dot);
                    coeff[0] = sigmoid(dot) - 1.0;
                } else {
                    loss -= log_sigmoid(-dot);
                    coeff[s] = sigmoid(dot);
                }
                for (int j = 0; j < dim; ++j) in_grad[j] += coeff[s] * out[j];
            }
            for (int s = 0; s <= k; ++s) {
                double* out = out_rows[s];
                const double sg = step * coeff[s];
                for (int j = 0; j < dim; ++j) out[j] -= sg * in[j];
            }
            for (int j = 0; j < dim; ++j) in[j] -= step * in_grad[j];

            if (!std::isfinite(loss))
                throw Error("training aborted: non-finite loss at epoch " + std::to_string(epoch) +
                            ", pair " + std::to_string(idx) + ", lr " + std::to_string(lr));
            *loss_sum += pair.weight * loss;
            *weight_sum += pair.weight;
        }
    };

    const int workers = std::max(1, config.workers);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        double loss_sum = 0, weight_sum = 0;
        if (workers == 1) {
            run_chunk(0, pairs.size(), mix_seed(config.seed, 0x9e90 + epoch), epoch, &loss_sum, &weight_sum);
        } else {
            std::vector<std::thread> threads;
            std::vector<double> losses(workers, 0), weights(workers, 0);
            const std::size_t chunk = (pairs.size() + workers - 1) / workers;
            for (int w = 0; w < workers; ++w) {
                std::size_t b = std::min(pairs.size(), w * chunk);
                std::size_t e = std::min(pairs.size(), b + chunk);
                threads.emplace_back(run_chunk, b, e,
                                     mix_seed(config.seed, 0x9e90 + epoch * 131 + w), epoch,
                                     &losses[w], &weights[w]);
            }
            for (auto& t : threads) t.join();
            for (int w = 0; w < workers; ++w) loss_sum += losses[w], weight_sum += weights[w];
        }
        result.epoch_mean_loss.push_back(loss_sum / weight_sum);
        log_debug("epoch " + std::to_string(epoch) + " mean loss " +
                  std::to_string(result.epoch_mean_loss.back()));
    }
    const double frac = static_cast<double>(progress.load()) / total_progress;
    result.final_lr = std::max(lr_floor, lr0 * (1.0 - frac));
    return result;
}

Eigen::VectorXd embedding_of(const SgnsModel& model, const Vocabulary& vocab, const std::string& word,
                             std::optional<int> period) {
    const int i = vocab.index_of(word);
    if (model.mode == SgnsMode::plain) {
        if (period.has_value())
            throw LookupError("plain model: do not supply a period for \"" + word + "\"");
        return model.input.row(i);
    }
    if (!period.has_value()) throw LookupError("tagged model: a period is required for \"" + word + "\"");
    if (*period < 0 || *period >= model.num_periods)
        throw LookupError("period index " + std::to_string(*period) + " out of range");
    return model.input.row(*period * model.vocab_size + i);
}

EmbeddingSet extract_embeddings(const SgnsModel& model, const Vocabulary& vocab,
                                const std::vector<std::string>& period_labels,
                                const PeriodWordStats* stats) {
    const int T = model.mode == SgnsMode::tagged ? model.num_periods : 1;
    if (static_cast<int>(period_labels.size()) != T)
        throw ValidationError("extract_embeddings: period label count does not match the model");
    EmbeddingSet set;
    set.method = model.mode == SgnsMode::tagged ? "tsgns" : "sgns";
    set.dim = model.dim;
    set.words = vocab.words;
    set.periods = period_labels;
    set.rows = model.input;
    if (stats) {
        set.observed.assign(static_cast<std::size_t>(T) * vocab.size(), 1);
        for (int t = 0; t < T; ++t)
            for (int i = 0; i < vocab.size(); ++i)
                if (stats->counts[t][i] == 0) set.observed[static_cast<std::size_t>(t) * vocab.size() + i] = 0;
    }
    return set;
}

}  // namespace chronovec
