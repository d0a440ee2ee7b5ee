#include <doctest.h>

#include <cmath>
#include <map>

#include "chronovec/sgns.hpp"
#include "support/synth.hpp"

using namespace chronovec;

namespace {

Vocabulary tiny_vocab(int n) {
    Vocabulary v;
    for (int i = 0; i < n; ++i) {
        v.words.push_back("w" + std::to_string(i));
        v.counts.push_back(10 + n - i);
        v.index.emplace(v.words.back(), i);
    }
    return v;
}

// Dense gradient accumulated from a sketch, keyed by (side, row).
std::map<std::pair<char, int>, Eigen::VectorXd> dense_grad(const GradSketch& sketch, int dim) {
    std::map<std::pair<char, int>, Eigen::VectorXd> g;
    for (const auto& e : sketch.entries) {
        auto key = std::make_pair(e.side, e.row);
        if (!g.count(key)) g[key] = Eigen::VectorXd::Zero(dim);
        g[key] += e.grad;
    }
    return g;
}

}  // namespace

TEST_SUITE_BEGIN("sgns");

TEST_CASE("init shapes and determinism") {
    auto vocab = tiny_vocab(100);
    auto model = init_model(vocab, 3, 300, SgnsMode::tagged, 9);
    CHECK(model.input.rows() == 300);
    CHECK(model.output.rows() == 100);
    CHECK(model.input.cols() == 300);
    CHECK(model.output.isZero());
    for (int r = 0; r < model.input.rows(); ++r)
        for (int j = 0; j < model.input.cols(); ++j) {
            CHECK(model.input(r, j) > -0.5 / 300);
            CHECK(model.input(r, j) < 0.5 / 300);
        }
    auto again = init_model(vocab, 3, 300, SgnsMode::tagged, 9);
    CHECK((model.input - again.input).norm() == 0.0);
    auto other = init_model(vocab, 3, 300, SgnsMode::tagged, 10);
    CHECK((model.input - other.input).norm() != 0.0);
}

TEST_CASE("softmax: zero outputs are uniform, rows normalize") {
    auto vocab = tiny_vocab(4);
    auto model = init_model(vocab, 1, 8, SgnsMode::plain, 1);
    for (int a = 0; a < 4; ++a) CHECK(softmax_prob(model, a, 0) == doctest::Approx(0.25).epsilon(1e-15));

    // random weights still normalize to 1e-12
    Rng rng(2);
    for (int r = 0; r < model.output.rows(); ++r)
        for (int j = 0; j < model.dim; ++j) model.output(r, j) = rng.gaussian();
    double total = 0;
    for (int a = 0; a < 4; ++a) total += softmax_prob(model, a, 1);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("softmax hand case: logits (ln 3, 0) -> (0.75, 0.25)") {
    auto vocab = tiny_vocab(2);
    auto model = init_model(vocab, 1, 1, SgnsMode::plain, 1);
    model.input(0, 0) = 1.0;
    model.output(0, 0) = std::log(3.0);
    model.output(1, 0) = 0.0;
    CHECK(softmax_prob(model, 0, 0) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(softmax_prob(model, 1, 0) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("zero-weight loss is 2 log 2 with one negative") {
    auto vocab = tiny_vocab(5);
    auto model = init_model(vocab, 1, 4, SgnsMode::plain, 1);
    model.input.setZero();
    auto [loss, sketch] = pair_loss_and_gradient(model, {0, 1, 1}, {3});
    CHECK(loss == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("analytic gradient matches central finite differences") {
    auto vocab = tiny_vocab(5);
    auto model = init_model(vocab, 1, 4, SgnsMode::plain, 3);
    Rng rng(17);
    for (int r = 0; r < model.output.rows(); ++r)
        for (int j = 0; j < model.dim; ++j) model.output(r, j) = 0.3 * rng.gaussian();

    const TrainingPair pair{1, 2, 1};
    const std::vector<int> negatives{0, 4, 2, 4};  // includes the true context and a duplicate
    auto [loss, sketch] = pair_loss_and_gradient(model, pair, negatives);
    CHECK(std::isfinite(loss));
    auto grads = dense_grad(sketch, model.dim);

    const double h = 1e-5;
    for (const auto& [key, grad] : grads) {
        auto& mat = key.first == 'i' ? model.input : model.output;
        for (int j = 0; j < model.dim; ++j) {
            const double saved = mat(key.second, j);
            mat(key.second, j) = saved + h;
            const double up = pair_loss_and_gradient(model, pair, negatives).first;
            mat(key.second, j) = saved - h;
            const double down = pair_loss_and_gradient(model, pair, negatives).first;
            mat(key.second, j) = saved;
            const double fd = (up - down) / (2 * h);
            const double denom = std::max({std::abs(fd), std::abs(grad(j)), 1e-6});
            CHECK(std::abs(fd - grad(j)) / denom < 1e-4);
        }
    }
}

TEST_CASE("train applies exactly the sketch gradient for one pair") {
    auto vocab = tiny_vocab(6);
    auto model = init_model(vocab, 1, 5, SgnsMode::plain, 4);
    Rng rng(8);
    for (int r = 0; r < model.output.rows(); ++r)
        for (int j = 0; j < model.dim; ++j) model.output(r, j) = 0.2 * rng.gaussian();

    TrainConfig cfg;
    cfg.epochs = 1;
    cfg.learning_rate = 0.1;
    cfg.lr_floor_ratio = 1.0;  // freeze the rate so the update is exactly lr * grad
    cfg.negatives = 2;
    cfg.seed = 99;
    const std::vector<TrainingPair> pairs{{2, 3, 4}};

    // a noise distribution with all mass on one word pins the negatives
    std::vector<std::int64_t> noise(vocab.size(), 0);
    noise[5] = 1;
    const SgnsModel start = model;
    train(model, pairs, noise, cfg);

    auto [loss, sketch] = pair_loss_and_gradient(start, pairs[0], {5, 5});
    auto grads = dense_grad(sketch, start.dim);
    for (const auto& [key, grad] : grads) {
        const auto& before = key.first == 'i' ? start.input : start.output;
        const auto& after = key.first == 'i' ? model.input : model.output;
        Eigen::VectorXd expect = before.row(key.second).transpose() - 0.1 * 4 * grad;
        CHECK((after.row(key.second).transpose() - expect).norm() < 1e-12);
    }
}

TEST_CASE("training errors") {
    auto vocab = tiny_vocab(4);
    auto model = init_model(vocab, 1, 4, SgnsMode::plain, 1);
    auto noise = make_noise_weights(vocab, 1, false);
    CHECK_THROWS_WITH_AS(train(model, {}, noise, TrainConfig{}), doctest::Contains("no training data"),
                         ValidationError);
}

TEST_CASE("epoch losses fall on a structured corpus") {
    synth::TopicCorpusConfig cfg;
    cfg.vocab_size = 120;
    cfg.topics = 4;
    cfg.common_words = 12;
    cfg.lines_per_period = 800;
    cfg.seed = 21;
    auto tc = synth::make_topic_corpus(cfg);
    auto vocab = build_vocabulary(tc.corpus, 1);
    auto pairs = tagged_pair_stream(tc.corpus, vocab, 2, PairStreamConfig{0, 21, false});
    auto model = init_model(vocab, 2, 24, SgnsMode::tagged, 21);
    TrainConfig tcfg;
    tcfg.epochs = 6;
    tcfg.learning_rate = 0.05;
    tcfg.seed = 21;
    auto result = train(model, pairs, make_noise_weights(vocab, 2, false), tcfg);
    REQUIRE(result.epoch_mean_loss.size() == 6);
    CHECK(result.epoch_mean_loss.back() < result.epoch_mean_loss.front());
}

TEST_CASE("interchangeable words end up with nearly parallel vectors") {
    std::string x, y;
    auto corpus = synth::make_interchangeable_corpus(30, 4000, 11, &x, &y);
    auto vocab = build_vocabulary(corpus, 1);
    auto pairs = plain_pair_stream(corpus.segments[0], vocab, 2, PairStreamConfig{0, 11, false});
    auto model = init_model(vocab, 1, 16, SgnsMode::plain, 11);
    TrainConfig tcfg;
    tcfg.epochs = 25;
    tcfg.learning_rate = 0.05;
    tcfg.seed = 11;
    train(model, pairs, make_noise_weights(vocab, 1, false), tcfg);
    auto vx = embedding_of(model, vocab, x, std::nullopt);
    auto vy = embedding_of(model, vocab, y, std::nullopt);
    CHECK(vx.dot(vy) / (vx.norm() * vy.norm()) > 0.8);
}

TEST_CASE("workers=1 with a fixed seed is bit-reproducible") {
    synth::TopicCorpusConfig cfg;
    cfg.vocab_size = 60;
    cfg.topics = 3;
    cfg.common_words = 9;
    cfg.lines_per_period = 200;
    auto tc = synth::make_topic_corpus(cfg);
    auto vocab = build_vocabulary(tc.corpus, 1);
    auto pairs = tagged_pair_stream(tc.corpus, vocab, 2, PairStreamConfig{0, 5, false});
    TrainConfig tcfg;
    tcfg.epochs = 2;
    tcfg.seed = 5;
    auto m1 = init_model(vocab, 2, 12, SgnsMode::tagged, 5);
    auto m2 = init_model(vocab, 2, 12, SgnsMode::tagged, 5);
    auto noise = make_noise_weights(vocab, 2, false);
    train(m1, pairs, noise, tcfg);
    train(m2, pairs, noise, tcfg);
    CHECK((m1.input - m2.input).norm() == 0.0);
    CHECK((m1.output - m2.output).norm() == 0.0);
}

TEST_CASE("multi-worker training still learns") {
    synth::TopicCorpusConfig cfg;
    cfg.vocab_size = 60;
    cfg.topics = 3;
    cfg.common_words = 9;
    cfg.lines_per_period = 500;
    auto tc = synth::make_topic_corpus(cfg);
    auto vocab = build_vocabulary(tc.corpus, 1);
    auto pairs = tagged_pair_stream(tc.corpus, vocab, 2, PairStreamConfig{0, 5, false});
    auto model = init_model(vocab, 2, 12, SgnsMode::tagged, 5);
    TrainConfig tcfg;
    tcfg.epochs = 4;
    tcfg.workers = 3;
    tcfg.seed = 5;
    auto result = train(model, pairs, make_noise_weights(vocab, 2, false), tcfg);
    CHECK(result.epoch_mean_loss.back() < result.epoch_mean_loss.front());
}

TEST_CASE("embedding_of: tagged index formula and contract errors") {
    auto vocab = tiny_vocab(3);
    auto model = init_model(vocab, 2, 4, SgnsMode::tagged, 2);
    auto v = embedding_of(model, vocab, "w2", 1);
    CHECK(v.size() == 4);
    CHECK((v.transpose() - model.input.row(1 * 3 + 2)).norm() == 0.0);

    CHECK_THROWS_AS(embedding_of(model, vocab, "w2", std::nullopt), LookupError);
    CHECK_THROWS_AS(embedding_of(model, vocab, "nope", 0), LookupError);
    CHECK_THROWS_AS(embedding_of(model, vocab, "w2", 7), LookupError);

    auto plain = init_model(vocab, 1, 4, SgnsMode::plain, 2);
    CHECK_THROWS_AS(embedding_of(plain, vocab, "w2", 0), LookupError);
    CHECK(embedding_of(plain, vocab, "w2", std::nullopt).size() == 4);
}

TEST_SUITE_END();
