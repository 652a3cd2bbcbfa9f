#include "lid/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "lid/error.hpp"
#include "lid/rng.hpp"

namespace lid {

std::vector<std::string> extract_ngrams(const std::string& word) {
    std::vector<std::string> grams;
    for (std::size_t n = 2; n <= 4; ++n) {
        if (word.size() < n) break;
        for (std::size_t i = 0; i + n <= word.size(); ++i)
            grams.push_back(word.substr(i, n));
    }
    return grams;
}

NgramVocabulary NgramVocabulary::build(const std::vector<LabeledWord>& words) {
    std::vector<std::string> all;
    for (const LabeledWord& w : words)
        for (std::string& g : extract_ngrams(w.word)) all.push_back(std::move(g));
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    NgramVocabulary vocab;
    vocab.grams = std::move(all);
    vocab.index.reserve(vocab.grams.size());
    for (std::size_t i = 0; i < vocab.grams.size(); ++i)
        vocab.index.emplace(vocab.grams[i], static_cast<int>(i));
    return vocab;
}

std::vector<std::pair<int, double>> NgramVocabulary::vectorize(const std::string& word) const {
    std::map<int, double> counts;
    for (const std::string& g : extract_ngrams(word)) {
        auto it = index.find(g);
        if (it != index.end()) counts[it->second] += 1.0;
    }
    return {counts.begin(), counts.end()};
}

namespace {

double margin_of(const std::vector<double>& weights, double bias,
                 const std::vector<std::pair<int, double>>& x) {
    double m = bias;
    for (const auto& [id, count] : x) m += weights[static_cast<std::size_t>(id)] * count;
    return m;
}

double label_sign(Lang label) { return label == Lang::EN ? 1.0 : -1.0; }

} // namespace

SvmModel train_svm(const std::vector<LabeledWord>& train, const SvmConfig& cfg,
                   std::uint64_t seed) {
    if (train.empty()) throw LidError(ErrorKind::NoInput, "no training words for the baseline");
    if (!(cfg.lambda > 0.0)) throw LidError(ErrorKind::Usage, "lambda must be positive");
    if (cfg.epochs < 1) throw LidError(ErrorKind::Usage, "epochs must be positive");

    SvmModel model;
    model.vocab = NgramVocabulary::build(train);
    model.weights.assign(model.vocab.size(), 0.0);
    model.lambda = cfg.lambda;
    model.epochs = cfg.epochs;
    model.seed = seed;

    std::vector<std::vector<std::pair<int, double>>> features;
    features.reserve(train.size());
    for (const LabeledWord& w : train) features.push_back(model.vocab.vectorize(w.word));

    Rng rng(seed);
    std::vector<int> order(train.size());
    std::iota(order.begin(), order.end(), 0);

    // The weight vector is kept as scale * v so the per-step shrink is O(1)
    // instead of O(vocabulary).
    std::vector<double> v(model.vocab.size(), 0.0);
    double scale = 1.0;

    long t = 0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(order);
        for (int i : order) {
            t += 1;
            const double eta = 1.0 / (cfg.lambda * static_cast<double>(t));
            const double y = label_sign(train[static_cast<std::size_t>(i)].label);
            const auto& x = features[static_cast<std::size_t>(i)];

            const double shrink = 1.0 - eta * cfg.lambda;
            if (shrink > 0.0) {
                scale *= shrink;
            } else {
                // Only at t == 1, where the step zeroes the weight vector.
                std::fill(v.begin(), v.end(), 0.0);
                scale = 1.0;
            }

            double dot = 0.0;
            for (const auto& [id, count] : x) dot += v[static_cast<std::size_t>(id)] * count;
            if (y * (scale * dot + model.bias) < 1.0) {
                for (const auto& [id, count] : x)
                    v[static_cast<std::size_t>(id)] += eta * y * count / scale;
                model.bias += eta * y;
            }
        }
    }

    for (std::size_t i = 0; i < v.size(); ++i) model.weights[i] = scale * v[i];
    return model;
}

double svm_margin(const SvmModel& model, const std::string& word) {
    return margin_of(model.weights, model.bias, model.vocab.vectorize(word));
}

Lang predict_svm(const SvmModel& model, const std::string& word) {
    return svm_margin(model, word) > 0.0 ? Lang::EN : Lang::BN;
}

double hinge_objective(const SvmModel& model, const std::vector<LabeledWord>& data) {
    if (data.empty()) throw LidError(ErrorKind::NoInput, "no words to evaluate");
    double norm_sq = 0.0;
    for (double w : model.weights) norm_sq += w * w;
    double hinge = 0.0;
    for (const LabeledWord& w : data) {
        double y = label_sign(w.label);
        hinge += std::max(0.0, 1.0 - y * svm_margin(model, w.word));
    }
    return 0.5 * model.lambda * norm_sq + hinge / static_cast<double>(data.size());
}

} // namespace lid
