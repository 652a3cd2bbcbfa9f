#include "lid/decision.hpp"

#include <cmath>

#include "lid/error.hpp"
#include "lid/rng.hpp"

namespace lid {
namespace {

void require_score(double score) {
    if (!(score >= 0.0 && score <= 1.0))
        throw LidError(ErrorKind::Usage, "score outside [0,1]");
}

void require_both_labels(const std::vector<Lang>& truths) {
    bool bn = false, en = false;
    for (Lang l : truths) (l == Lang::BN ? bn : en) = true;
    if (!bn || !en)
        throw LidError(ErrorKind::Data, "degenerate input: only one label present");
}

} // namespace

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    double e = std::exp(z);
    return e / (1.0 + e);
}

Lang round_predict(double score) {
    require_score(score);
    return score >= 0.5 ? Lang::EN : Lang::BN;
}

ThresholdFit fit_threshold(const std::vector<double>& scores,
                           const std::vector<Lang>& truths) {
    if (scores.size() != truths.size() || scores.empty())
        throw LidError(ErrorKind::Usage, "scores and truths must be non-empty and equal length");
    require_both_labels(truths);
    for (double s : scores) require_score(s);

    const int grid = 100;
    std::vector<long> correct(grid + 1, 0);
#pragma omp parallel for schedule(static)
    for (int i = 0; i <= grid; ++i) {
        double theta = i / 100.0;
        long c = 0;
        for (std::size_t k = 0; k < scores.size(); ++k) {
            Lang predicted = scores[k] <= theta ? Lang::BN : Lang::EN;
            if (predicted == truths[k]) ++c;
        }
        correct[i] = c;
    }

    // Deterministic argmax: smallest theta attaining maximum accuracy.
    int best = 0;
    for (int i = 1; i <= grid; ++i)
        if (correct[i] > correct[best]) best = i;

    ThresholdFit fit;
    fit.rule.theta = best / 100.0;
    fit.accuracy = static_cast<double>(correct[best]) / static_cast<double>(scores.size());
    return fit;
}

Lang apply_threshold(const ThresholdRule& rule, double score) {
    require_score(score);
    return score <= rule.theta ? Lang::BN : Lang::EN;
}

StackerModel fit_stacker(const std::vector<std::array<double, 2>>& score_pairs,
                         const std::vector<Lang>& truths, double lr, int epochs,
                         std::uint64_t seed) {
    if (score_pairs.size() != truths.size() || score_pairs.empty())
        throw LidError(ErrorKind::Usage, "score pairs and truths must be non-empty and equal length");
    require_both_labels(truths);
    if (lr <= 0 || epochs < 1)
        throw LidError(ErrorKind::Usage, "stacker needs lr > 0 and epochs >= 1");

    Rng rng(seed);
    StackerModel m;
    m.w1 = rng.uniform(-0.01, 0.01);
    m.w2 = rng.uniform(-0.01, 0.01);
    m.b = rng.uniform(-0.01, 0.01);

    const double n = static_cast<double>(score_pairs.size());
    for (int epoch = 0; epoch < epochs; ++epoch) {
        double g1 = 0, g2 = 0, gb = 0;
        for (std::size_t i = 0; i < score_pairs.size(); ++i) {
            double target = truths[i] == Lang::EN ? 1.0 : 0.0;
            double p = sigmoid(m.w1 * score_pairs[i][0] + m.w2 * score_pairs[i][1] + m.b);
            double d = p - target;
            g1 += d * score_pairs[i][0];
            g2 += d * score_pairs[i][1];
            gb += d;
        }
        m.w1 -= lr * g1 / n;
        m.w2 -= lr * g2 / n;
        m.b -= lr * gb / n;
    }
    return m;
}

StackerPrediction predict_stacker(const StackerModel& model, double s_char, double s_phon) {
    require_score(s_char);
    require_score(s_phon);
    double fuzzy = sigmoid(model.w1 * s_char + model.w2 * s_phon + model.b);
    return {fuzzy >= 0.5 ? Lang::EN : Lang::BN, fuzzy};
}

double ensemble_mean(double s_char, double s_phon) {
    require_score(s_char);
    require_score(s_phon);
    return (s_char + s_phon) / 2.0;
}

} // namespace lid
