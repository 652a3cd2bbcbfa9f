#ifndef LID_DECISION_HPP
#define LID_DECISION_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "lid/corpus.hpp"

namespace lid {

// Convention used everywhere: score <= theta predicts BN, above predicts EN.
struct ThresholdRule {
    double theta = 0.5;
};

// EN if score >= 0.5 (round half up on targets BN=0, EN=1).
Lang round_predict(double score);

struct ThresholdFit {
    ThresholdRule rule;
    double accuracy = 0; // fraction in [0,1]
};

// Brute force over theta in {0, 0.01, ..., 1.00}; returns the smallest
// theta attaining maximum accuracy. Requires both labels present.
ThresholdFit fit_threshold(const std::vector<double>& scores,
                           const std::vector<Lang>& truths);

Lang apply_threshold(const ThresholdRule& rule, double score);

// Logistic regression over the two base-model scores.
struct StackerModel {
    double w1 = 0;
    double w2 = 0;
    double b = 0;
};

// Full-batch gradient descent on cross-entropy against targets BN=0, EN=1.
// Deterministic per seed. Requires both labels present.
StackerModel fit_stacker(const std::vector<std::array<double, 2>>& score_pairs,
                         const std::vector<Lang>& truths, double lr, int epochs,
                         std::uint64_t seed);

struct StackerPrediction {
    Lang label;
    double fuzzy;
};

StackerPrediction predict_stacker(const StackerModel& model, double s_char, double s_phon);

double ensemble_mean(double s_char, double s_phon);

double sigmoid(double z);

} // namespace lid

#endif
