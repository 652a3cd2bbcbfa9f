#ifndef LID_BASELINE_HPP
#define LID_BASELINE_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lid/corpus.hpp"

namespace lid {

// All character n-grams of length 2, 3 and 4, in order of appearance.
// Words shorter than a given n contribute no grams of that size.
std::vector<std::string> extract_ngrams(const std::string& word);

// Feature space of the baseline: every n-gram seen in the training words,
// sorted lexicographically so feature ids are stable across runs.
struct NgramVocabulary {
    std::vector<std::string> grams;
    std::unordered_map<std::string, int> index;

    static NgramVocabulary build(const std::vector<LabeledWord>& words);

    // Sparse (feature id, count) pairs sorted by id; grams outside the
    // vocabulary are dropped.
    std::vector<std::pair<int, double>> vectorize(const std::string& word) const;

    std::size_t size() const { return grams.size(); }
};

struct SvmConfig {
    double lambda = 1e-4;
    int epochs = 50;
};

struct SvmModel {
    NgramVocabulary vocab;
    std::vector<double> weights;
    double bias = 0.0;
    double lambda = 1e-4;
    int epochs = 50;
    std::uint64_t seed = 0;
};

// Linear SVM on n-gram counts, trained with the Pegasos subgradient
// scheme: per-epoch seeded shuffle, step size 1/(lambda * t), bias kept
// out of the regularizer. EN maps to +1, BN to -1.
SvmModel train_svm(const std::vector<LabeledWord>& train, const SvmConfig& cfg,
                   std::uint64_t seed);

// Signed margin w.x + b for a word.
double svm_margin(const SvmModel& model, const std::string& word);

// EN on a positive margin, BN otherwise.
Lang predict_svm(const SvmModel& model, const std::string& word);

// lambda/2 * |w|^2 + mean hinge loss over the data.
double hinge_objective(const SvmModel& model, const std::vector<LabeledWord>& data);

} // namespace lid

#endif
