#include <doctest.h>

#include <string>
#include <vector>

#include "lid/baseline.hpp"
#include "lid/corpus.hpp"
#include "lid/error.hpp"

using namespace lid;

namespace {

std::vector<LabeledWord> toy_corpus() {
    // Separable by construction: BN words live on one letter bigram family,
    // EN words on another.
    std::vector<LabeledWord> words;
    for (const char* w : {"khabar", "korchi", "bhalo", "kharap", "bari", "khub"})
        words.push_back({w, Lang::BN});
    for (const char* w : {"good", "going", "gone", "food", "mood", "moon"})
        words.push_back({w, Lang::EN});
    return words;
}

} // namespace

TEST_SUITE_BEGIN("baseline");

TEST_CASE("extract_ngrams walks sizes 2, 3, 4 in order") {
    CHECK(extract_ngrams("abcd") == std::vector<std::string>{
        "ab", "bc", "cd", "abc", "bcd", "abcd"});
    CHECK(extract_ngrams("abc") == std::vector<std::string>{"ab", "bc", "abc"});
    CHECK(extract_ngrams("ab") == std::vector<std::string>{"ab"});
    CHECK(extract_ngrams("a").empty());
    // repeats are kept; counting happens at vectorize time
    CHECK(extract_ngrams("aaaa") == std::vector<std::string>{
        "aa", "aa", "aa", "aaa", "aaa", "aaaa"});
}

TEST_CASE("vocabulary is sorted and vectorize counts duplicates") {
    NgramVocabulary vocab = NgramVocabulary::build({{"aaaa", Lang::BN}, {"ab", Lang::EN}});
    // unique grams: aa, aaa, aaaa, ab -> already lexicographic
    REQUIRE(vocab.size() == 4);
    CHECK(vocab.grams == std::vector<std::string>{"aa", "aaa", "aaaa", "ab"});
    CHECK(vocab.index.at("aaaa") == 2);

    auto vec = vocab.vectorize("aaaa");
    REQUIRE(vec.size() == 3);
    CHECK(vec[0] == std::pair<int, double>{0, 3.0}); // "aa" three times
    CHECK(vec[1] == std::pair<int, double>{1, 2.0});
    CHECK(vec[2] == std::pair<int, double>{2, 1.0});

    // unseen grams fall away silently
    CHECK(vocab.vectorize("xyz").empty());
    auto partial = vocab.vectorize("abx");
    REQUIRE(partial.size() == 1);
    CHECK(partial[0].first == 3);
}

TEST_CASE("svm fits a separable toy corpus") {
    auto words = toy_corpus();
    SvmConfig cfg;
    cfg.epochs = 200;
    SvmModel model = train_svm(words, cfg, 5);

    int correct = 0;
    for (const auto& w : words)
        if (predict_svm(model, w.word) == w.label) ++correct;
    CHECK(correct == static_cast<int>(words.size()));

    // the 1/(lambda t) schedule keeps lowering the regularized objective
    SvmConfig longer = cfg;
    longer.epochs = 1000;
    CHECK(hinge_objective(train_svm(words, longer, 5), words) <
          hinge_objective(model, words));

    CHECK(model.vocab.size() > 0);
    CHECK(model.weights.size() == model.vocab.size());
    CHECK(model.lambda == cfg.lambda);
    CHECK(model.epochs == cfg.epochs);
    CHECK(model.seed == 5);
}

TEST_CASE("svm training is deterministic per seed") {
    auto words = toy_corpus();
    SvmConfig cfg;
    SvmModel a = train_svm(words, cfg, 9);
    SvmModel b = train_svm(words, cfg, 9);
    CHECK(a.weights == b.weights);
    CHECK(a.bias == b.bias);

    SvmModel c = train_svm(words, cfg, 10);
    CHECK(a.weights != c.weights);
}

TEST_CASE("margins are signed and ties go to BN") {
    auto words = toy_corpus();
    SvmConfig cfg;
    cfg.epochs = 200;
    SvmModel model = train_svm(words, cfg, 5);
    CHECK(svm_margin(model, "khabar") < 0);
    CHECK(svm_margin(model, "good") > 0);

    // a word with no known grams scores exactly the bias; force the
    // zero-margin path by zeroing it out
    model.bias = 0.0;
    CHECK(svm_margin(model, "zzz") == 0.0);
    CHECK(predict_svm(model, "zzz") == Lang::BN);
}

TEST_CASE("svm rejects unusable input") {
    CHECK_THROWS_AS(train_svm({}, SvmConfig{}, 1), LidError);
    SvmConfig bad;
    bad.lambda = 0.0;
    CHECK_THROWS_AS(train_svm(toy_corpus(), bad, 1), LidError);
    bad.lambda = 1e-4;
    bad.epochs = 0;
    CHECK_THROWS_AS(train_svm(toy_corpus(), bad, 1), LidError);
    CHECK_THROWS_AS(hinge_objective(SvmModel{}, {}), LidError);
}

TEST_SUITE_END();
