#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lid/corpus.hpp"
#include "lid/error.hpp"
#include "lid/phonelib.hpp"

using namespace lid;

namespace {

std::string temp_file(const std::string& name, const std::string& content) {
    std::string path = "corpus_test_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

} // namespace

TEST_SUITE_BEGIN("corpus");

TEST_CASE("normalization lowers, filters and squashes") {
    CHECK(*normalize_word("Khabar").word == "khabar");
    CHECK(*normalize_word("GOOD").word == "good");
    CHECK(*normalize_word("coool").word == "cool");
    CHECK(*normalize_word("gooood").word == "good");
    CHECK(*normalize_word("hmm").word == "hmm"); // a double stays a double

    CHECK(normalize_word("ab").reject == RejectReason::TooShort);
    CHECK(normalize_word("aaa").reject == RejectReason::TooShort); // squashed to "aa"
    CHECK(normalize_word("").reject == RejectReason::TooShort);    // nothing non-alphabetic in it
    CHECK(normalize_word("a1b").reject == RejectReason::NonAlpha);
    CHECK(normalize_word("can't").reject == RejectReason::NonAlpha);
    CHECK_FALSE(normalize_word("don t"));
}

TEST_CASE("wordlist loading counts rejects and drops duplicates") {
    std::string path = temp_file("list.txt", "Khabar\nkhabar\nab\nw0rd\nbhaat\nKHABAR\n");
    LoadStats stats;
    std::vector<LabeledWord> words = load_wordlist(path, Lang::BN, &stats);

    REQUIRE(words.size() == 2);
    CHECK(words[0].word == "khabar"); // first appearance order
    CHECK(words[1].word == "bhaat");
    CHECK(words[0].label == Lang::BN);
    CHECK(stats.accepted == 2);
    CHECK(stats.duplicates == 2);
    CHECK(stats.rejected_tooshort == 1);
    CHECK(stats.rejected_nonalpha == 1);
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_wordlist("no_such_file.txt", Lang::BN), LidError);
}

TEST_CASE("split keeps quotas per label and preserves the corpus as a multiset") {
    std::vector<LabeledWord> words;
    for (int i = 0; i < 12; ++i) words.push_back({"bnword" + std::to_string(i), Lang::BN});
    for (int i = 0; i < 12; ++i) words.push_back({"enword" + std::to_string(i), Lang::EN});
    // two genuinely bilingual strings, labeled under both languages
    words.push_back({"amar", Lang::BN});
    words.push_back({"amar", Lang::EN});
    words.push_back({"more", Lang::BN});
    words.push_back({"more", Lang::EN});

    DataSplit split = split_corpus(words, 99, {8, 3, 2});

    auto count_label = [](const std::vector<LabeledWord>& v, Lang l) {
        return std::count_if(v.begin(), v.end(),
                             [l](const LabeledWord& w) { return w.label == l; });
    };
    CHECK(count_label(split.train, Lang::BN) == 8);
    CHECK(count_label(split.train, Lang::EN) == 8);
    CHECK(count_label(split.dev, Lang::BN) == 3);
    CHECK(count_label(split.dev, Lang::EN) == 3);
    CHECK(count_label(split.test, Lang::BN) == 2);
    CHECK(count_label(split.test, Lang::EN) == 2);

    // splits are disjoint on strings
    auto strings_of = [](const std::vector<LabeledWord>& v) {
        std::vector<std::string> s;
        for (const auto& w : v) s.push_back(w.word);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return s;
    };
    std::vector<std::string> tr = strings_of(split.train), de = strings_of(split.dev),
                             te = strings_of(split.test);
    for (const std::string& w : de) {
        CHECK_FALSE(std::binary_search(tr.begin(), tr.end(), w));
        CHECK_FALSE(std::binary_search(te.begin(), te.end(), w));
    }
    for (const std::string& w : te)
        CHECK_FALSE(std::binary_search(tr.begin(), tr.end(), w));

    // nothing lost, nothing invented
    std::multiset<std::pair<std::string, int>> before, after;
    for (const auto& w : words) before.insert({w.word, static_cast<int>(w.label)});
    for (const auto* part : {&split.train, &split.dev, &split.test, &split.unused})
        for (const auto& w : *part) after.insert({w.word, static_cast<int>(w.label)});
    CHECK(before == after);

    // identical seed reproduces the split exactly
    DataSplit again = split_corpus(words, 99, {8, 3, 2});
    CHECK(again.train == split.train);
    CHECK(again.dev == split.dev);
    CHECK(again.test == split.test);
}

TEST_CASE("split errors are explicit") {
    std::vector<LabeledWord> words = {{"aar", Lang::BN}, {"and", Lang::EN}};
    CHECK_THROWS_WITH_AS(split_corpus(words, 1, {2, 1, 1}), doctest::Contains("insufficient"),
                         LidError);

    std::vector<LabeledWord> dup = {{"aar", Lang::BN}, {"aar", Lang::BN}, {"and", Lang::EN}};
    CHECK_THROWS_AS(split_corpus(dup, 1, {1, 0, 0}), LidError);
}

TEST_CASE("synthetic corpus is deterministic and normalization-stable") {
    std::vector<LabeledWord> a = generate_synthetic(77, 40);
    std::vector<LabeledWord> b = generate_synthetic(77, 40);
    CHECK(a == b);
    REQUIRE(a.size() == 80);

    std::size_t bn = 0;
    for (const LabeledWord& w : a) {
        if (w.label == Lang::BN) ++bn;
        NormalizeResult norm = normalize_word(w.word);
        REQUIRE(norm);
        CHECK(*norm.word == w.word);
        CHECK(w.word.size() >= 3);
        CHECK(w.word.size() <= 12);
    }
    CHECK(bn == 40);

    CHECK(generate_synthetic(78, 40) != a);
}

TEST_CASE("root phone frequency profile sums to one") {
    PhoneticLibrary lib = default_library();
    std::vector<std::string> words = {"khabar", "khbr", "korchi", "qxq"};
    std::vector<double> freq = root_phone_frequency(words, lib);
    REQUIRE(freq.size() == 32);
    CHECK(std::accumulate(freq.begin(), freq.end(), 0.0) == doctest::Approx(1.0));

    // 14 emitted units total (3 + 3 + 5 + 3), three of them oov (from qxq)
    CHECK(freq.back() == doctest::Approx(3.0 / 14.0));
    // root 10 fires twice: "kha" in khabar, "kh" in khbr
    CHECK(freq[9] == doctest::Approx(2.0 / 14.0));

    std::ostringstream csv;
    write_frequency_csv(csv, freq, lib);
    std::string text = csv.str();
    CHECK(text.find("slot,phone,frequency") == 0);
    CHECK(text.find("35,OOV,") != std::string::npos);
    CHECK(text.find("10,kha,") != std::string::npos);
}

TEST_CASE("manifest round trip") {
    std::vector<LabeledWord> words = generate_synthetic(3, 25);
    DataSplit split = split_corpus(words, 3, {15, 5, 4});

    std::stringstream buf;
    write_manifest(buf, split);
    DataSplit loaded = read_manifest(buf);

    CHECK(loaded.train == split.train);
    CHECK(loaded.dev == split.dev);
    CHECK(loaded.test == split.test);
    CHECK(loaded.unused == split.unused);

    std::stringstream bad("word\tBN\n");
    CHECK_THROWS_AS(read_manifest(bad), LidError);
    std::stringstream badsplit("word\tBN\tvalidation\n");
    CHECK_THROWS_AS(read_manifest(badsplit), LidError);
}

TEST_SUITE_END();
