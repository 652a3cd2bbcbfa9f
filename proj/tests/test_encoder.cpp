#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "lid/encoder.hpp"
#include "lid/error.hpp"
#include "lid/phonelib.hpp"
#include "lid/rng.hpp"

using namespace lid;

namespace {

// Plain re-statement of the greedy longest-match rule, kept deliberately
// different in shape from the production scan.
std::vector<int> reference_phonetic(const std::string& word, const PhoneticLibrary& lib) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < word.size()) {
        bool matched = false;
        for (std::size_t width = 3; width >= 1 && !matched; --width) {
            if (pos + width > word.size()) continue;
            if (auto idx = lib.lookup(word.substr(pos, width))) {
                out.push_back(*idx);
                pos += width;
                matched = true;
            }
        }
        if (!matched) {
            out.push_back(lib.oov_index());
            pos += 1;
        }
    }
    return out;
}

std::string random_word(Rng& rng, std::size_t min_len, std::size_t max_len) {
    std::size_t len = min_len + rng.below(max_len - min_len + 1);
    std::string w;
    for (std::size_t i = 0; i < len; ++i) w += static_cast<char>('a' + rng.below(26));
    return w;
}

} // namespace

TEST_SUITE_BEGIN("encoder");

TEST_CASE("character encoding is a=1..z=26") {
    CHECK(encode_char("good").indices == std::vector<int>{7, 15, 15, 4});
    CHECK(encode_char("bad").indices == std::vector<int>{2, 1, 4});
    CHECK(encode_char("az").indices == std::vector<int>{1, 26});
    CHECK(encode_char("a").source_word == "a");

    CHECK_THROWS_AS(encode_char(""), LidError);
    CHECK_THROWS_AS(encode_char("Bad"), LidError);
    CHECK_THROWS_AS(encode_char("a-b"), LidError);
}

TEST_CASE("phonetic encoding of spelling variants collapses to one sequence") {
    PhoneticLibrary lib = default_library();

    CHECK(encode_phonetic("khabar", lib).indices == std::vector<int>{10, 24, 4});
    CHECK(encode_phonetic("khbr", lib).indices == std::vector<int>{10, 24, 4});
    CHECK(encode_phonetic("korchi", lib).indices == std::vector<int>{9, 7, 4, 14, 2});
    CHECK(encode_phonetic("krci", lib).indices == std::vector<int>{9, 4, 13, 2});
    CHECK(encode_phonetic("good", lib).indices == std::vector<int>{11, 7, 19});
    CHECK(encode_phonetic("qxq", lib).indices == std::vector<int>{35, 35, 35});

    CHECK(oov_count({"khabar", "khbr"}, lib) == 0);
    CHECK(oov_count({"qxq"}, lib) == 3);
}

TEST_CASE("trace reports the window consumed at each step") {
    PhoneticLibrary lib = default_library();
    PhoneticTrace t = encode_phonetic_traced("khabar", lib);
    CHECK(t.indices == std::vector<int>{10, 24, 4});
    CHECK(t.widths == std::vector<int>{3, 2, 1});
}

TEST_CASE("greedy scan tiles the word and prefers the longest window") {
    PhoneticLibrary lib = default_library();
    Rng rng(404);
    for (int i = 0; i < 300; ++i) {
        std::string word = random_word(rng, 1, 20);
        CAPTURE(word);
        PhoneticTrace t = encode_phonetic_traced(word, lib);

        // exact tiling
        CHECK(std::accumulate(t.widths.begin(), t.widths.end(), 0) ==
              static_cast<int>(word.size()));

        std::size_t pos = 0;
        for (std::size_t s = 0; s < t.widths.size(); ++s) {
            std::size_t w = static_cast<std::size_t>(t.widths[s]);
            // emitted index matches the window (or is the oov marker)
            if (t.indices[s] == lib.oov_index() && w == 1) {
                CHECK_FALSE(lib.lookup(word.substr(pos, 1)).has_value());
            } else {
                CHECK(lib.lookup(word.substr(pos, w)) == t.indices[s]);
            }
            // no longer window at this position is in the library
            for (std::size_t longer = w + 1; longer <= 3 && pos + longer <= word.size();
                 ++longer)
                CHECK_FALSE(lib.lookup(word.substr(pos, longer)).has_value());
            pos += w;
        }

        for (int idx : t.indices)
            CHECK(((idx >= 1 && idx <= 31) || idx == lib.oov_index()));
    }
}

TEST_CASE("production scan agrees with an independent re-statement") {
    PhoneticLibrary lib = default_library();
    Rng rng(405);
    for (int i = 0; i < 300; ++i) {
        std::string word = random_word(rng, 1, 18);
        CAPTURE(word);
        CHECK(encode_phonetic(word, lib).indices == reference_phonetic(word, lib));
    }
}

TEST_CASE("padding is pre-padding to 15 steps") {
    PaddedTensor t = pad_and_onehot(encode_char("good"));
    REQUIRE(t.active.size() == 15);
    CHECK_FALSE(t.truncated);
    CHECK(t.vocab_dim == 27);
    for (int i = 0; i < 11; ++i) CHECK(t.active[i] == 0);
    CHECK(t.active[11] == 7);
    CHECK(t.active[14] == 4);
}

TEST_CASE("overlong words keep their last 15 units") {
    std::string long_word = "abcdefghijklmnopqr"; // 18 letters
    PaddedTensor t = pad_and_onehot(encode_char(long_word));
    CHECK(t.truncated);
    REQUIRE(t.active.size() == 15);
    CHECK(t.active[0] == 4);  // 'd', the first surviving letter
    CHECK(t.active[14] == 18); // 'r'

    std::string exact = "abcdefghijklmno"; // 15 letters
    CHECK_FALSE(pad_and_onehot(encode_char(exact)).truncated);
}

TEST_CASE("dense one-hot view puts a single 1 per live row") {
    PhoneticLibrary lib = default_library();
    PaddedTensor t = pad_and_onehot(encode_phonetic("khabar", lib));
    CHECK(t.vocab_dim == 36);
    std::vector<double> dense = t.onehot();
    REQUIRE(dense.size() == 15u * 36u);
    for (int row = 0; row < 15; ++row) {
        double sum = 0;
        for (int col = 0; col < 36; ++col) sum += dense[static_cast<std::size_t>(row) * 36 + col];
        if (t.active[row] == 0) {
            CHECK(sum == 0.0);
        } else {
            CHECK(sum == 1.0);
            CHECK(dense[static_cast<std::size_t>(row) * 36 + t.active[row]] == 1.0);
        }
    }
}

TEST_CASE("dead slots 32-34 never appear in phonetic output") {
    PhoneticLibrary lib = default_library();
    Rng rng(406);
    for (int i = 0; i < 200; ++i) {
        std::string word = random_word(rng, 1, 15);
        for (int idx : encode_phonetic(word, lib).indices)
            CHECK((idx < 32 || idx > 34));
    }
}

TEST_SUITE_END();
