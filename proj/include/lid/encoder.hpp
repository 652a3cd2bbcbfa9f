#ifndef LID_ENCODER_HPP
#define LID_ENCODER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "lid/phonelib.hpp"

namespace lid {

enum class Scheme { Char, Phonetic };

std::string_view scheme_name(Scheme scheme);
Scheme scheme_from_name(std::string_view name);

// One-hot row width: pad column 0 plus 26 letters, or pad plus indices 1..35
// (32..34 stay permanently zero so the oov index keeps its published value).
int vocab_dim(Scheme scheme);

struct EncodedWord {
    Scheme scheme;
    std::vector<int> indices;
    std::string source_word;
};

// Fixed-length network input. `active[t]` is the hot column of timestep t,
// 0 for an all-zero pad row. Pre-padded: pads come first so the final
// timestep always carries the word's last unit.
struct PaddedTensor {
    Scheme scheme = Scheme::Char;
    int seq_len = 15;
    int vocab_dim = 0;
    bool truncated = false;
    std::vector<int> active;

    // Dense seq_len x vocab_dim row-major view.
    std::vector<double> onehot() const;
};

constexpr int kSeqLen = 15;

// a=1 .. z=26, one index per character.
EncodedWord encode_char(std::string_view word);

// Greedy left-to-right scan; window sizes 3, 2, 1 tried in that order,
// first hit wins; a single-character miss emits the oov index 35.
EncodedWord encode_phonetic(std::string_view word, const PhoneticLibrary& lib);

// Same scan, also reporting the window width consumed at each step.
struct PhoneticTrace {
    std::vector<int> indices;
    std::vector<int> widths;
};
PhoneticTrace encode_phonetic_traced(std::string_view word, const PhoneticLibrary& lib);

// Pre-pad to 15 timesteps; sequences longer than 15 keep their last 15
// indices and are flagged truncated.
PaddedTensor pad_and_onehot(const EncodedWord& enc);

// Total occurrences of the oov index across all phonetic encodings.
long oov_count(const std::vector<std::string>& words, const PhoneticLibrary& lib);

} // namespace lid

#endif
