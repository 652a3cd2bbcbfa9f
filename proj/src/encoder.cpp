#include "lid/encoder.hpp"

#include <algorithm>

#include "lid/error.hpp"

namespace lid {
namespace {

void require_lower_alpha(std::string_view word) {
    if (word.empty())
        throw LidError(ErrorKind::Data, "cannot encode an empty word");
    for (char c : word) {
        if (c < 'a' || c > 'z')
            throw LidError(ErrorKind::Data,
                           "word '" + std::string(word) + "' contains a character outside a-z");
    }
}

} // namespace

std::string_view scheme_name(Scheme scheme) {
    return scheme == Scheme::Char ? "char" : "phonetic";
}

Scheme scheme_from_name(std::string_view name) {
    if (name == "char") return Scheme::Char;
    if (name == "phonetic") return Scheme::Phonetic;
    throw LidError(ErrorKind::Usage, "unknown scheme '" + std::string(name) + "'");
}

int vocab_dim(Scheme scheme) {
    return scheme == Scheme::Char ? 27 : 36;
}

std::vector<double> PaddedTensor::onehot() const {
    std::vector<double> rows(static_cast<std::size_t>(seq_len) * vocab_dim, 0.0);
    for (int t = 0; t < seq_len; ++t) {
        if (active[t] != 0)
            rows[static_cast<std::size_t>(t) * vocab_dim + active[t]] = 1.0;
    }
    return rows;
}

EncodedWord encode_char(std::string_view word) {
    require_lower_alpha(word);
    EncodedWord enc{Scheme::Char, {}, std::string(word)};
    enc.indices.reserve(word.size());
    for (char c : word)
        enc.indices.push_back(c - 'a' + 1);
    return enc;
}

PhoneticTrace encode_phonetic_traced(std::string_view word, const PhoneticLibrary& lib) {
    require_lower_alpha(word);
    PhoneticTrace trace;
    std::size_t pos = 0;
    while (pos < word.size()) {
        std::size_t remaining = word.size() - pos;
        bool hit = false;
        for (std::size_t width = std::min<std::size_t>(3, remaining); width >= 1; --width) {
            if (auto index = lib.lookup(word.substr(pos, width))) {
                trace.indices.push_back(*index);
                trace.widths.push_back(static_cast<int>(width));
                pos += width;
                hit = true;
                break;
            }
        }
        if (!hit) {
            trace.indices.push_back(lib.oov_index());
            trace.widths.push_back(1);
            pos += 1;
        }
    }
    return trace;
}

EncodedWord encode_phonetic(std::string_view word, const PhoneticLibrary& lib) {
    PhoneticTrace trace = encode_phonetic_traced(word, lib);
    return EncodedWord{Scheme::Phonetic, std::move(trace.indices), std::string(word)};
}

PaddedTensor pad_and_onehot(const EncodedWord& enc) {
    PaddedTensor tensor;
    tensor.scheme = enc.scheme;
    tensor.seq_len = kSeqLen;
    tensor.vocab_dim = vocab_dim(enc.scheme);
    tensor.active.assign(kSeqLen, 0);

    const auto& idx = enc.indices;
    std::size_t keep = idx.size();
    std::size_t skip = 0;
    if (keep > kSeqLen) {
        // Keep the last 15: the tail carries suffix morphology.
        skip = keep - kSeqLen;
        keep = kSeqLen;
        tensor.truncated = true;
    }
    std::size_t pad = kSeqLen - keep;
    for (std::size_t i = 0; i < keep; ++i)
        tensor.active[pad + i] = idx[skip + i];
    return tensor;
}

long oov_count(const std::vector<std::string>& words, const PhoneticLibrary& lib) {
    long count = 0;
    for (const auto& word : words) {
        EncodedWord enc = encode_phonetic(word, lib);
        count += std::count(enc.indices.begin(), enc.indices.end(), lib.oov_index());
    }
    return count;
}

} // namespace lid
