#ifndef LID_CORPUS_HPP
#define LID_CORPUS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lid/phonelib.hpp"

namespace lid {

enum class Lang { BN, EN };

std::string_view lang_name(Lang lang);
Lang lang_from_name(std::string_view name);

struct LabeledWord {
    std::string word;
    Lang label;

    bool operator==(const LabeledWord&) const = default;
};

enum class RejectReason { None, NonAlpha, TooShort };

struct NormalizeResult {
    std::optional<std::string> word;
    RejectReason reject = RejectReason::None;

    explicit operator bool() const { return word.has_value(); }
};

// Lowercase -> reject on any character outside a-z -> squash runs of >2
// identical characters to exactly 2 -> reject if the result is shorter
// than 3 characters.
NormalizeResult normalize_word(std::string_view raw);

struct LoadStats {
    std::size_t accepted = 0;
    std::size_t rejected_nonalpha = 0;
    std::size_t rejected_tooshort = 0;
    std::size_t duplicates = 0;
};

// One raw word per line; normalized, rejects counted, duplicates within the
// label dropped. Order of first appearance is preserved.
std::vector<LabeledWord> load_wordlist(const std::string& path, Lang label,
                                       LoadStats* stats = nullptr);

// BN file then EN file. A word present in both files is kept under both
// labels; cross-label duplicates are legitimate data.
std::vector<LabeledWord> load_corpus(const std::string& bn_path, const std::string& en_path,
                                     LoadStats* stats = nullptr);

struct SplitCounts {
    std::size_t train = 0;
    std::size_t dev = 0;
    std::size_t test = 0;
};

struct DataSplit {
    std::vector<LabeledWord> train, dev, test;
    // Words left over when the requested counts do not exhaust the pools.
    std::vector<LabeledWord> unused;
};

// Seeded shuffle then partition, `counts` applying per label. Splits are
// disjoint on word strings: a word labeled under both languages is assigned
// to a single split carrying both its labels. Input must be duplicate-free
// within each label.
DataSplit split_corpus(const std::vector<LabeledWord>& words, std::uint64_t seed,
                       const SplitCounts& counts);

// 32 slots: roots 1..31 then oov. Counts of emitted indices over all
// phonetic encodings, normalized to sum 1.
std::vector<double> root_phone_frequency(const std::vector<std::string>& words,
                                         const PhoneticLibrary& lib);

// CSV `slot,phone,frequency` with the oov slot labeled OOV.
void write_frequency_csv(std::ostream& out, const std::vector<double>& freq,
                         const PhoneticLibrary& lib);

// Seeded test-fixture corpus, n words per label. Pseudo-BN words concatenate
// phone-group members with i/e/o-heavy vowels; pseudo-EN words come from an
// embedded syllable inventory biased toward a/u nuclei and consonant
// clusters. Every output is normalize_word-stable. No linguistic fidelity
// is claimed.
std::vector<LabeledWord> generate_synthetic(std::uint64_t seed, std::size_t n_per_label);

// Split manifest: TSV `word<TAB>label<TAB>split`.
void write_manifest(std::ostream& out, const DataSplit& split);
void write_manifest_file(const std::string& path, const DataSplit& split);
DataSplit read_manifest(std::istream& in);
DataSplit read_manifest_file(const std::string& path);

} // namespace lid

#endif
