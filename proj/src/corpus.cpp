#include "lid/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "lid/encoder.hpp"
#include "lid/error.hpp"
#include "lid/rng.hpp"

namespace lid {

std::string_view lang_name(Lang lang) {
    return lang == Lang::BN ? "BN" : "EN";
}

Lang lang_from_name(std::string_view name) {
    if (name == "BN" || name == "bn") return Lang::BN;
    if (name == "EN" || name == "en") return Lang::EN;
    throw LidError(ErrorKind::Data, "unknown label '" + std::string(name) + "'");
}

NormalizeResult normalize_word(std::string_view raw) {
    std::string lowered;
    lowered.reserve(raw.size());
    for (unsigned char c : raw) {
        if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
        if (c < 'a' || c > 'z')
            return {std::nullopt, RejectReason::NonAlpha};
        lowered.push_back(static_cast<char>(c));
    }

    // Squash any run of >2 identical characters down to 2 before the
    // length filter so elongated short words cannot sneak in.
    std::string squashed;
    squashed.reserve(lowered.size());
    for (char c : lowered) {
        std::size_t n = squashed.size();
        if (n >= 2 && squashed[n - 1] == c && squashed[n - 2] == c) continue;
        squashed.push_back(c);
    }

    if (squashed.size() < 3)
        return {std::nullopt, RejectReason::TooShort};
    return {std::move(squashed), RejectReason::None};
}

std::vector<LabeledWord> load_wordlist(const std::string& path, Lang label, LoadStats* stats) {
    std::ifstream in(path);
    if (!in)
        throw LidError(ErrorKind::NoInput, "cannot open word list: " + path);

    std::vector<LabeledWord> words;
    std::unordered_set<std::string> seen;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        NormalizeResult result = normalize_word(line);
        if (!result) {
            if (stats) {
                if (result.reject == RejectReason::NonAlpha)
                    ++stats->rejected_nonalpha;
                else
                    ++stats->rejected_tooshort;
            }
            continue;
        }
        if (!seen.insert(*result.word).second) {
            if (stats) ++stats->duplicates;
            continue;
        }
        if (stats) ++stats->accepted;
        words.push_back({std::move(*result.word), label});
    }
    return words;
}

std::vector<LabeledWord> load_corpus(const std::string& bn_path, const std::string& en_path,
                                     LoadStats* stats) {
    std::vector<LabeledWord> words = load_wordlist(bn_path, Lang::BN, stats);
    std::vector<LabeledWord> en = load_wordlist(en_path, Lang::EN, stats);
    words.insert(words.end(), std::make_move_iterator(en.begin()),
                 std::make_move_iterator(en.end()));
    return words;
}

namespace {

const char* split_error(Lang label) {
    return label == Lang::BN ? "insufficient BN words for the requested split counts"
                             : "insufficient EN words for the requested split counts";
}

} // namespace

DataSplit split_corpus(const std::vector<LabeledWord>& words, std::uint64_t seed,
                       const SplitCounts& counts) {
    std::unordered_map<std::string, int> label_mask; // 1=BN, 2=EN, 3=both
    for (const auto& lw : words) {
        int bit = lw.label == Lang::BN ? 1 : 2;
        int& mask = label_mask[lw.word];
        if (mask & bit)
            throw LidError(ErrorKind::Data,
                           "duplicate word '" + lw.word + "' within label " +
                               std::string(lang_name(lw.label)));
        mask |= bit;
    }

    std::vector<std::string> dual, pure_bn, pure_en;
    for (const auto& lw : words) { // first-appearance order
        int mask = label_mask[lw.word];
        if (mask == 3) {
            if (lw.label == Lang::BN) dual.push_back(lw.word); // record once
        } else if (mask == 1) {
            pure_bn.push_back(lw.word);
        } else {
            pure_en.push_back(lw.word);
        }
    }

    std::size_t need_bn = counts.train + counts.dev + counts.test;
    std::size_t need_en = need_bn;
    if (pure_bn.size() + dual.size() < need_bn)
        throw LidError(ErrorKind::Data, split_error(Lang::BN));
    if (pure_en.size() + dual.size() < need_en)
        throw LidError(ErrorKind::Data, split_error(Lang::EN));

    Rng rng(seed);
    rng.shuffle(dual);
    rng.shuffle(pure_bn);
    rng.shuffle(pure_en);

    DataSplit out;
    std::array<std::vector<LabeledWord>*, 3> buckets = {&out.train, &out.dev, &out.test};
    std::array<std::size_t, 3> quota_bn = {counts.train, counts.dev, counts.test};
    std::array<std::size_t, 3> quota_en = quota_bn;

    // A dual-labeled word must land in a single split under both labels,
    // otherwise the splits would intersect on its string.
    for (const auto& word : dual) {
        bool placed = false;
        for (int k = 0; k < 3; ++k) {
            if (quota_bn[k] > 0 && quota_en[k] > 0) {
                buckets[k]->push_back({word, Lang::BN});
                buckets[k]->push_back({word, Lang::EN});
                --quota_bn[k];
                --quota_en[k];
                placed = true;
                break;
            }
        }
        if (!placed) {
            out.unused.push_back({word, Lang::BN});
            out.unused.push_back({word, Lang::EN});
        }
    }
    for (const auto& word : pure_bn) {
        bool placed = false;
        for (int k = 0; k < 3; ++k) {
            if (quota_bn[k] > 0) {
                buckets[k]->push_back({word, Lang::BN});
                --quota_bn[k];
                placed = true;
                break;
            }
        }
        if (!placed) out.unused.push_back({word, Lang::BN});
    }
    for (const auto& word : pure_en) {
        bool placed = false;
        for (int k = 0; k < 3; ++k) {
            if (quota_en[k] > 0) {
                buckets[k]->push_back({word, Lang::EN});
                --quota_en[k];
                placed = true;
                break;
            }
        }
        if (!placed) out.unused.push_back({word, Lang::EN});
    }

    for (int k = 0; k < 3; ++k) {
        if (quota_bn[k] > 0) throw LidError(ErrorKind::Data, split_error(Lang::BN));
        if (quota_en[k] > 0) throw LidError(ErrorKind::Data, split_error(Lang::EN));
    }
    return out;
}

std::vector<double> root_phone_frequency(const std::vector<std::string>& words,
                                         const PhoneticLibrary& lib) {
    if (words.empty())
        throw LidError(ErrorKind::Data, "root phone frequency of an empty word list is undefined");

    std::vector<double> freq(PhoneticLibrary::kRootCount + 1, 0.0);
    long total = 0;
    for (const auto& word : words) {
        EncodedWord enc = encode_phonetic(word, lib);
        for (int index : enc.indices) {
            if (index == lib.oov_index())
                freq.back() += 1.0;
            else
                freq[index - 1] += 1.0;
            ++total;
        }
    }
    if (total == 0)
        throw LidError(ErrorKind::Data, "no phone indices were emitted");
    for (double& f : freq) f /= static_cast<double>(total);
    return freq;
}

void write_frequency_csv(std::ostream& out, const std::vector<double>& freq,
                         const PhoneticLibrary& lib) {
    out << "slot,phone,frequency\n";
    char buf[32];
    for (int i = 0; i < PhoneticLibrary::kRootCount; ++i) {
        std::snprintf(buf, sizeof buf, "%.9f", freq[i]);
        out << (i + 1) << ',' << lib.roots()[i] << ',' << buf << '\n';
    }
    std::snprintf(buf, sizeof buf, "%.9f", freq.back());
    out << lib.oov_index() << ",OOV," << buf << '\n';
}

namespace {

template <std::size_t N>
std::string_view pick(Rng& rng, const std::array<std::string_view, N>& items) {
    return items[static_cast<std::size_t>(rng.below(N))];
}

// Pseudo-Bengali: CV syllables with vowels skewed toward i/e/o, the
// transliteration-heavy root phones.
std::string synth_bn_word(Rng& rng) {
    static const std::array<std::string_view, 26> onsets = {
        "k",  "kh", "g",  "gh", "c",  "ch", "s",  "sh", "j",
        "jh", "z",  "bh", "v",  "t",  "th", "d",  "dh", "n",
        "p",  "ph", "b",  "m",  "r",  "l",  "h",  "bh"};
    static const std::array<std::string_view, 13> vowels = {
        "i", "i", "i", "e", "e", "e", "o", "o", "o", "a", "u", "ee", "oo"};
    static const std::array<std::string_view, 5> tails = {"r", "n", "m", "l", "sh"};

    std::string word;
    std::size_t syllables = 2 + rng.below(3);
    for (std::size_t s = 0; s < syllables; ++s) {
        word += pick(rng, onsets);
        word += pick(rng, vowels);
    }
    if (rng.below(4) == 0) word += pick(rng, tails);
    return word;
}

// Pseudo-English: onset + a/u-heavy nucleus + cluster coda, often a second
// syllable. q and x feed the oov index, which the real data only shows on
// the EN side.
std::string synth_en_word(Rng& rng) {
    static const std::array<std::string_view, 20> onsets = {
        "st", "pl", "gr", "tr", "br", "cl", "fr", "sk", "sl", "dr",
        "str", "t",  "s",  "p",  "m",  "w",  "qu", "b",  "c",  "d"};
    static const std::array<std::string_view, 8> nuclei = {
        "a", "a", "a", "a", "u", "u", "u", "e"};
    static const std::array<std::string_view, 16> codas = {
        "nd", "st", "mp", "rt", "ck", "nt", "lt", "sk",
        "ss", "ll", "x",  "n",  "t",  "d",  "rn", "mb"};

    std::string word;
    word += pick(rng, onsets);
    word += pick(rng, nuclei);
    word += pick(rng, codas);
    if (rng.below(5) < 2) {
        word += pick(rng, nuclei);
        word += pick(rng, codas);
    }
    return word;
}

} // namespace

std::vector<LabeledWord> generate_synthetic(std::uint64_t seed, std::size_t n_per_label) {
    if (n_per_label < 1)
        throw LidError(ErrorKind::Usage, "synthetic corpus size must be at least 1 per label");

    Rng rng(seed);
    std::vector<LabeledWord> out;
    out.reserve(2 * n_per_label);

    for (Lang label : {Lang::BN, Lang::EN}) {
        std::unordered_set<std::string> seen;
        while (seen.size() < n_per_label) {
            std::string word = label == Lang::BN ? synth_bn_word(rng) : synth_en_word(rng);
            NormalizeResult norm = normalize_word(word);
            if (!norm || *norm.word != word || word.size() > 12) continue;
            if (!seen.insert(word).second) continue;
            out.push_back({std::move(word), label});
        }
    }
    return out;
}

namespace {

void write_manifest_rows(std::ostream& out, const std::vector<LabeledWord>& words,
                         std::string_view split) {
    for (const auto& lw : words)
        out << lw.word << '\t' << lang_name(lw.label) << '\t' << split << '\n';
}

} // namespace

void write_manifest(std::ostream& out, const DataSplit& split) {
    write_manifest_rows(out, split.train, "train");
    write_manifest_rows(out, split.dev, "dev");
    write_manifest_rows(out, split.test, "test");
    write_manifest_rows(out, split.unused, "unused");
}

void write_manifest_file(const std::string& path, const DataSplit& split) {
    std::ofstream out(path);
    if (!out)
        throw LidError(ErrorKind::Io, "cannot write manifest: " + path);
    write_manifest(out, split);
}

DataSplit read_manifest(std::istream& in) {
    DataSplit split;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t tab1 = line.find('\t');
        std::size_t tab2 = tab1 == std::string::npos ? std::string::npos
                                                     : line.find('\t', tab1 + 1);
        if (tab2 == std::string::npos)
            throw LidError(ErrorKind::Data,
                           "manifest parse error at line " + std::to_string(line_no));
        std::string word = line.substr(0, tab1);
        Lang label = lang_from_name(line.substr(tab1 + 1, tab2 - tab1 - 1));
        std::string which = line.substr(tab2 + 1);
        LabeledWord lw{std::move(word), label};
        if (which == "train")
            split.train.push_back(std::move(lw));
        else if (which == "dev")
            split.dev.push_back(std::move(lw));
        else if (which == "test")
            split.test.push_back(std::move(lw));
        else if (which == "unused")
            split.unused.push_back(std::move(lw));
        else
            throw LidError(ErrorKind::Data, "unknown split '" + which + "' at line " +
                                                std::to_string(line_no));
    }
    return split;
}

DataSplit read_manifest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw LidError(ErrorKind::NoInput, "cannot open manifest: " + path);
    return read_manifest(in);
}

} // namespace lid
