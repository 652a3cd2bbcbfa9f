// lid: train, tune and run word-level Bengali/English identifiers.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "lid/baseline.hpp"
#include "lid/corpus.hpp"
#include "lid/decision.hpp"
#include "lid/encoder.hpp"
#include "lid/error.hpp"
#include "lid/kernels.hpp"
#include "lid/metrics.hpp"
#include "lid/model_io.hpp"
#include "lid/neural.hpp"
#include "lid/phonelib.hpp"

namespace {

using namespace lid;

PhoneticLibrary load_lib(const std::string& path) {
    return path.empty() ? default_library() : load_library_file(path);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw LidError(ErrorKind::Io, "cannot write '" + path + "'");
    return out;
}

const std::vector<LabeledWord>& section(const DataSplit& split, const std::string& name) {
    if (name == "train") return split.train;
    if (name == "dev") return split.dev;
    if (name == "test") return split.test;
    if (name == "unused") return split.unused;
    throw LidError(ErrorKind::Usage, "unknown split '" + name + "'");
}

std::vector<std::string> words_of(const std::vector<LabeledWord>& rows) {
    std::vector<std::string> words;
    words.reserve(rows.size());
    for (const LabeledWord& r : rows) words.push_back(r.word);
    return words;
}

std::vector<Lang> labels_of(const std::vector<LabeledWord>& rows) {
    std::vector<Lang> labels;
    labels.reserve(rows.size());
    for (const LabeledWord& r : rows) labels.push_back(r.label);
    return labels;
}

std::vector<PaddedTensor> encode_all(Scheme scheme, const std::vector<std::string>& words,
                                     const PhoneticLibrary& lib) {
    std::vector<PaddedTensor> tensors;
    tensors.reserve(words.size());
    if (scheme == Scheme::Char) {
        for (const std::string& w : words) tensors.push_back(pad_and_onehot(encode_char(w)));
    } else {
        for (const EncodedWord& e : encode_corpus(words, lib))
            tensors.push_back(pad_and_onehot(e));
    }
    return tensors;
}

std::vector<Sample> to_samples(Scheme scheme, const std::vector<LabeledWord>& rows,
                               const PhoneticLibrary& lib) {
    std::vector<PaddedTensor> tensors = encode_all(scheme, words_of(rows), lib);
    std::vector<Sample> samples;
    samples.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        samples.push_back({std::move(tensors[i]), rows[i].label == Lang::EN ? 1.0 : 0.0});
    return samples;
}

struct Predictions {
    std::vector<double> scores; // sigmoid output, or the margin for the svm
    std::vector<Lang> labels;
};

Predictions predict_lstm(const LstmModelFile& model, const std::vector<std::string>& words,
                         const PhoneticLibrary& lib) {
    Predictions out;
    out.scores = batch_scores(model.net, encode_all(model.net.config().scheme, words, lib));
    out.labels.reserve(out.scores.size());
    for (double s : out.scores)
        out.labels.push_back(model.decision ? apply_threshold(*model.decision, s)
                                            : round_predict(s));
    return out;
}

Predictions predict_any(const AnyModel& model, const std::vector<std::string>& words,
                        const PhoneticLibrary& lib) {
    Predictions out;
    if (const auto* lstm = std::get_if<LstmModelFile>(&model)) {
        out = predict_lstm(*lstm, words, lib);
    } else if (const auto* svm = std::get_if<SvmModel>(&model)) {
        out.scores.reserve(words.size());
        out.labels.reserve(words.size());
        for (const std::string& w : words) {
            double margin = svm_margin(*svm, w);
            out.scores.push_back(margin);
            out.labels.push_back(margin > 0.0 ? Lang::EN : Lang::BN);
        }
    } else {
        const auto& ens = std::get<EnsembleModelFile>(model);
        std::vector<double> s1 =
            batch_scores(ens.char_model.net, encode_all(Scheme::Char, words, lib));
        std::vector<double> s2 =
            batch_scores(ens.phonetic_model.net, encode_all(Scheme::Phonetic, words, lib));
        out.scores.reserve(words.size());
        out.labels.reserve(words.size());
        for (std::size_t i = 0; i < words.size(); ++i) {
            if (ens.method == "stack") {
                StackerPrediction p = predict_stacker(ens.stacker, s1[i], s2[i]);
                out.scores.push_back(p.fuzzy);
                out.labels.push_back(p.label);
            } else {
                double m = ensemble_mean(s1[i], s2[i]);
                out.scores.push_back(m);
                out.labels.push_back(apply_threshold(ens.threshold, m));
            }
        }
    }
    return out;
}

std::string model_kind_name(const AnyModel& model) {
    if (const auto* lstm = std::get_if<LstmModelFile>(&model))
        return std::string("lstm-") + std::string(scheme_name(lstm->net.config().scheme));
    if (std::holds_alternative<SvmModel>(model)) return "svm";
    return "ensemble-" + std::get<EnsembleModelFile>(model).method;
}

// ---- subcommand options ----

struct SynthOpt {
    std::uint64_t seed = 1;
    std::size_t per_label = 1000;
    std::size_t train = 800, dev = 100, test = 100;
    std::string out;
};

struct IngestOpt {
    std::string bn, en, out;
    std::uint64_t seed = 1;
    std::size_t train = 0, dev = 0, test = 0;
};

struct EncodeOpt {
    std::string scheme = "char";
    std::string library, word, input;
    bool trace = false, pad = false;
};

struct StatsOpt {
    std::string manifest, library, out;
    std::string split = "all";
};

struct TrainOpt {
    std::string model = "lstm";
    std::string manifest, scheme = "char", library, out, loss_out;
    std::uint64_t seed = 42;
    int epochs = -1;
    int batch = -1;
    double lr = 1e-3;
    int hidden1 = -1, hidden2 = -1;
    double lambda = 1e-4;
};

struct TuneOpt {
    std::string model, manifest, library, out;
    std::string split = "dev";
};

struct EnsembleOpt {
    std::string char_path, phonetic_path, manifest, library, out;
    std::string method = "stack";
    std::string split = "dev";
    double stack_lr = 0.5;
    int stack_epochs = 1000;
    std::uint64_t seed = 7;
};

struct EvaluateOpt {
    std::string model, manifest, library, cm;
    std::string split = "test";
    std::string positive = "EN";
    std::string name, scatter, cm_out, results_out;
};

struct PredictOpt {
    std::string model, library;
};

void run_synth(const SynthOpt& o) {
    std::vector<LabeledWord> words = generate_synthetic(o.seed, o.per_label);
    DataSplit split = split_corpus(words, o.seed, {o.train, o.dev, o.test});
    write_manifest_file(o.out, split);
    std::cout << "generated " << words.size() << " words, split " << split.train.size() << "/"
              << split.dev.size() << "/" << split.test.size() << " (" << split.unused.size()
              << " unused) -> " << o.out << '\n';
}

void run_ingest(const IngestOpt& o) {
    LoadStats stats;
    std::vector<LabeledWord> words = load_corpus(o.bn, o.en, &stats);
    DataSplit split = split_corpus(words, o.seed, {o.train, o.dev, o.test});
    write_manifest_file(o.out, split);
    std::cout << "accepted " << stats.accepted << " words (" << stats.rejected_nonalpha
              << " non-alphabetic, " << stats.rejected_tooshort << " too short, "
              << stats.duplicates << " duplicates dropped)\n"
              << "split " << split.train.size() << "/" << split.dev.size() << "/"
              << split.test.size() << " (" << split.unused.size() << " unused) -> " << o.out
              << '\n';
}

void run_encode(const EncodeOpt& o) {
    Scheme scheme = scheme_from_name(o.scheme);
    PhoneticLibrary lib = load_lib(o.library);

    std::vector<std::string> raw;
    if (!o.word.empty()) raw.push_back(o.word);
    if (!o.input.empty()) {
        std::ifstream in(o.input);
        if (!in) throw LidError(ErrorKind::NoInput, "cannot open '" + o.input + "'");
        for (std::string line; std::getline(in, line);)
            if (!line.empty()) raw.push_back(line);
    }
    if (raw.empty()) throw LidError(ErrorKind::NoInput, "nothing to encode; use --word or --input");

    for (const std::string& r : raw) {
        NormalizeResult norm = normalize_word(r);
        if (!norm)
            throw LidError(ErrorKind::Data,
                           "'" + r + "' does not survive normalization (" +
                               (norm.reject == RejectReason::NonAlpha ? "non-alphabetic"
                                                                      : "too short") +
                               ")");
        const std::string& w = *norm.word;
        std::cout << w << '\t';
        if (o.trace && scheme == Scheme::Phonetic) {
            PhoneticTrace t = encode_phonetic_traced(w, lib);
            std::size_t pos = 0;
            for (std::size_t i = 0; i < t.indices.size(); ++i) {
                if (i) std::cout << ' ';
                std::cout << w.substr(pos, static_cast<std::size_t>(t.widths[i])) << ':'
                          << t.indices[i];
                pos += static_cast<std::size_t>(t.widths[i]);
            }
        } else {
            EncodedWord enc = scheme == Scheme::Char ? encode_char(w) : encode_phonetic(w, lib);
            if (o.pad) {
                PaddedTensor padded = pad_and_onehot(enc);
                for (int i = 0; i < padded.seq_len; ++i) {
                    if (i) std::cout << ' ';
                    std::cout << padded.active[i];
                }
                if (padded.truncated) std::cout << "\ttruncated";
            } else {
                for (std::size_t i = 0; i < enc.indices.size(); ++i) {
                    if (i) std::cout << ' ';
                    std::cout << enc.indices[i];
                }
            }
        }
        std::cout << '\n';
    }
}

void run_stats(const StatsOpt& o) {
    PhoneticLibrary lib = load_lib(o.library);
    DataSplit split = read_manifest_file(o.manifest);
    std::vector<std::string> words;
    if (o.split == "all") {
        for (const auto* part : {&split.train, &split.dev, &split.test, &split.unused})
            for (const LabeledWord& r : *part) words.push_back(r.word);
    } else {
        words = words_of(section(split, o.split));
    }
    if (words.empty()) throw LidError(ErrorKind::NoInput, "no words in the selected split");

    std::vector<double> freq = root_phone_frequency(words, lib);
    if (o.out.empty()) {
        write_frequency_csv(std::cout, freq, lib);
    } else {
        auto out = open_out(o.out);
        write_frequency_csv(out, freq, lib);
    }
    std::cerr << words.size() << " words, " << oov_count(words, lib) << " oov units\n";
}

void run_train(const TrainOpt& o) {
    PhoneticLibrary lib = load_lib(o.library);
    DataSplit split = read_manifest_file(o.manifest);
    if (split.train.empty()) throw LidError(ErrorKind::NoInput, "manifest has no train split");

    if (o.model == "svm") {
        std::vector<LabeledWord> merged = split.train;
        merged.insert(merged.end(), split.dev.begin(), split.dev.end());
        SvmConfig cfg;
        cfg.lambda = o.lambda;
        cfg.epochs = o.epochs > 0 ? o.epochs : 50;
        SvmModel model = train_svm(merged, cfg, o.seed);
        save_svm_file(o.out, model);
        std::cout << "svm: " << model.vocab.size() << " n-gram features, objective "
                  << hinge_objective(model, merged) << " -> " << o.out << '\n';
        return;
    }
    if (o.model != "lstm") throw LidError(ErrorKind::Usage, "unknown model '" + o.model + "'");

    Scheme scheme = scheme_from_name(o.scheme);
    NetworkConfig cfg = NetworkConfig::for_scheme(scheme, o.seed);
    if (o.epochs > 0) cfg.epochs = o.epochs;
    if (o.hidden1 > 0) cfg.hidden1 = o.hidden1;
    if (o.hidden2 > 0) cfg.hidden2 = o.hidden2;
    cfg.learning_rate = o.lr;
    std::vector<Sample> train_set = to_samples(scheme, split.train, lib);
    std::vector<Sample> dev_set = to_samples(scheme, split.dev, lib);
    cfg.batch_size = o.batch > 0 ? o.batch : static_cast<int>(train_set.size());

    TrainResult result = train(cfg, train_set, dev_set, o.seed);
    save_lstm_file(o.out, {result.net, std::nullopt});

    if (!o.loss_out.empty()) {
        auto out = open_out(o.loss_out);
        out << "epoch,train_loss" << (result.dev_loss.empty() ? "" : ",dev_loss") << '\n';
        char buf[64];
        for (std::size_t e = 0; e < result.train_loss.size(); ++e) {
            std::snprintf(buf, sizeof buf, "%zu,%.9f", e + 1, result.train_loss[e]);
            out << buf;
            if (!result.dev_loss.empty()) {
                std::snprintf(buf, sizeof buf, ",%.9f", result.dev_loss[e]);
                out << buf;
            }
            out << '\n';
        }
    }
    std::cout << "lstm-" << scheme_name(scheme) << ": final train loss "
              << result.train_loss.back();
    if (!result.dev_loss.empty()) std::cout << ", dev loss " << result.dev_loss.back();
    std::cout << " -> " << o.out << '\n';
}

void run_tune(const TuneOpt& o) {
    PhoneticLibrary lib = load_lib(o.library);
    DataSplit split = read_manifest_file(o.manifest);
    const std::vector<LabeledWord>& rows = section(split, o.split);
    if (rows.empty())
        throw LidError(ErrorKind::NoInput, "manifest has no " + o.split + " split");

    LstmModelFile model = load_lstm_file(o.model);
    std::vector<double> scores =
        batch_scores(model.net, encode_all(model.net.config().scheme, words_of(rows), lib));
    ThresholdFit fit = fit_threshold(scores, labels_of(rows));
    model.decision = fit.rule;
    save_lstm_file(o.out, model);
    std::cout << "theta " << fit.rule.theta << ", " << o.split << " accuracy "
              << 100.0 * fit.accuracy << "% -> " << o.out << '\n';
}

void run_ensemble(const EnsembleOpt& o) {
    PhoneticLibrary lib = load_lib(o.library);
    DataSplit split = read_manifest_file(o.manifest);
    const std::vector<LabeledWord>& rows = section(split, o.split);
    if (rows.empty())
        throw LidError(ErrorKind::NoInput, "manifest has no " + o.split + " split");

    EnsembleModelFile model;
    model.method = o.method;
    model.char_model = load_lstm_file(o.char_path);
    model.phonetic_model = load_lstm_file(o.phonetic_path);
    if (model.char_model.net.config().scheme != Scheme::Char)
        throw LidError(ErrorKind::Mismatch, "--char model is not a character-scheme network");
    if (model.phonetic_model.net.config().scheme != Scheme::Phonetic)
        throw LidError(ErrorKind::Mismatch, "--phonetic model is not a phonetic-scheme network");

    std::vector<std::string> words = words_of(rows);
    std::vector<Lang> truths = labels_of(rows);
    std::vector<double> s1 = batch_scores(model.char_model.net, encode_all(Scheme::Char, words, lib));
    std::vector<double> s2 =
        batch_scores(model.phonetic_model.net, encode_all(Scheme::Phonetic, words, lib));

    if (o.method == "stack") {
        std::vector<std::array<double, 2>> pairs(words.size());
        for (std::size_t i = 0; i < words.size(); ++i) pairs[i] = {s1[i], s2[i]};
        model.stacker = fit_stacker(pairs, truths, o.stack_lr, o.stack_epochs, o.seed);
        std::cout << "stacker w1 " << model.stacker.w1 << " w2 " << model.stacker.w2 << " b "
                  << model.stacker.b;
    } else if (o.method == "mean-threshold") {
        std::vector<double> mean(words.size());
        for (std::size_t i = 0; i < words.size(); ++i) mean[i] = ensemble_mean(s1[i], s2[i]);
        ThresholdFit fit = fit_threshold(mean, truths);
        model.threshold = fit.rule;
        std::cout << "mean threshold " << fit.rule.theta << ", " << o.split << " accuracy "
                  << 100.0 * fit.accuracy << '%';
    } else {
        throw LidError(ErrorKind::Usage, "unknown ensemble method '" + o.method + "'");
    }
    save_ensemble_file(o.out, model);
    std::cout << " -> " << o.out << '\n';
}

ConfusionMatrix parse_cm(const std::string& text) {
    ConfusionMatrix cm;
    long* cells[4] = {&cm.bn_bn, &cm.bn_en, &cm.en_bn, &cm.en_en};
    std::stringstream in(text);
    std::string cell;
    int i = 0;
    for (; std::getline(in, cell, ',') && i < 4; ++i) {
        try {
            *cells[i] = std::stol(cell);
        } catch (const std::exception&) {
            throw LidError(ErrorKind::Data, "--cm cell '" + cell + "' is not a number");
        }
        if (*cells[i] < 0) throw LidError(ErrorKind::Data, "--cm counts must be nonnegative");
    }
    if (i != 4 || std::getline(in, cell, ','))
        throw LidError(ErrorKind::Data, "--cm wants four counts: bn_bn,bn_en,en_bn,en_en");
    return cm;
}

void run_evaluate(const EvaluateOpt& o) {
    Lang positive = lang_from_name(o.positive);
    ConfusionMatrix cm;
    std::string name = o.name;

    if (!o.cm.empty()) {
        cm = parse_cm(o.cm);
        if (name.empty()) name = "given-cm";
    } else {
        if (o.model.empty() || o.manifest.empty())
            throw LidError(ErrorKind::Usage, "evaluate wants --model and --manifest, or --cm");
        PhoneticLibrary lib = load_lib(o.library);
        DataSplit split = read_manifest_file(o.manifest);
        const std::vector<LabeledWord>& rows = section(split, o.split);
        if (rows.empty())
            throw LidError(ErrorKind::NoInput, "manifest has no " + o.split + " split");

        AnyModel model = load_any_model_file(o.model);
        Predictions pred = predict_any(model, words_of(rows), lib);
        std::vector<Lang> truths = labels_of(rows);
        cm = confusion(pred.labels, truths);
        if (name.empty()) name = model_kind_name(model);

        if (!o.scatter.empty()) {
            auto out = open_out(o.scatter);
            export_scatter(out, pred.scores, truths);
        }
    }

    MetricsReport report = compute_metrics(cm, positive);
    std::string table = results_table({{name, report}});
    std::cout << table;
    if (!o.cm_out.empty()) {
        auto out = open_out(o.cm_out);
        write_confusion_csv(out, cm);
    }
    if (!o.results_out.empty()) {
        auto out = open_out(o.results_out);
        out << table;
    }
}

void run_predict(const PredictOpt& o) {
    PhoneticLibrary lib = load_lib(o.library);
    AnyModel model = load_any_model_file(o.model);

    std::vector<std::string> words;
    std::vector<std::string> raw_kept;
    for (std::string line; std::getline(std::cin, line);) {
        if (line.empty()) continue;
        NormalizeResult norm = normalize_word(line);
        if (!norm) {
            std::cerr << "skipping '" << line << "': "
                      << (norm.reject == RejectReason::NonAlpha ? "non-alphabetic" : "too short")
                      << '\n';
            continue;
        }
        words.push_back(*norm.word);
        raw_kept.push_back(line);
    }
    if (words.empty()) throw LidError(ErrorKind::NoInput, "no usable words on stdin");

    Predictions pred = predict_any(model, words, lib);
    char buf[32];
    for (std::size_t i = 0; i < words.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.6f", pred.scores[i]);
        std::cout << raw_kept[i] << '\t' << lang_name(pred.labels[i]) << '\t' << buf << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Word-level language identification for romanized Bengali-English text"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI file");
    std::string record_path;
    app.add_option("--record-run", record_path,
                   "Write the effective options of this run to a file");

    SynthOpt synth_opt;
    auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic corpus manifest");
    synth->add_option("--seed", synth_opt.seed, "RNG seed");
    synth->add_option("--per-label", synth_opt.per_label, "Words per language");
    synth->add_option("--train", synth_opt.train, "Train words per language");
    synth->add_option("--dev", synth_opt.dev, "Dev words per language");
    synth->add_option("--test", synth_opt.test, "Test words per language");
    synth->add_option("--out", synth_opt.out, "Manifest path")->required();

    IngestOpt ingest_opt;
    auto* ingest = app.add_subcommand("ingest", "Normalize wordlists and write a split manifest");
    ingest->add_option("--bn", ingest_opt.bn, "Bengali wordlist, one word per line")->required();
    ingest->add_option("--en", ingest_opt.en, "English wordlist")->required();
    ingest->add_option("--seed", ingest_opt.seed, "Shuffle seed");
    ingest->add_option("--train", ingest_opt.train, "Train words per language")->required();
    ingest->add_option("--dev", ingest_opt.dev, "Dev words per language")->required();
    ingest->add_option("--test", ingest_opt.test, "Test words per language")->required();
    ingest->add_option("--out", ingest_opt.out, "Manifest path")->required();

    EncodeOpt encode_opt;
    auto* encode = app.add_subcommand("encode", "Show encodings of words");
    encode->add_option("--scheme", encode_opt.scheme, "char or phonetic");
    encode->add_option("--library", encode_opt.library, "Phonetic library file");
    encode->add_option("--word", encode_opt.word, "Single word to encode");
    encode->add_option("--input", encode_opt.input, "File with one word per line");
    encode->add_flag("--trace", encode_opt.trace, "Show matched windows (phonetic)");
    encode->add_flag("--pad", encode_opt.pad, "Show the padded 15-step row");

    StatsOpt stats_opt;
    auto* stats = app.add_subcommand("stats", "Root-phone frequency profile of a manifest");
    stats->add_option("--manifest", stats_opt.manifest, "Split manifest")->required();
    stats->add_option("--split", stats_opt.split, "train, dev, test, unused or all");
    stats->add_option("--library", stats_opt.library, "Phonetic library file");
    stats->add_option("--out", stats_opt.out, "CSV path (stdout when omitted)");

    TrainOpt train_opt;
    auto* train_cmd = app.add_subcommand("train", "Train a model on the train split");
    train_cmd->add_option("--model", train_opt.model, "lstm or svm");
    train_cmd->add_option("--manifest", train_opt.manifest, "Split manifest")->required();
    train_cmd->add_option("--scheme", train_opt.scheme, "char or phonetic (lstm)");
    train_cmd->add_option("--library", train_opt.library, "Phonetic library file");
    train_cmd->add_option("--seed", train_opt.seed, "Init/shuffle seed");
    train_cmd->add_option("--epochs", train_opt.epochs, "Epochs (default 500 lstm, 50 svm)");
    train_cmd->add_option("--batch", train_opt.batch, "Batch size (default: full train split)");
    train_cmd->add_option("--lr", train_opt.lr, "Adam learning rate");
    train_cmd->add_option("--hidden1", train_opt.hidden1, "First LSTM layer width");
    train_cmd->add_option("--hidden2", train_opt.hidden2, "Second LSTM layer width");
    train_cmd->add_option("--lambda", train_opt.lambda, "SVM regularization");
    train_cmd->add_option("--loss-out", train_opt.loss_out, "Per-epoch loss CSV");
    train_cmd->add_option("--out", train_opt.out, "Model path")->required();

    TuneOpt tune_opt;
    auto* tune = app.add_subcommand("tune", "Fit a decision threshold for a trained network");
    tune->add_option("--model", tune_opt.model, "LSTM model file")->required();
    tune->add_option("--manifest", tune_opt.manifest, "Split manifest")->required();
    tune->add_option("--split", tune_opt.split, "Split to tune on");
    tune->add_option("--library", tune_opt.library, "Phonetic library file");
    tune->add_option("--out", tune_opt.out, "Tuned model path")->required();

    EnsembleOpt ens_opt;
    auto* ens = app.add_subcommand("ensemble", "Combine a char and a phonetic network");
    ens->add_option("--char", ens_opt.char_path, "Char-scheme model file")->required();
    ens->add_option("--phonetic", ens_opt.phonetic_path, "Phonetic-scheme model file")->required();
    ens->add_option("--manifest", ens_opt.manifest, "Split manifest")->required();
    ens->add_option("--method", ens_opt.method, "stack or mean-threshold");
    ens->add_option("--split", ens_opt.split, "Split the combiner is fitted on");
    ens->add_option("--library", ens_opt.library, "Phonetic library file");
    ens->add_option("--stack-lr", ens_opt.stack_lr, "Stacker learning rate");
    ens->add_option("--stack-epochs", ens_opt.stack_epochs, "Stacker epochs");
    ens->add_option("--seed", ens_opt.seed, "Stacker init seed");
    ens->add_option("--out", ens_opt.out, "Ensemble model path")->required();

    EvaluateOpt eval_opt;
    auto* eval = app.add_subcommand("evaluate", "Score a model on a split, or metrics from --cm");
    eval->add_option("--model", eval_opt.model, "Model file");
    eval->add_option("--manifest", eval_opt.manifest, "Split manifest");
    eval->add_option("--split", eval_opt.split, "Split to evaluate");
    eval->add_option("--library", eval_opt.library, "Phonetic library file");
    eval->add_option("--cm", eval_opt.cm, "Confusion counts bn_bn,bn_en,en_bn,en_en");
    eval->add_option("--positive-class", eval_opt.positive, "EN or BN");
    eval->add_option("--name", eval_opt.name, "Row name in the results table");
    eval->add_option("--scatter", eval_opt.scatter, "Write index,score,label CSV");
    eval->add_option("--cm-out", eval_opt.cm_out, "Write the confusion matrix CSV");
    eval->add_option("--results-out", eval_opt.results_out, "Write the results table");

    PredictOpt pred_opt;
    auto* pred = app.add_subcommand("predict", "Label words from stdin as word<TAB>label<TAB>score");
    pred->add_option("--model", pred_opt.model, "Model file")->required();
    pred->add_option("--library", pred_opt.library, "Phonetic library file");

    try {
        app.parse(argc, argv);
        if (!record_path.empty()) {
            auto out = open_out(record_path);
            out << app.config_to_str(true, true);
        }
        if (*synth) run_synth(synth_opt);
        if (*ingest) run_ingest(ingest_opt);
        if (*encode) run_encode(encode_opt);
        if (*stats) run_stats(stats_opt);
        if (*train_cmd) run_train(train_opt);
        if (*tune) run_tune(tune_opt);
        if (*ens) run_ensemble(ens_opt);
        if (*eval) run_evaluate(eval_opt);
        if (*pred) run_predict(pred_opt);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(ErrorKind::Usage);
    } catch (const LidError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 70;
    }
    return 0;
}
