#include "lid/model_io.hpp"

#include <fstream>
#include <ostream>

#include <json.hpp>

#include "lid/error.hpp"

namespace lid {

using nlohmann::json;

namespace {

const json& require(const json& j, const std::string& key) {
    auto it = j.find(key);
    if (it == j.end())
        throw LidError(ErrorKind::Data, "model file is missing field '" + key + "'");
    return *it;
}

void check_header(const json& j, const std::string& kind) {
    if (require(j, "format_version").get<int>() != 1)
        throw LidError(ErrorKind::Data, "unsupported model format version");
    std::string got = require(j, "kind").get<std::string>();
    if (got != kind)
        throw LidError(ErrorKind::Data, "expected a " + kind + " model, found '" + got + "'");
}

json lstm_to_json(const LstmModelFile& model) {
    const NetworkConfig& cfg = model.net.config();
    const std::vector<double>& params = model.net.params();

    json j;
    j["format_version"] = 1;
    j["kind"] = "lstm";
    j["config"] = {{"scheme", scheme_name(cfg.scheme)},
                   {"seq_len", cfg.seq_len},
                   {"vocab_dim", cfg.vocab_dim},
                   {"hidden", {cfg.hidden1, cfg.hidden2}},
                   {"epochs", cfg.epochs},
                   {"batch_size", cfg.batch_size},
                   {"learning_rate", cfg.learning_rate},
                   {"beta1", cfg.beta1},
                   {"beta2", cfg.beta2},
                   {"epsilon", cfg.epsilon},
                   {"seed", cfg.seed}};

    for (const ParamLayout::Segment& seg : model.net.layout().segments()) {
        if (seg.group == "head" && seg.field == "b") {
            j[seg.group][seg.field] = params[seg.offset];
        } else if (seg.rows == 0) {
            json flat = json::array();
            for (int i = 0; i < seg.cols; ++i) flat.push_back(params[seg.offset + i]);
            j[seg.group][seg.field] = std::move(flat);
        } else {
            json rows = json::array();
            for (int r = 0; r < seg.rows; ++r) {
                json row = json::array();
                for (int c = 0; c < seg.cols; ++c)
                    row.push_back(params[seg.offset + static_cast<std::size_t>(r) * seg.cols + c]);
                rows.push_back(std::move(row));
            }
            j[seg.group][seg.field] = std::move(rows);
        }
    }

    if (model.decision)
        j["decision"] = {{"method", "threshold"}, {"theta", model.decision->theta}};
    return j;
}

LstmModelFile lstm_from_json(const json& j) {
    check_header(j, "lstm");

    const json& c = require(j, "config");
    NetworkConfig cfg;
    cfg.scheme = scheme_from_name(require(c, "scheme").get<std::string>());
    cfg.seq_len = require(c, "seq_len").get<int>();
    cfg.vocab_dim = require(c, "vocab_dim").get<int>();
    const json& hidden = require(c, "hidden");
    if (!hidden.is_array() || hidden.size() != 2)
        throw LidError(ErrorKind::Data, "config.hidden must hold two layer sizes");
    cfg.hidden1 = hidden[0].get<int>();
    cfg.hidden2 = hidden[1].get<int>();
    cfg.epochs = require(c, "epochs").get<int>();
    cfg.batch_size = require(c, "batch_size").get<int>();
    cfg.learning_rate = require(c, "learning_rate").get<double>();
    cfg.beta1 = require(c, "beta1").get<double>();
    cfg.beta2 = require(c, "beta2").get<double>();
    cfg.epsilon = require(c, "epsilon").get<double>();
    cfg.seed = require(c, "seed").get<std::uint64_t>();

    LstmModelFile model;
    try {
        model.net = LstmNetwork(cfg);
    } catch (const LidError& e) {
        throw LidError(ErrorKind::Data,
                       std::string("invalid network configuration in model file: ") + e.what());
    }
    std::vector<double>& params = model.net.params();

    for (const ParamLayout::Segment& seg : model.net.layout().segments()) {
        const json& field = require(require(j, seg.group), seg.field);
        const std::string where = seg.group + "." + seg.field;
        if (seg.group == "head" && seg.field == "b") {
            params[seg.offset] = field.get<double>();
        } else if (seg.rows == 0) {
            if (!field.is_array() || static_cast<int>(field.size()) != seg.cols)
                throw LidError(ErrorKind::Data, where + " has the wrong length");
            for (int i = 0; i < seg.cols; ++i) params[seg.offset + i] = field[i].get<double>();
        } else {
            if (!field.is_array() || static_cast<int>(field.size()) != seg.rows)
                throw LidError(ErrorKind::Data, where + " has the wrong row count");
            for (int r = 0; r < seg.rows; ++r) {
                const json& row = field[r];
                if (!row.is_array() || static_cast<int>(row.size()) != seg.cols)
                    throw LidError(ErrorKind::Data, where + " has the wrong column count");
                for (int col = 0; col < seg.cols; ++col)
                    params[seg.offset + static_cast<std::size_t>(r) * seg.cols + col] =
                        row[col].get<double>();
            }
        }
    }

    if (j.contains("decision")) {
        const json& d = j["decision"];
        if (require(d, "method").get<std::string>() != "threshold")
            throw LidError(ErrorKind::Data, "unknown decision method in model file");
        model.decision = ThresholdRule{require(d, "theta").get<double>()};
    }
    return model;
}

json svm_to_json(const SvmModel& model) {
    json j;
    j["format_version"] = 1;
    j["kind"] = "svm";
    j["lambda"] = model.lambda;
    j["epochs"] = model.epochs;
    j["seed"] = model.seed;
    j["bias"] = model.bias;
    j["vocabulary"] = model.vocab.grams;
    j["weights"] = model.weights;
    return j;
}

SvmModel svm_from_json(const json& j) {
    check_header(j, "svm");
    SvmModel model;
    model.lambda = require(j, "lambda").get<double>();
    model.epochs = require(j, "epochs").get<int>();
    model.seed = require(j, "seed").get<std::uint64_t>();
    model.bias = require(j, "bias").get<double>();
    model.vocab.grams = require(j, "vocabulary").get<std::vector<std::string>>();
    model.weights = require(j, "weights").get<std::vector<double>>();
    if (model.weights.size() != model.vocab.grams.size())
        throw LidError(ErrorKind::Data, "weights and vocabulary sizes disagree");
    model.vocab.index.reserve(model.vocab.grams.size());
    for (std::size_t i = 0; i < model.vocab.grams.size(); ++i)
        model.vocab.index.emplace(model.vocab.grams[i], static_cast<int>(i));
    return model;
}

json ensemble_to_json(const EnsembleModelFile& model) {
    json j;
    j["format_version"] = 1;
    j["kind"] = "ensemble";
    j["method"] = model.method;
    j["char_model"] = lstm_to_json(model.char_model);
    j["phonetic_model"] = lstm_to_json(model.phonetic_model);
    if (model.method == "stack")
        j["combiner"] = {{"w1", model.stacker.w1}, {"w2", model.stacker.w2}, {"b", model.stacker.b}};
    else if (model.method == "mean-threshold")
        j["combiner"] = {{"theta", model.threshold.theta}};
    else
        throw LidError(ErrorKind::Usage, "unknown ensemble method '" + model.method + "'");
    return j;
}

EnsembleModelFile ensemble_from_json(const json& j) {
    check_header(j, "ensemble");
    EnsembleModelFile model;
    model.method = require(j, "method").get<std::string>();
    model.char_model = lstm_from_json(require(j, "char_model"));
    model.phonetic_model = lstm_from_json(require(j, "phonetic_model"));
    if (model.char_model.net.config().scheme != Scheme::Char ||
        model.phonetic_model.net.config().scheme != Scheme::Phonetic)
        throw LidError(ErrorKind::Data, "ensemble base models carry the wrong schemes");

    const json& combiner = require(j, "combiner");
    if (model.method == "stack") {
        model.stacker.w1 = require(combiner, "w1").get<double>();
        model.stacker.w2 = require(combiner, "w2").get<double>();
        model.stacker.b = require(combiner, "b").get<double>();
    } else if (model.method == "mean-threshold") {
        model.threshold.theta = require(combiner, "theta").get<double>();
    } else {
        throw LidError(ErrorKind::Data, "unknown ensemble method '" + model.method + "'");
    }
    return model;
}

json parse_stream(std::istream& in) {
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw LidError(ErrorKind::Data, std::string("model file is not valid JSON: ") + e.what());
    }
}

void dump_stream(std::ostream& out, const json& j) {
    out << j.dump(2) << '\n';
    if (!out) throw LidError(ErrorKind::Io, "failed to write model file");
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LidError(ErrorKind::NoInput, "cannot open '" + path + "'");
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw LidError(ErrorKind::Io, "cannot write '" + path + "'");
    return out;
}

// Field lookups and numeric conversions can throw from deep inside the
// json library; fold those into the data-error idiom.
template <typename F> auto guarded(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw LidError(ErrorKind::Data, std::string("malformed model file: ") + e.what());
    }
}

} // namespace

void save_lstm(std::ostream& out, const LstmModelFile& model) {
    dump_stream(out, lstm_to_json(model));
}

void save_lstm_file(const std::string& path, const LstmModelFile& model) {
    auto out = open_out(path);
    save_lstm(out, model);
}

LstmModelFile load_lstm(std::istream& in) {
    json j = parse_stream(in);
    return guarded([&] { return lstm_from_json(j); });
}

LstmModelFile load_lstm_file(const std::string& path) {
    auto in = open_in(path);
    return load_lstm(in);
}

void save_svm(std::ostream& out, const SvmModel& model) {
    dump_stream(out, svm_to_json(model));
}

void save_svm_file(const std::string& path, const SvmModel& model) {
    auto out = open_out(path);
    save_svm(out, model);
}

SvmModel load_svm(std::istream& in) {
    json j = parse_stream(in);
    return guarded([&] { return svm_from_json(j); });
}

SvmModel load_svm_file(const std::string& path) {
    auto in = open_in(path);
    return load_svm(in);
}

void save_ensemble(std::ostream& out, const EnsembleModelFile& model) {
    dump_stream(out, ensemble_to_json(model));
}

void save_ensemble_file(const std::string& path, const EnsembleModelFile& model) {
    auto out = open_out(path);
    save_ensemble(out, model);
}

EnsembleModelFile load_ensemble(std::istream& in) {
    json j = parse_stream(in);
    return guarded([&] { return ensemble_from_json(j); });
}

EnsembleModelFile load_ensemble_file(const std::string& path) {
    auto in = open_in(path);
    return load_ensemble(in);
}

AnyModel load_any_model(std::istream& in) {
    json j = parse_stream(in);
    return guarded([&]() -> AnyModel {
        std::string kind = require(j, "kind").get<std::string>();
        if (kind == "lstm") return lstm_from_json(j);
        if (kind == "svm") return svm_from_json(j);
        if (kind == "ensemble") return ensemble_from_json(j);
        throw LidError(ErrorKind::Data, "unknown model kind '" + kind + "'");
    });
}

AnyModel load_any_model_file(const std::string& path) {
    auto in = open_in(path);
    return load_any_model(in);
}

} // namespace lid
