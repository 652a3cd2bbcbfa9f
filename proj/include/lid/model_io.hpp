#ifndef LID_MODEL_IO_HPP
#define LID_MODEL_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "lid/baseline.hpp"
#include "lid/decision.hpp"
#include "lid/neural.hpp"

namespace lid {

// Model files are JSON. Keys are emitted sorted and doubles round-trip
// exactly, so saving the same model twice yields identical bytes.

struct LstmModelFile {
    LstmNetwork net;
    std::optional<ThresholdRule> decision; // tuned threshold, if any
};

struct EnsembleModelFile {
    std::string method; // "stack" or "mean-threshold"
    LstmModelFile char_model;
    LstmModelFile phonetic_model;
    StackerModel stacker;    // used when method == "stack"
    ThresholdRule threshold; // used when method == "mean-threshold"
};

void save_lstm(std::ostream& out, const LstmModelFile& model);
void save_lstm_file(const std::string& path, const LstmModelFile& model);
LstmModelFile load_lstm(std::istream& in);
LstmModelFile load_lstm_file(const std::string& path);

void save_svm(std::ostream& out, const SvmModel& model);
void save_svm_file(const std::string& path, const SvmModel& model);
SvmModel load_svm(std::istream& in);
SvmModel load_svm_file(const std::string& path);

void save_ensemble(std::ostream& out, const EnsembleModelFile& model);
void save_ensemble_file(const std::string& path, const EnsembleModelFile& model);
EnsembleModelFile load_ensemble(std::istream& in);
EnsembleModelFile load_ensemble_file(const std::string& path);

using AnyModel = std::variant<LstmModelFile, SvmModel, EnsembleModelFile>;

// Dispatches on the "kind" field.
AnyModel load_any_model(std::istream& in);
AnyModel load_any_model_file(const std::string& path);

} // namespace lid

#endif
