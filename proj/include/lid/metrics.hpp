#ifndef LID_METRICS_HPP
#define LID_METRICS_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lid/corpus.hpp"

namespace lid {

// Counts indexed by (true label, predicted label).
struct ConfusionMatrix {
    long bn_bn = 0; // true BN, predicted BN
    long bn_en = 0; // true BN, predicted EN
    long en_bn = 0; // true EN, predicted BN
    long en_en = 0; // true EN, predicted EN

    long total() const { return bn_bn + bn_en + en_bn + en_en; }
};

ConfusionMatrix confusion(const std::vector<Lang>& predictions,
                          const std::vector<Lang>& truths);

// Percentages in [0, 100]. f1 is the harmonic mean of precision and recall
// for the stated positive class; macro_f1 averages both classes' F1.
// Zero denominators yield 0 rather than an error.
struct MetricsReport {
    double accuracy = 0;
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    double macro_f1 = 0;
};

MetricsReport compute_metrics(const ConfusionMatrix& cm, Lang positive);

// CSV `index,score,label`, order-preserving, scores at 9 decimal places.
void export_scatter(std::ostream& out, const std::vector<double>& scores,
                    const std::vector<Lang>& labels);

// Two-decimal percentage table: Model | Acc | Prec | Rec | F1 | MacroF1.
std::string results_table(const std::vector<std::pair<std::string, MetricsReport>>& rows);

void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm);

} // namespace lid

#endif
