#include "lid/metrics.hpp"

#include <cstdio>
#include <ostream>

#include "lid/error.hpp"

namespace lid {

ConfusionMatrix confusion(const std::vector<Lang>& predictions,
                          const std::vector<Lang>& truths) {
    if (predictions.size() != truths.size())
        throw LidError(ErrorKind::Usage, "predictions and truths differ in length");
    if (predictions.empty())
        throw LidError(ErrorKind::Usage, "cannot build a confusion matrix from no samples");

    ConfusionMatrix cm;
    for (std::size_t i = 0; i < truths.size(); ++i) {
        if (truths[i] == Lang::BN)
            (predictions[i] == Lang::BN ? cm.bn_bn : cm.bn_en) += 1;
        else
            (predictions[i] == Lang::BN ? cm.en_bn : cm.en_en) += 1;
    }
    return cm;
}

namespace {

double ratio(long num, long den) {
    return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) {
    return (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

} // namespace

MetricsReport compute_metrics(const ConfusionMatrix& cm, Lang positive) {
    if (cm.total() <= 0)
        throw LidError(ErrorKind::Usage, "empty confusion matrix");

    long tp, fp, fn;
    if (positive == Lang::EN) {
        tp = cm.en_en;
        fp = cm.bn_en;
        fn = cm.en_bn;
    } else {
        tp = cm.bn_bn;
        fp = cm.en_bn;
        fn = cm.bn_en;
    }

    MetricsReport report;
    report.accuracy = ratio(cm.bn_bn + cm.en_en, cm.total());
    report.precision = ratio(tp, tp + fp);
    report.recall = ratio(tp, tp + fn);
    report.f1 = harmonic(report.precision, report.recall);

    double f1_en = harmonic(ratio(cm.en_en, cm.en_en + cm.bn_en),
                            ratio(cm.en_en, cm.en_en + cm.en_bn));
    double f1_bn = harmonic(ratio(cm.bn_bn, cm.bn_bn + cm.en_bn),
                            ratio(cm.bn_bn, cm.bn_bn + cm.bn_en));
    report.macro_f1 = (f1_en + f1_bn) / 2.0;
    return report;
}

void export_scatter(std::ostream& out, const std::vector<double>& scores,
                    const std::vector<Lang>& labels) {
    if (scores.size() != labels.size())
        throw LidError(ErrorKind::Usage, "scores and labels differ in length");
    out << "index,score,label\n";
    char buf[32];
    for (std::size_t i = 0; i < scores.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.9f", scores[i]);
        out << i << ',' << buf << ',' << lang_name(labels[i]) << '\n';
    }
}

std::string results_table(const std::vector<std::pair<std::string, MetricsReport>>& rows) {
    std::size_t name_width = 5; // "Model"
    for (const auto& [name, report] : rows)
        name_width = std::max(name_width, name.size());

    std::string out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-*s | %6s | %6s | %6s | %6s | %7s\n",
                  static_cast<int>(name_width), "Model", "Acc", "Prec", "Rec", "F1",
                  "MacroF1");
    out += buf;
    for (const auto& [name, r] : rows) {
        std::snprintf(buf, sizeof buf, "%-*s | %6.2f | %6.2f | %6.2f | %6.2f | %7.2f\n",
                      static_cast<int>(name_width), name.c_str(), r.accuracy, r.precision,
                      r.recall, r.f1, r.macro_f1);
        out += buf;
    }
    return out;
}

void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm) {
    out << "truth,pred_BN,pred_EN\n";
    out << "BN," << cm.bn_bn << ',' << cm.bn_en << '\n';
    out << "EN," << cm.en_bn << ',' << cm.en_en << '\n';
}

} // namespace lid
