#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lid/error.hpp"
#include "lid/metrics.hpp"

using namespace lid;

TEST_SUITE_BEGIN("metrics");

TEST_CASE("published confusion matrices reproduce their reported rows") {
    // (bn_bn, bn_en, en_bn, en_en) with EN as the positive class.
    struct Row {
        ConfusionMatrix cm;
        double acc, prec, rec;
    };
    const Row rows[] = {
        {{641, 59, 57, 643}, 91.71, 91.59, 91.85},
        {{644, 56, 78, 622}, 90.42, 91.74, 88.85},
        {{623, 77, 38, 662}, 91.78, 89.58, 94.57},
        {{667, 33, 74, 626}, 92.35, 94.99, 89.42},
    };
    for (const Row& row : rows) {
        CAPTURE(row.cm.bn_bn);
        MetricsReport r = compute_metrics(row.cm, Lang::EN);
        CHECK(std::fabs(r.accuracy - row.acc) <= 0.01);
        CHECK(std::fabs(r.precision - row.prec) <= 0.01);
        CHECK(std::fabs(r.recall - row.rec) <= 0.01);
    }
}

TEST_CASE("exact arithmetic on a hand-checked matrix") {
    ConfusionMatrix cm{641, 59, 57, 643};
    MetricsReport r = compute_metrics(cm, Lang::EN);
    CHECK(r.accuracy == doctest::Approx(100.0 * 1284 / 1400).epsilon(1e-12));
    CHECK(r.precision == doctest::Approx(100.0 * 643 / 702).epsilon(1e-12));
    CHECK(r.recall == doctest::Approx(100.0 * 643 / 700).epsilon(1e-12));

    double p = 100.0 * 643 / 702, q = 100.0 * 643 / 700;
    CHECK(r.f1 == doctest::Approx(2 * p * q / (p + q)).epsilon(1e-12));

    MetricsReport flipped = compute_metrics(cm, Lang::BN);
    CHECK(flipped.accuracy == r.accuracy);
    CHECK(flipped.precision == doctest::Approx(100.0 * 641 / 698).epsilon(1e-12));
    CHECK(flipped.recall == doctest::Approx(100.0 * 641 / 700).epsilon(1e-12));
    CHECK(flipped.macro_f1 == doctest::Approx(r.macro_f1).epsilon(1e-12));
}

TEST_CASE("degenerate matrices yield zeros, not NaNs") {
    // every prediction BN: no EN predictions at all
    ConfusionMatrix cm{10, 0, 5, 0};
    MetricsReport r = compute_metrics(cm, Lang::EN);
    CHECK(r.precision == 0.0);
    CHECK(r.recall == 0.0);
    CHECK(r.f1 == 0.0);
    CHECK(r.accuracy == doctest::Approx(100.0 * 10 / 15));
    CHECK(r.macro_f1 == r.macro_f1); // not NaN

    CHECK_THROWS_AS(compute_metrics(ConfusionMatrix{}, Lang::EN), LidError);
}

TEST_CASE("confusion counts land in the right cells") {
    std::vector<Lang> truth = {Lang::BN, Lang::BN, Lang::EN, Lang::EN, Lang::EN};
    std::vector<Lang> pred = {Lang::BN, Lang::EN, Lang::EN, Lang::BN, Lang::EN};
    ConfusionMatrix cm = confusion(pred, truth);
    CHECK(cm.bn_bn == 1);
    CHECK(cm.bn_en == 1);
    CHECK(cm.en_bn == 1);
    CHECK(cm.en_en == 2);
    CHECK(cm.total() == 5);

    CHECK_THROWS_AS(confusion({Lang::BN}, {}), LidError);
    CHECK_THROWS_AS(confusion({}, {}), LidError);
}

TEST_CASE("scatter export is one indexed row per score") {
    std::ostringstream out;
    export_scatter(out, {0.25, 0.75}, {Lang::BN, Lang::EN});
    CHECK(out.str() == "index,score,label\n0,0.250000000,BN\n1,0.750000000,EN\n");
}

TEST_CASE("results table lines up and rounds to two decimals") {
    MetricsReport r = compute_metrics(ConfusionMatrix{623, 77, 38, 662}, Lang::EN);
    std::string table = results_table({{"lstm-phonetic", r}});
    CHECK(table.find("Model") != std::string::npos);
    CHECK(table.find("MacroF1") != std::string::npos);
    CHECK(table.find("lstm-phonetic |  91.79 |  89.58 |  94.57") != std::string::npos);
}

TEST_CASE("confusion csv layout") {
    std::ostringstream out;
    write_confusion_csv(out, ConfusionMatrix{641, 59, 57, 643});
    CHECK(out.str() == "truth,pred_BN,pred_EN\nBN,641,59\nEN,57,643\n");
}

TEST_SUITE_END();
