// Times the OpenMP batch kernels against their serial references and
// verifies the outputs are bit-identical.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <numeric>
#include <string>
#include <vector>

#include "lid/corpus.hpp"
#include "lid/encoder.hpp"
#include "lid/kernels.hpp"
#include "lid/neural.hpp"
#include "lid/phonelib.hpp"
#include "lid/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace lid;

namespace {

template <typename F> double best_ms(int repeats, F&& f) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

void report(const char* name, double serial_ms, double omp_ms, bool equal) {
    std::printf("%-16s %10.2f ms %10.2f ms %8.2fx   %s\n", name, serial_ms, omp_ms,
                serial_ms / omp_ms, equal ? "bitwise equal" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    std::size_t per_label = 2000;
    int repeats = 3;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--words" && i + 1 < argc) per_label = std::stoul(argv[++i]);
        else if (arg == "--repeat" && i + 1 < argc) repeats = std::stoi(argv[++i]);
        else {
            std::fprintf(stderr, "usage: %s [--words N] [--repeat R]\n", argv[0]);
            return 64;
        }
    }

#ifdef _OPENMP
    std::printf("openmp: %d thread(s)\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled at build time\n");
#endif

    PhoneticLibrary lib = default_library();
    std::vector<LabeledWord> corpus = generate_synthetic(9, per_label);
    std::vector<std::string> words;
    words.reserve(corpus.size());
    for (const LabeledWord& w : corpus) words.push_back(w.word);
    std::printf("corpus: %zu words\n\n", words.size());
    std::printf("%-16s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    {
        auto serial = encode_corpus_serial(words, lib);
        auto parallel = encode_corpus(words, lib);
        bool equal = serial.size() == parallel.size();
        for (std::size_t i = 0; equal && i < serial.size(); ++i)
            equal = serial[i].indices == parallel[i].indices;
        double s = best_ms(repeats, [&] { encode_corpus_serial(words, lib); });
        double p = best_ms(repeats, [&] { encode_corpus(words, lib); });
        report("encode_corpus", s, p, equal);
    }

    NetworkConfig cfg = NetworkConfig::for_scheme(Scheme::Char, 1);
    LstmNetwork net(cfg);
    Rng rng(1);
    net.init_params(rng);

    std::vector<PaddedTensor> tensors;
    std::vector<Sample> samples;
    tensors.reserve(words.size());
    for (const std::string& w : words) tensors.push_back(pad_and_onehot(encode_char(w)));
    for (std::size_t i = 0; i < words.size(); ++i)
        samples.push_back({tensors[i], corpus[i].label == Lang::EN ? 1.0 : 0.0});
    std::vector<int> idx(samples.size());
    std::iota(idx.begin(), idx.end(), 0);

    {
        auto serial = batch_scores_serial(net, tensors);
        auto parallel = batch_scores(net, tensors);
        double s = best_ms(repeats, [&] { batch_scores_serial(net, tensors); });
        double p = best_ms(repeats, [&] { batch_scores(net, tensors); });
        report("batch_scores", s, p, same_bits(serial, parallel));
    }

    {
        std::vector<double> g_serial, g_parallel;
        double l_serial = batch_gradients_serial(net, samples, idx, g_serial);
        double l_parallel = batch_gradients(net, samples, idx, g_parallel);
        bool equal = same_bits(g_serial, g_parallel) &&
                     std::memcmp(&l_serial, &l_parallel, sizeof(double)) == 0;
        std::vector<double> scratch;
        double s = best_ms(repeats, [&] { batch_gradients_serial(net, samples, idx, scratch); });
        double p = best_ms(repeats, [&] { batch_gradients(net, samples, idx, scratch); });
        report("batch_gradients", s, p, equal);
    }

    return 0;
}
