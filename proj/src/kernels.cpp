#include "lid/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "lid/error.hpp"
#include "lid/phonelib.hpp"
#include "lstm_detail.hpp"

namespace lid {

namespace {

// Exceptions must not escape a parallel region, so every input is checked
// before the loops start.
void prevalidate(const NetworkConfig& cfg, const std::vector<PaddedTensor>& inputs) {
    for (const PaddedTensor& in : inputs) detail::check_input(cfg, in);
}

std::vector<double> scores_impl(const LstmNetwork& net, const std::vector<PaddedTensor>& inputs,
                                bool parallel) {
    prevalidate(net.config(), inputs);
    std::vector<double> out(inputs.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(inputs.size());
#pragma omp parallel if (parallel)
    {
        detail::SampleCache cache;
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            out[static_cast<std::size_t>(i)] =
                detail::forward_sample(net, inputs[static_cast<std::size_t>(i)], cache);
    }
    return out;
}

void check_finite(const ParamLayout& layout, const std::vector<double>& grads,
                  double mean_loss) {
    if (!std::isfinite(mean_loss))
        throw LidError(ErrorKind::Numeric, "non-finite loss over gradient batch");
    for (const ParamLayout::Segment& seg : layout.segments()) {
        std::size_t len = seg.rows > 0
                              ? static_cast<std::size_t>(seg.rows) * static_cast<std::size_t>(seg.cols)
                              : static_cast<std::size_t>(seg.cols);
        for (std::size_t i = 0; i < len; ++i)
            if (!std::isfinite(grads[seg.offset + i]))
                throw LidError(ErrorKind::Numeric,
                               "non-finite gradient in " + seg.group + "." + seg.field);
    }
}

double gradients_impl(const LstmNetwork& net, const std::vector<Sample>& data,
                      std::span<const int> idx, std::vector<double>& grads, bool parallel) {
    if (idx.empty()) throw LidError(ErrorKind::NoInput, "empty gradient batch");
    for (int i : idx) {
        if (i < 0 || static_cast<std::size_t>(i) >= data.size())
            throw LidError(ErrorKind::Usage, "batch index out of range");
        detail::check_input(net.config(), data[static_cast<std::size_t>(i)].input);
    }

    const std::size_t total = net.layout().total;
    const std::size_t count = idx.size();
    const std::size_t nblocks = (count + kGradBlockSize - 1) / kGradBlockSize;

    // Fixed blocks of consecutive samples; each block accumulates into its
    // own buffer, and the buffers are folded together in block order below.
    // The summation tree is therefore the same for any thread count.
    std::vector<std::vector<double>> block_grads(nblocks);
    std::vector<double> block_loss(nblocks, 0.0);

#pragma omp parallel if (parallel)
    {
        detail::SampleCache cache;
        detail::BackwardScratch scratch;
        scratch.resize(net.layout(), net.config().seq_len);
#pragma omp for schedule(static)
        for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b) {
            std::vector<double>& buf = block_grads[static_cast<std::size_t>(b)];
            buf.assign(total, 0.0);
            double loss = 0.0;
            const std::size_t lo = static_cast<std::size_t>(b) * kGradBlockSize;
            const std::size_t hi = std::min(lo + kGradBlockSize, count);
            for (std::size_t s = lo; s < hi; ++s)
                loss += detail::backward_sample(net, data[static_cast<std::size_t>(idx[s])],
                                                cache, scratch, buf.data());
            block_loss[static_cast<std::size_t>(b)] = loss;
        }
    }

    grads.assign(total, 0.0);
    double loss_sum = 0.0;
    for (std::size_t b = 0; b < nblocks; ++b) {
        const std::vector<double>& buf = block_grads[b];
        for (std::size_t i = 0; i < total; ++i) grads[i] += buf[i];
        loss_sum += block_loss[b];
    }

    const double inv = 1.0 / static_cast<double>(count);
    for (double& g : grads) g *= inv;
    double mean_loss = loss_sum * inv;

    check_finite(net.layout(), grads, mean_loss);
    return mean_loss;
}

std::vector<EncodedWord> encode_impl(const std::vector<std::string>& words,
                                     const PhoneticLibrary& lib, bool parallel) {
    for (const std::string& w : words) {
        if (w.empty())
            throw LidError(ErrorKind::Data, "cannot encode an empty word");
        for (char c : w)
            if (c < 'a' || c > 'z')
                throw LidError(ErrorKind::Data, "word '" + w + "' contains characters outside a-z");
    }
    std::vector<EncodedWord> out(words.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(words.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = encode_phonetic(words[static_cast<std::size_t>(i)], lib);
    return out;
}

} // namespace

std::vector<double> batch_scores_serial(const LstmNetwork& net,
                                        const std::vector<PaddedTensor>& inputs) {
    return scores_impl(net, inputs, false);
}

std::vector<double> batch_scores(const LstmNetwork& net, const std::vector<PaddedTensor>& inputs) {
    return scores_impl(net, inputs, true);
}

double batch_gradients_serial(const LstmNetwork& net, const std::vector<Sample>& data,
                              std::span<const int> idx, std::vector<double>& grads) {
    return gradients_impl(net, data, idx, grads, false);
}

double batch_gradients(const LstmNetwork& net, const std::vector<Sample>& data,
                       std::span<const int> idx, std::vector<double>& grads) {
    return gradients_impl(net, data, idx, grads, true);
}

std::vector<EncodedWord> encode_corpus_serial(const std::vector<std::string>& words,
                                              const PhoneticLibrary& lib) {
    return encode_impl(words, lib, false);
}

std::vector<EncodedWord> encode_corpus(const std::vector<std::string>& words,
                                       const PhoneticLibrary& lib) {
    return encode_impl(words, lib, true);
}

} // namespace lid
