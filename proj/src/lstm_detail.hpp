// Internal LSTM cell machinery shared by neural.cpp and kernels.cpp.
// Standard gate structure: i,f,o = sigmoid, cell candidate = tanh,
// c = f*c_prev + i*g, h = o*tanh(c); states start at zero.
#ifndef LID_SRC_LSTM_DETAIL_HPP
#define LID_SRC_LSTM_DETAIL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "lid/error.hpp"
#include "lid/neural.hpp"

namespace lid::detail {

inline double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

// Keeps the reported fuzzy value strictly inside (0,1) even when the
// sigmoid saturates in double precision.
inline double clamp_score(double s) {
    const double lo = 1e-12, hi = 1.0 - 1e-12;
    return s < lo ? lo : (s > hi ? hi : s);
}

struct LayerCache {
    // [seq_len x hidden] row-major by timestep; gates hold post-activation
    // values after the forward pass.
    std::vector<double> gi, gf, go, gg, c, tanh_c, h;

    void resize(int seq_len, int hidden) {
        std::size_t n = static_cast<std::size_t>(seq_len) * hidden;
        gi.resize(n);
        gf.resize(n);
        go.resize(n);
        gg.resize(n);
        c.resize(n);
        tanh_c.resize(n);
        h.resize(n);
    }
};

struct SampleCache {
    LayerCache layer[2];
};

struct BackwardScratch {
    std::vector<double> dh, dzi, dzf, dzo, dzg, dh_next, dc_next, dh_final, dx_seq;

    void resize(const ParamLayout& layout, int seq_len) {
        int h_max = std::max(layout.layer[0].hidden, layout.layer[1].hidden);
        dh.resize(h_max);
        dzi.resize(h_max);
        dzf.resize(h_max);
        dzo.resize(h_max);
        dzg.resize(h_max);
        dh_next.resize(h_max);
        dc_next.resize(h_max);
        dh_final.resize(layout.layer[1].hidden);
        dx_seq.resize(static_cast<std::size_t>(seq_len) * layout.layer[1].input);
    }
};

// One layer forward over the whole sequence. Exactly one of `active`
// (one-hot column per timestep, 0 = pad row) and `xseq` (dense
// [seq_len x input] rows) is non-null.
inline void layer_forward(const double* params, const ParamLayout::Layer& L, int seq_len,
                          const int* active, const double* xseq, LayerCache& cache) {
    const int h = L.hidden;
    const int in = L.input;
    cache.resize(seq_len, h);

    for (int t = 0; t < seq_len; ++t) {
        double* rows[4] = {&cache.gi[static_cast<std::size_t>(t) * h],
                           &cache.gf[static_cast<std::size_t>(t) * h],
                           &cache.go[static_cast<std::size_t>(t) * h],
                           &cache.gg[static_cast<std::size_t>(t) * h]};
        const double* h_prev = t > 0 ? &cache.h[static_cast<std::size_t>(t - 1) * h] : nullptr;
        const double* c_prev = t > 0 ? &cache.c[static_cast<std::size_t>(t - 1) * h] : nullptr;

        for (int gate = 0; gate < 4; ++gate) {
            const double* w = params + L.w[gate];
            const double* u = params + L.u[gate];
            const double* bias = params + L.b[gate];
            double* z = rows[gate];
            for (int j = 0; j < h; ++j) {
                double acc = bias[j];
                if (active) {
                    if (active[t] > 0) acc += w[static_cast<std::size_t>(j) * in + active[t]];
                } else {
                    const double* wrow = w + static_cast<std::size_t>(j) * in;
                    const double* x = xseq + static_cast<std::size_t>(t) * in;
                    for (int k = 0; k < in; ++k) acc += wrow[k] * x[k];
                }
                if (h_prev) {
                    const double* urow = u + static_cast<std::size_t>(j) * h;
                    for (int k = 0; k < h; ++k) acc += urow[k] * h_prev[k];
                }
                z[j] = acc;
            }
        }

        double* ct = &cache.c[static_cast<std::size_t>(t) * h];
        double* tct = &cache.tanh_c[static_cast<std::size_t>(t) * h];
        double* ht = &cache.h[static_cast<std::size_t>(t) * h];
        for (int j = 0; j < h; ++j) {
            double gi = sigmoid(rows[0][j]);
            double gf = sigmoid(rows[1][j]);
            double go = sigmoid(rows[2][j]);
            double gg = std::tanh(rows[3][j]);
            double c = (c_prev ? gf * c_prev[j] : 0.0) + gi * gg;
            rows[0][j] = gi;
            rows[1][j] = gf;
            rows[2][j] = go;
            rows[3][j] = gg;
            ct[j] = c;
            tct[j] = std::tanh(c);
            ht[j] = go * tct[j];
        }
    }
}

inline void check_input(const NetworkConfig& cfg, const PaddedTensor& input) {
    if (input.scheme != cfg.scheme)
        throw LidError(ErrorKind::Mismatch,
                       std::string("scheme mismatch: model is ") +
                           std::string(scheme_name(cfg.scheme)) + ", input is " +
                           std::string(scheme_name(input.scheme)));
    if (input.seq_len != cfg.seq_len || input.vocab_dim != cfg.vocab_dim ||
        static_cast<int>(input.active.size()) != cfg.seq_len)
        throw LidError(ErrorKind::Mismatch, "input tensor shape does not match the network");
    for (int a : input.active)
        if (a < 0 || a >= cfg.vocab_dim)
            throw LidError(ErrorKind::Mismatch, "one-hot index outside the vocabulary");
}

// Forward pass for one sample; fills the cache and returns the fuzzy score.
inline double forward_sample(const LstmNetwork& net, const PaddedTensor& input,
                             SampleCache& cache) {
    const NetworkConfig& cfg = net.config();
    check_input(cfg, input);
    const ParamLayout& layout = net.layout();
    const double* params = net.params().data();
    const int seq_len = cfg.seq_len;

    layer_forward(params, layout.layer[0], seq_len, input.active.data(), nullptr,
                  cache.layer[0]);
    layer_forward(params, layout.layer[1], seq_len, nullptr, cache.layer[0].h.data(),
                  cache.layer[1]);

    const int h2 = layout.layer[1].hidden;
    const double* h_final = &cache.layer[1].h[static_cast<std::size_t>(seq_len - 1) * h2];
    double z = params[layout.head_b];
    const double* head_w = params + layout.head_w;
    for (int j = 0; j < h2; ++j) z += head_w[j] * h_final[j];
    return clamp_score(sigmoid(z));
}

// BPTT over one layer. `dh_ext` (optional, [seq_len x hidden]) carries the
// per-timestep gradient from the consumer above; `dh_final` (optional,
// [hidden]) is an extra contribution at the last timestep. Parameter
// gradients accumulate into `grad` (full layout buffer); `dx_seq`
// (optional, [seq_len x input]) is overwritten with the gradient w.r.t.
// this layer's inputs.
inline void backward_layer(const double* params, const ParamLayout::Layer& L, int seq_len,
                           const int* active, const double* xseq, const LayerCache& cache,
                           const double* dh_ext, const double* dh_final, double* grad,
                           double* dx_seq, BackwardScratch& s) {
    const int h = L.hidden;
    const int in = L.input;

    std::fill_n(s.dh_next.begin(), h, 0.0);
    std::fill_n(s.dc_next.begin(), h, 0.0);
    if (dx_seq) std::fill_n(dx_seq, static_cast<std::size_t>(seq_len) * in, 0.0);

    for (int t = seq_len - 1; t >= 0; --t) {
        const std::size_t row = static_cast<std::size_t>(t) * h;
        const double* gi = &cache.gi[row];
        const double* gf = &cache.gf[row];
        const double* go = &cache.go[row];
        const double* gg = &cache.gg[row];
        const double* tct = &cache.tanh_c[row];
        const double* c_prev = t > 0 ? &cache.c[row - h] : nullptr;
        const double* h_prev = t > 0 ? &cache.h[row - h] : nullptr;

        for (int j = 0; j < h; ++j) {
            double dh = s.dh_next[j];
            if (dh_ext) dh += dh_ext[row + j];
            if (dh_final && t == seq_len - 1) dh += dh_final[j];
            double dzo = dh * tct[j] * go[j] * (1.0 - go[j]);
            double dc = dh * go[j] * (1.0 - tct[j] * tct[j]) + s.dc_next[j];
            double dzf = c_prev ? dc * c_prev[j] * gf[j] * (1.0 - gf[j]) : 0.0;
            double dzi = dc * gg[j] * gi[j] * (1.0 - gi[j]);
            double dzg = dc * gi[j] * (1.0 - gg[j] * gg[j]);
            s.dzi[j] = dzi;
            s.dzf[j] = dzf;
            s.dzo[j] = dzo;
            s.dzg[j] = dzg;
            s.dc_next[j] = dc * gf[j];
        }

        std::fill_n(s.dh_next.begin(), h, 0.0);
        const double* dz_rows[4] = {s.dzi.data(), s.dzf.data(), s.dzo.data(), s.dzg.data()};
        for (int gate = 0; gate < 4; ++gate) {
            const double* dz = dz_rows[gate];
            const double* w = params + L.w[gate];
            const double* u = params + L.u[gate];
            double* dw = grad + L.w[gate];
            double* du = grad + L.u[gate];
            double* db = grad + L.b[gate];
            for (int j = 0; j < h; ++j) {
                const double d = dz[j];
                db[j] += d;
                if (active) {
                    if (active[t] > 0) dw[static_cast<std::size_t>(j) * in + active[t]] += d;
                } else {
                    const double* x = xseq + static_cast<std::size_t>(t) * in;
                    double* dwrow = dw + static_cast<std::size_t>(j) * in;
                    for (int k = 0; k < in; ++k) dwrow[k] += d * x[k];
                }
                if (h_prev) {
                    double* durow = du + static_cast<std::size_t>(j) * h;
                    for (int k = 0; k < h; ++k) durow[k] += d * h_prev[k];
                }
                const double* urow = u + static_cast<std::size_t>(j) * h;
                for (int k = 0; k < h; ++k) s.dh_next[k] += urow[k] * d;
                if (dx_seq) {
                    const double* wrow = w + static_cast<std::size_t>(j) * in;
                    double* dx = dx_seq + static_cast<std::size_t>(t) * in;
                    for (int k = 0; k < in; ++k) dx[k] += wrow[k] * d;
                }
            }
        }
    }
}

// Forward + BPTT for one sample; parameter gradients accumulate into
// `grad`. Returns the sample's BCE loss.
inline double backward_sample(const LstmNetwork& net, const Sample& sample, SampleCache& cache,
                              BackwardScratch& scratch, double* grad) {
    const NetworkConfig& cfg = net.config();
    const ParamLayout& layout = net.layout();
    const double* params = net.params().data();
    const int seq_len = cfg.seq_len;
    const int h2 = layout.layer[1].hidden;

    double score = forward_sample(net, sample.input, cache);
    double delta = score - sample.target; // d(BCE)/d(head preactivation)

    const double* h_final = &cache.layer[1].h[static_cast<std::size_t>(seq_len - 1) * h2];
    grad[layout.head_b] += delta;
    for (int j = 0; j < h2; ++j) {
        grad[layout.head_w + j] += delta * h_final[j];
        scratch.dh_final[j] = delta * params[layout.head_w + j];
    }

    backward_layer(params, layout.layer[1], seq_len, nullptr, cache.layer[0].h.data(),
                   cache.layer[1], nullptr, scratch.dh_final.data(), grad,
                   scratch.dx_seq.data(), scratch);
    backward_layer(params, layout.layer[0], seq_len, sample.input.active.data(), nullptr,
                   cache.layer[0], scratch.dx_seq.data(), nullptr, grad, nullptr, scratch);

    return bce_loss(score, sample.target);
}

} // namespace lid::detail

#endif
