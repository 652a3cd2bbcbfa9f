#include "lid/neural.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "lid/error.hpp"
#include "lid/kernels.hpp"
#include "lstm_detail.hpp"

namespace lid {

NetworkConfig NetworkConfig::for_scheme(Scheme scheme, std::uint64_t seed) {
    NetworkConfig cfg;
    cfg.scheme = scheme;
    cfg.vocab_dim = lid::vocab_dim(scheme);
    if (scheme == Scheme::Char) {
        cfg.hidden1 = 35;
        cfg.hidden2 = 25;
    } else {
        cfg.hidden1 = 15;
        cfg.hidden2 = 40;
    }
    cfg.seed = seed;
    return cfg;
}

namespace {

void validate_config(const NetworkConfig& cfg) {
    if (cfg.seq_len < 1 || cfg.vocab_dim < 2 || cfg.hidden1 < 1 || cfg.hidden2 < 1)
        throw LidError(ErrorKind::Usage, "network dimensions must be positive");
    if (cfg.epochs < 1 || cfg.batch_size < 1)
        throw LidError(ErrorKind::Usage, "epochs and batch size must be positive");
    if (!(cfg.learning_rate > 0.0))
        throw LidError(ErrorKind::Usage, "learning rate must be positive");
}

} // namespace

ParamLayout ParamLayout::make(const NetworkConfig& cfg) {
    validate_config(cfg);
    ParamLayout layout;
    layout.layer[0].input = cfg.vocab_dim;
    layout.layer[0].hidden = cfg.hidden1;
    layout.layer[1].input = cfg.hidden1;
    layout.layer[1].hidden = cfg.hidden2;

    std::size_t offset = 0;
    for (Layer& L : layout.layer) {
        for (int gate = 0; gate < 4; ++gate) {
            L.w[gate] = offset;
            offset += static_cast<std::size_t>(L.hidden) * L.input;
            L.u[gate] = offset;
            offset += static_cast<std::size_t>(L.hidden) * L.hidden;
            L.b[gate] = offset;
            offset += static_cast<std::size_t>(L.hidden);
        }
    }
    layout.head_w = offset;
    offset += static_cast<std::size_t>(cfg.hidden2);
    layout.head_b = offset;
    offset += 1;
    layout.total = offset;
    return layout;
}

std::vector<ParamLayout::Segment> ParamLayout::segments() const {
    static const char* const kGate[4] = {"i", "f", "o", "g"};
    std::vector<Segment> out;
    for (int l = 0; l < 2; ++l) {
        const Layer& L = layer[l];
        const std::string group = l == 0 ? "layer1" : "layer2";
        for (int gate = 0; gate < 4; ++gate) {
            out.push_back({group, std::string("w_") + kGate[gate], L.w[gate], L.hidden, L.input});
            out.push_back({group, std::string("u_") + kGate[gate], L.u[gate], L.hidden, L.hidden});
            out.push_back({group, std::string("b_") + kGate[gate], L.b[gate], 0, L.hidden});
        }
    }
    out.push_back({"head", "w", head_w, 0, layer[1].hidden});
    out.push_back({"head", "b", head_b, 0, 1});
    return out;
}

double forward(const LstmNetwork& net, const PaddedTensor& input) {
    detail::SampleCache cache;
    return detail::forward_sample(net, input, cache);
}

double bce_loss(double score, double target) {
    const double lo = 1e-7, hi = 1.0 - 1e-7;
    double s = score < lo ? lo : (score > hi ? hi : score);
    return -(target * std::log(s) + (1.0 - target) * std::log(1.0 - s));
}

void adam_step(LstmNetwork& net, const std::vector<double>& grads, AdamState& state) {
    std::vector<double>& p = net.params();
    if (grads.size() != p.size() || state.m.size() != p.size())
        throw LidError(ErrorKind::Usage, "optimizer state does not match the parameter count");
    const NetworkConfig& cfg = net.config();
    state.step += 1;
    state.beta1_pow *= cfg.beta1;
    state.beta2_pow *= cfg.beta2;
    for (std::size_t i = 0; i < p.size(); ++i) {
        state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * grads[i];
        state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * grads[i] * grads[i];
        double m_hat = state.m[i] / (1.0 - state.beta1_pow);
        double v_hat = state.v[i] / (1.0 - state.beta2_pow);
        p[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
    }
}

TrainResult train(NetworkConfig cfg, const std::vector<Sample>& train_set,
                  const std::vector<Sample>& dev_set, std::uint64_t seed) {
    validate_config(cfg);
    if (train_set.empty()) throw LidError(ErrorKind::NoInput, "no training samples");
    cfg.seed = seed;

    LstmNetwork net(cfg);
    Rng rng(seed);
    net.init_params(rng);
    AdamState adam(net.params().size());

    const int n = static_cast<int>(train_set.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    std::vector<PaddedTensor> dev_inputs;
    dev_inputs.reserve(dev_set.size());
    for (const Sample& s : dev_set) dev_inputs.push_back(s.input);

    TrainResult result;
    result.train_loss.reserve(cfg.epochs);
    std::vector<double> grads;

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(order);
        double loss_sum = 0.0;
        for (int start = 0; start < n; start += cfg.batch_size) {
            int len = std::min(cfg.batch_size, n - start);
            std::span<const int> idx(order.data() + start, static_cast<std::size_t>(len));
            double batch_loss = batch_gradients(net, train_set, idx, grads);
            adam_step(net, grads, adam);
            loss_sum += batch_loss * len;
        }
        result.train_loss.push_back(loss_sum / n);

        if (!dev_set.empty()) {
            std::vector<double> scores = batch_scores(net, dev_inputs);
            double dev_sum = 0.0;
            for (std::size_t i = 0; i < scores.size(); ++i)
                dev_sum += bce_loss(scores[i], dev_set[i].target);
            result.dev_loss.push_back(dev_sum / static_cast<double>(dev_set.size()));
        }
    }

    result.net = std::move(net);
    return result;
}

NetworkConfig gradient_check_config() {
    NetworkConfig cfg;
    cfg.scheme = Scheme::Char;
    cfg.seq_len = 4;
    cfg.vocab_dim = 5;
    cfg.hidden1 = 3;
    cfg.hidden2 = 2;
    return cfg;
}

double gradient_check(const NetworkConfig& cfg, std::uint64_t seed) {
    validate_config(cfg);
    LstmNetwork net(cfg);
    Rng rng(seed);
    // Wider init than training uses: with tiny weights many true gradients
    // sit near the rounding noise of the difference quotient, and the
    // relative error would measure that noise instead of the backward pass.
    for (double& p : net.params()) p = rng.uniform(-1.0, 1.0);

    std::vector<Sample> samples;
    std::vector<int> idx;
    for (int i = 0; i < 3; ++i) {
        PaddedTensor t;
        t.scheme = cfg.scheme;
        t.seq_len = cfg.seq_len;
        t.vocab_dim = cfg.vocab_dim;
        t.active.resize(cfg.seq_len);
        // Mix pad rows in so their zero contribution is covered too.
        for (int& a : t.active)
            a = rng.below(4) == 0 ? 0 : 1 + static_cast<int>(rng.below(cfg.vocab_dim - 1));
        samples.push_back({std::move(t), static_cast<double>(rng.below(2))});
        idx.push_back(i);
    }

    std::vector<double> analytic;
    batch_gradients_serial(net, samples, idx, analytic);

    detail::SampleCache cache;
    auto mean_loss = [&]() {
        double sum = 0.0;
        for (const Sample& s : samples)
            sum += bce_loss(detail::forward_sample(net, s.input, cache), s.target);
        return sum / static_cast<double>(samples.size());
    };

    const double step = 1e-5;
    double max_rel = 0.0;
    std::vector<double>& p = net.params();
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double saved = p[k];
        p[k] = saved + step;
        double up = mean_loss();
        p[k] = saved - step;
        double down = mean_loss();
        p[k] = saved;
        double numeric = (up - down) / (2.0 * step);
        double scale = std::max({std::abs(analytic[k]), std::abs(numeric), 1e-12});
        max_rel = std::max(max_rel, std::abs(analytic[k] - numeric) / scale);
    }
    return max_rel;
}

} // namespace lid
