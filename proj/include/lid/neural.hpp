#ifndef LID_NEURAL_HPP
#define LID_NEURAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lid/encoder.hpp"
#include "lid/rng.hpp"

namespace lid {

struct NetworkConfig {
    Scheme scheme = Scheme::Char;
    int seq_len = kSeqLen;
    int vocab_dim = 27;
    int hidden1 = 35;
    int hidden2 = 25;
    int epochs = 500;
    int batch_size = 1658;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::uint64_t seed = 0;

    // Published architectures: 15-35-25-1 for the character scheme,
    // 15-15-40-1 for the phonetic scheme.
    static NetworkConfig for_scheme(Scheme scheme, std::uint64_t seed);
};

// All parameters live in one flat vector; the layout maps named segments
// (per-layer gate weights, recurrent weights, biases, head) onto it.
// Gate order is fixed: input, forget, output, cell.
struct ParamLayout {
    struct Layer {
        int input = 0;
        int hidden = 0;
        std::size_t w[4] = {}; // [hidden x input] each, row-major
        std::size_t u[4] = {}; // [hidden x hidden]
        std::size_t b[4] = {}; // [hidden]
    };
    Layer layer[2];
    std::size_t head_w = 0; // [hidden2]
    std::size_t head_b = 0; // scalar
    std::size_t total = 0;

    struct Segment {
        std::string group; // "layer1", "layer2", "head"
        std::string field; // "w_i", "u_f", "b_o", "w", "b"
        std::size_t offset = 0;
        int rows = 0; // 0 = flat vector
        int cols = 0;
    };
    std::vector<Segment> segments() const;

    static ParamLayout make(const NetworkConfig& cfg);
};

// Two stacked LSTM layers and a sigmoid head. Parameters are plain data;
// the network is immutable during scoring and safe to share across threads.
class LstmNetwork {
public:
    LstmNetwork() = default;
    explicit LstmNetwork(const NetworkConfig& cfg)
        : cfg_(cfg), layout_(ParamLayout::make(cfg)), params_(layout_.total, 0.0) {}

    // Seeded uniform(-0.08, 0.08), filled in layout order.
    void init_params(Rng& rng) {
        for (double& p : params_) p = rng.uniform(-0.08, 0.08);
    }

    const NetworkConfig& config() const { return cfg_; }
    const ParamLayout& layout() const { return layout_; }
    std::vector<double>& params() { return params_; }
    const std::vector<double>& params() const { return params_; }

private:
    NetworkConfig cfg_;
    ParamLayout layout_;
    std::vector<double> params_;
};

// Sigmoid score in (0,1). Throws on dimension/scheme mismatch.
double forward(const LstmNetwork& net, const PaddedTensor& input);

// Binary cross-entropy with the score clamped into [1e-7, 1 - 1e-7].
double bce_loss(double score, double target);

struct Sample {
    PaddedTensor input;
    double target = 0.0; // BN=0, EN=1
};

struct AdamState {
    std::vector<double> m, v;
    long step = 0;
    double beta1_pow = 1.0;
    double beta2_pow = 1.0;

    explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

// Standard Adam with bias correction; zero gradient leaves parameters
// untouched on a fresh state.
void adam_step(LstmNetwork& net, const std::vector<double>& grads, AdamState& state);

struct TrainResult {
    LstmNetwork net;
    std::vector<double> train_loss; // one entry per epoch
    std::vector<double> dev_loss;   // empty when no dev set was given
};

// Seeded init, per-epoch seeded shuffle, mini-batches of cfg.batch_size
// (last batch may be smaller), Adam updates. Deterministic per seed.
TrainResult train(NetworkConfig cfg, const std::vector<Sample>& train_set,
                  const std::vector<Sample>& dev_set, std::uint64_t seed);

// Central-difference check (step 1e-5) of the analytic batch gradient on
// the given configuration; returns the maximum relative error over all
// parameters.
double gradient_check(const NetworkConfig& cfg, std::uint64_t seed);

// Reduced configuration the check is meant to run on.
NetworkConfig gradient_check_config();

} // namespace lid

#endif
