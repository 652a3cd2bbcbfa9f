#ifndef LID_RNG_HPP
#define LID_RNG_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace lid {

// Deterministic RNG used everywhere a seed appears in a contract.
// std::uniform_* distributions are implementation-defined, so the
// transforms are spelled out here; identical seeds give identical
// streams on any conforming platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // [0, n), n > 0. Multiply-shift bounding.
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(gen_()) * n) >> 64);
    }

    // Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            using std::swap;
            swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

} // namespace lid

#endif
