#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>

namespace affinitylab {

/// Seeded RNG with rejection-sampled bounded draws and text (de)serialization,
/// so search trajectories are reproducible and checkpointable bit-exactly.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform draw from [0, bound), bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % bound;
    }

    std::string save() const {
        std::ostringstream os;
        os << gen_;
        return os.str();
    }

    void restore(const std::string& state) {
        std::istringstream is(state);
        is >> gen_;
        if (is.fail()) throw std::invalid_argument("bad rng state string");
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace affinitylab
