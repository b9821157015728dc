#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fracsurv::detail {

// mt19937_64 with explicit output mapping so streams are identical on every
// platform (std::uniform_real_distribution and friends are not portable).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return (eng_() >> 11) * 0x1.0p-53; }

    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 <= 0.0)
            u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace fracsurv::detail
