#ifndef QW_RNG_HPP
#define QW_RNG_HPP

#include <cstdint>
#include <random>

#include "qw/lattice.hpp"

namespace qw {

// Deterministic draws on top of std::mt19937_64. The distributions are
// implemented here rather than via <random> adaptors so identical seeds give
// identical streams on any standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, 1): top 53 bits of the raw draw.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // modulo bias is < 2^-40 for the ranges used here (n << 2^24)
        return eng_() % n;
    }

    cplx complex_unit_box() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

    SpinorField normalized_field(const Grid& grid) {
        SpinorField f(grid);
        for (auto& s : f.data) s = {complex_unit_box(), complex_unit_box()};
        const double n = std::sqrt(total_norm(f));
        for (auto& s : f.data) s = cplx(1.0 / n, 0.0) * s;
        return f;
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace qw

#endif
