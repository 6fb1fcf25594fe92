#ifndef QW_TEST_HELPERS_HPP
#define QW_TEST_HELPERS_HPP

#include <numbers>

#include "qw/coin.hpp"
#include "qw/rng.hpp"

namespace qwtest {

constexpr double pi = std::numbers::pi;

inline double entry_dist(const qw::Mat2& a, const qw::Mat2& b) {
    return std::max({std::abs(a.m00 - b.m00), std::abs(a.m01 - b.m01), std::abs(a.m10 - b.m10),
                     std::abs(a.m11 - b.m11)});
}

inline double field_dist(const qw::SpinorField& a, const qw::SpinorField& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        d = std::max({d, std::abs(a.data[i].l - b.data[i].l), std::abs(a.data[i].r - b.data[i].r)});
    return d;
}

inline qw::CoinZYZ random_angles(qw::Rng& rng) {
    return {rng.uniform(-pi, pi), rng.uniform(-pi, pi), rng.uniform(0.0, pi),
            rng.uniform(-pi, pi)};
}

inline qw::Unitary2 random_unitary(qw::Rng& rng) { return qw::compose_zyz(random_angles(rng)); }

// e^{-i angle sigma_x}, full angle (not half)
inline qw::Mat2 exp_x(double angle) {
    using qw::cplx;
    const double c = std::cos(angle), s = std::sin(angle);
    return {cplx(c, 0.0), cplx(0.0, -s), cplx(0.0, -s), cplx(c, 0.0)};
}

}  // namespace qwtest

#endif
