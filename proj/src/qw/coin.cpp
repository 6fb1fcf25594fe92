#include "qw/coin.hpp"

#include <cmath>
#include <numbers>

namespace qw {

namespace {

constexpr double pi = std::numbers::pi;

// Wrap into (-pi, pi].
double wrap_angle(double a) {
    double r = std::remainder(a, 2.0 * pi);
    if (r <= -pi) r += 2.0 * pi;
    return r;
}

// Wrap an angle into (-pi, pi] while tracking the SU(2) sign flip a 2*pi
// shift of a half-angle rotation causes.
double wrap_half_angle(double a, int* flips) {
    double r = a;
    while (r > pi) {
        r -= 2.0 * pi;
        ++*flips;
    }
    while (r <= -pi) {
        r += 2.0 * pi;
        ++*flips;
    }
    return r;
}

}  // namespace

PauliAxis PauliAxis::normalized(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!(n > 0.0)) throw Error(ErrorCode::invalid_argument, "PauliAxis: zero vector");
    return {x / n, y / n, z / n};
}

Unitary2 compose_zyz(const CoinZYZ& c) {
    const cplx phase = std::exp(cplx(0.0, c.delta));
    return Unitary2(phase * (rot_z(c.psi) * rot_y(c.theta) * rot_z(c.phi)));
}

CoinZYZ decompose_zyz(const Unitary2& u) {
    const Mat2& m = u.mat();
    // Split off the global phase: det(e^{i d} V) = e^{2id} for V in SU(2).
    double delta = 0.5 * std::arg(det(m));
    const Mat2 v = std::exp(cplx(0.0, -delta)) * m;

    const double c = std::abs(v.m00);
    const double s = std::abs(v.m10);
    double theta = 2.0 * std::atan2(s, c);

    double psi = 0.0, phi = 0.0;
    int flips = 0;
    if (s <= 1e-13) {
        // theta ~ 0: only psi+phi is fixed; canonicalize psi = 0.
        theta = 0.0;
        phi = wrap_half_angle(-2.0 * std::arg(v.m00), &flips);
    } else if (c <= 1e-13) {
        // theta ~ pi: only psi-phi is fixed; canonicalize psi = 0.
        theta = pi;
        phi = wrap_half_angle(-2.0 * std::arg(v.m10), &flips);
    } else {
        const double sum = -2.0 * std::arg(v.m00);  // psi + phi
        const double dif = 2.0 * std::arg(v.m10);   // psi - phi
        psi = wrap_half_angle(0.5 * (sum + dif), &flips);
        phi = wrap_half_angle(0.5 * (sum - dif), &flips);
    }
    if (flips % 2 != 0) delta += pi;
    return {wrap_angle(delta), psi, theta, phi};
}

Unitary2 coin_at(const CoinSeries& series, double dt) {
    if (dt < 0.0) throw Error(ErrorCode::invalid_argument, "coin_at: dt must be >= 0");
    return compose_zyz({series.delta, series.psi0 + series.psi1 * dt,
                        series.theta0 + series.theta1 * dt, series.phi0 + series.phi1 * dt});
}

Unitary2 ct_family_coin(double psi0, double phi0, double theta1, double dt) {
    if (dt < 0.0) throw Error(ErrorCode::invalid_argument, "ct_family_coin: dt must be >= 0");
    return Unitary2(rot_z(psi0) * pauli_y() * rot_y(theta1 * dt) * rot_z(phi0));
}

Unitary2 root_unity_coin(int l, int m, const PauliAxis& axis) {
    if (m < 1) throw Error(ErrorCode::invalid_argument, "root_unity_coin: m must be >= 1");
    if (l < 0) throw Error(ErrorCode::invalid_argument, "root_unity_coin: l must be >= 0");
    const double a = pi * static_cast<double>(l) / m;
    const cplx phase = std::exp(cplx(0.0, a));
    // e^{-i a n.sigma} = cos(a) I - i sin(a) n.sigma
    const Mat2 rot = std::cos(a) * mat2_identity() + cplx(0.0, -std::sin(a)) * axis.dot_sigma();
    return Unitary2(phase * rot);
}

double power_deviation(const Unitary2& u, int m) {
    if (m < 1) throw Error(ErrorCode::invalid_argument, "power_deviation: m must be >= 1");
    return op_norm(mat_pow(u.mat(), static_cast<unsigned>(m)) - mat2_identity());
}

ConvergenceReport homotopy_probe(const std::function<Unitary2(double)>& family, int m,
                                 const std::vector<double>& dts) {
    if (dts.size() < 4)
        throw Error(ErrorCode::degenerate_schedule, "homotopy_probe: need at least 4 dt values");
    for (std::size_t i = 1; i < dts.size(); ++i)
        if (!(dts[i] < dts[i - 1]) || !(dts[i] > 0.0))
            throw Error(ErrorCode::degenerate_schedule,
                        "homotopy_probe: dts must be strictly decreasing and positive");
    std::vector<ProbePoint> probes;
    probes.reserve(dts.size());
    for (double dt : dts) probes.push_back({dt, 0.0, power_deviation(family(dt), m)});
    return make_report(std::move(probes));
}

Unitary2 hadamard_coin() {
    const double r = 1.0 / std::sqrt(2.0);
    return Unitary2(Mat2{r, -r, r, r});
}

}  // namespace qw
