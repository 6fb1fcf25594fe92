#include "qw/limits.hpp"

#include <cmath>
#include <numbers>

namespace qw {

namespace {

constexpr double pi = std::numbers::pi;

// Richardson extrapolation from the two finest probes (ratio r = dt1/dt0):
// kills the O(dt) term of the generator, leaving O(dt^2).
Mat2 richardson(const Mat2& g_fine, double dt_fine, const Mat2& g_coarse, double dt_coarse) {
    const double r = dt_coarse / dt_fine;
    return (1.0 / (r - 1.0)) * (r * g_fine - (1.0 * g_coarse));
}

int fit_unit_sign(const Mat2& measured, const Mat2& closed_form) {
    const double d_minus = op_norm(measured - (-1.0) * closed_form);
    const double d_plus = op_norm(measured - closed_form);
    return d_minus <= d_plus ? -1 : +1;
}

}  // namespace

KSpaceHamiltonian ct_hamiltonian(double theta1, double phi0, double psi0, double dx) {
    if (!(dx > 0.0)) throw Error(ErrorCode::invalid_argument, "ct_hamiltonian: dx must be > 0");
    KSpaceHamiltonian h;
    h.label = "ct";
    h.params = {{"theta1", theta1}, {"phi0", phi0}, {"psi0", psi0}, {"dx", dx}};
    h.evaluator = [theta1, phi0, psi0, dx](double k) {
        const Mat2 first = exp_i_z(phi0);
        const Mat2 second = exp_i_z(2.0 * k * dx) * exp_i_z(-psi0);
        return (theta1 / 4.0) * ((first + second) * pauli_y());
    };
    return h;
}

CtSpectrum ct_spectrum(const KSpaceHamiltonian& h, double k) {
    if (h.label != "ct")
        throw Error(ErrorCode::invalid_argument, "ct_spectrum: not a ct_hamiltonian");
    const double theta1 = h.params.at("theta1");
    const double phi0 = h.params.at("phi0");
    const double psi0 = h.params.at("psi0");
    const double dx = h.params.at("dx");
    const double alpha = 0.5 * (phi0 + psi0);
    const double beta = 0.5 * (phi0 - psi0);

    const double d = 0.5 * theta1 * std::cos(k * dx - alpha);  // eigenvalue of the +chi branch
    const double chi = k * dx + beta;
    const cplx iec = cplx(0.0, 1.0) * std::exp(cplx(0.0, chi));
    const double inv_s2 = 1.0 / std::sqrt(2.0);
    const Spinor v_pos{iec * inv_s2, cplx(inv_s2, 0.0)};    // (+i e^{i chi}, 1)/sqrt2
    const Spinor v_neg{-iec * inv_s2, cplx(inv_s2, 0.0)};   // (-i e^{i chi}, 1)/sqrt2

    CtSpectrum out{};
    out.degenerate = std::abs(d) < 1e-12;
    if (out.degenerate) {
        out.lambda_plus = std::abs(d);
        out.lambda_minus = -std::abs(d);
        out.v_plus = v_pos;
        out.v_minus = v_neg;
        return out;
    }
    // H v_neg = +d v_neg and H v_pos = -d v_pos; order by eigenvalue.
    if (d > 0.0) {
        out.lambda_plus = d;
        out.lambda_minus = -d;
        out.v_plus = v_neg;
        out.v_minus = v_pos;
    } else {
        out.lambda_plus = -d;
        out.lambda_minus = d;
        out.v_plus = v_pos;
        out.v_minus = v_neg;
    }
    return out;
}

ConvergenceReport ct_limit_check(const CoinSeries& series, int n,
                                 const std::vector<double>& k_samples,
                                 const LimitSchedule& schedule) {
    if (n % 2 != 0 || n < 2)
        throw Error(ErrorCode::odd_step_count, "ct_limit_check: n must be a positive even integer");
    if (schedule.coupling != LimitSchedule::Coupling::fixed_dx)
        throw Error(ErrorCode::invalid_argument, "ct_limit_check: schedule must fix dx");
    if (k_samples.empty())
        throw Error(ErrorCode::invalid_argument, "ct_limit_check: need at least one k sample");

    const double dx = schedule.value;
    const KSpaceHamiltonian target =
        ct_hamiltonian(series.theta1, series.phi0, series.psi0, dx);

    std::vector<ProbePoint> probes;
    probes.reserve(schedule.dts.size());
    Mat2 finest{};
    for (double dt : schedule.dts) {
        const Unitary2 coin = coin_at(series, dt);
        double dist = 0.0;
        for (double k : k_samples) {
            const Mat2 g = generator_matrix(k, coin, n, dx, dt);
            dist = std::max(dist, op_norm(g - target(k)));
            if (dt == schedule.dts.back() && k == k_samples.front()) finest = g;
        }
        probes.push_back({dt, dx, dist});
    }
    ConvergenceReport rep = make_report(std::move(probes));
    rep.limit_estimate = finest;
    return rep;
}

ConvergenceReport divergence_check(const CoinSeries& series, int n, double k,
                                   const LimitSchedule& schedule) {
    if (n % 2 == 0 || n < 1)
        throw Error(ErrorCode::invalid_argument, "divergence_check: n must be a positive odd integer");
    std::vector<ProbePoint> probes;
    probes.reserve(schedule.dts.size());
    for (double dt : schedule.dts) {
        const double dx = schedule.dx_at(dt);
        const Unitary2 coin = coin_at(series, dt);
        probes.push_back({dt, dx, op_norm(generator_matrix(k, coin, n, dx, dt))});
    }
    return make_report(std::move(probes));
}

DiracLimitResult dirac_limit_check(int l, int m, const PauliAxis& axis, double v,
                                   const std::vector<double>& k_samples,
                                   const LimitSchedule& schedule) {
    if (schedule.coupling != LimitSchedule::Coupling::ratio_v)
        throw Error(ErrorCode::invalid_argument, "dirac_limit_check: schedule must couple dx = v*dt");
    if (k_samples.empty())
        throw Error(ErrorCode::invalid_argument, "dirac_limit_check: need k samples");
    const Unitary2 coin = root_unity_coin(l, m, axis);
    const Mat2 nsig = axis.dot_sigma();
    const double nz = axis.nz;

    auto closed = [v, nz, nsig](double k, int sign) {
        return (sign * k * v * nz) * nsig;
    };

    // Fit the unit sign from the finest probe at the first nonzero k sample.
    double k_fit = k_samples.front();
    for (double k : k_samples)
        if (std::abs(k) > std::abs(k_fit)) k_fit = k;
    const double dt0 = schedule.dts.back();
    const Mat2 g_fit = generator_matrix(k_fit, coin, m, v * dt0, dt0);
    const int s = fit_unit_sign(g_fit, closed(k_fit, +1));

    std::vector<ProbePoint> probes;
    probes.reserve(schedule.dts.size());
    for (double dt : schedule.dts) {
        const double dx = v * dt;
        double dist = 0.0;
        for (double k : k_samples)
            dist = std::max(dist, op_norm(generator_matrix(k, coin, m, dx, dt) - closed(k, s)));
        probes.push_back({dt, dx, dist});
    }

    const double dt1 = schedule.dts[schedule.dts.size() - 2];
    auto limit = [coin, m, v, dt0, dt1](double k) {
        const Mat2 g0 = generator_matrix(k, coin, m, v * dt0, dt0);
        const Mat2 g1 = generator_matrix(k, coin, m, v * dt1, dt1);
        return richardson(g0, dt0, g1, dt1);
    };

    DiracLimitResult out{make_report(std::move(probes)), s, limit};
    out.report.limit_estimate = limit(k_fit);
    return out;
}

KSpaceHamiltonian ctcs_hamiltonian(double alpha_coef, double psi0) {
    KSpaceHamiltonian h;
    h.label = "ctcs";
    h.params = {{"alpha", alpha_coef}, {"psi0", psi0}};
    h.evaluator = [alpha_coef, psi0](double k) {
        return (0.5 * alpha_coef * k) * (exp_i_z(-psi0) * pauli_x());
    };
    return h;
}

ConvergenceReport ctcs_limit_check(double alpha_coef, double psi0,
                                   const std::vector<double>& k_samples,
                                   const std::vector<double>& dx_schedule,
                                   double constraint_offset) {
    if (dx_schedule.size() < 4)
        throw Error(ErrorCode::degenerate_schedule, "ctcs_limit_check: need >= 4 dx values");
    for (std::size_t i = 1; i < dx_schedule.size(); ++i)
        if (!(dx_schedule[i] < dx_schedule[i - 1]) || !(dx_schedule[i] > 0.0))
            throw Error(ErrorCode::degenerate_schedule,
                        "ctcs_limit_check: dx schedule must be strictly decreasing and positive");
    if (k_samples.empty())
        throw Error(ErrorCode::invalid_argument, "ctcs_limit_check: need k samples");

    const KSpaceHamiltonian target = ctcs_hamiltonian(alpha_coef, psi0);
    const double phi0 = pi - psi0 + constraint_offset;

    std::vector<ProbePoint> probes;
    probes.reserve(dx_schedule.size());
    for (double dx : dx_schedule) {
        const KSpaceHamiltonian h = ct_hamiltonian(alpha_coef / dx, phi0, psi0, dx);
        double dist = 0.0;
        for (double k : k_samples) dist = std::max(dist, op_norm(h(k) - target(k)));
        probes.push_back({dx, dx, dist});
    }
    return make_report(std::move(probes), /*use_dx=*/true);
}

DiracTypeResult dirac_type_limit_check(const Mat2& a_op, const Mat2& b_op, double v,
                                       const std::vector<double>& k_samples,
                                       const LimitSchedule& schedule, int coin_sign) {
    if (!hermitian_within(a_op, 1e-12) || !hermitian_within(b_op, 1e-12))
        throw Error(ErrorCode::non_hermitian,
                    "dirac_type_limit_check: a_op and b_op must be Hermitian");
    if (coin_sign != 1 && coin_sign != -1)
        throw Error(ErrorCode::invalid_argument, "dirac_type_limit_check: coin_sign must be +-1");
    if (schedule.coupling != LimitSchedule::Coupling::ratio_v)
        throw Error(ErrorCode::invalid_argument,
                    "dirac_type_limit_check: schedule must couple dx = v*dt");
    if (k_samples.empty())
        throw Error(ErrorCode::invalid_argument, "dirac_type_limit_check: need k samples");

    // Walk step in k-space: shift symbol e^{i k dx A} times coin e^{i s dt B}.
    // Captured by value: the lambda outlives this call inside the result.
    auto gen = [a_op, b_op, v, coin_sign](double k, double dt) {
        const double dx = v * dt;
        const Mat2 u = exp_minus_i(a_op, -k * dx) * exp_minus_i(b_op, -coin_sign * dt);
        return cplx(0.0, 1.0) * (1.0 / dt) * (u - mat2_identity());
    };

    // Fit unit signs of the transport and mass parts against k v A and B.
    double k_fit = k_samples.front();
    for (double k : k_samples)
        if (std::abs(k) > std::abs(k_fit)) k_fit = k;
    const double dt0 = schedule.dts.back();
    const double dt1 = schedule.dts[schedule.dts.size() - 2];
    const Mat2 g_k = richardson(gen(k_fit, dt0), dt0, gen(k_fit, dt1), dt1);
    const Mat2 g_0 = richardson(gen(0.0, dt0), dt0, gen(0.0, dt1), dt1);
    const int s_b = (op_norm(b_op) > 0.0) ? fit_unit_sign(g_0, b_op) : -coin_sign;
    const int s_a = fit_unit_sign(g_k - (s_b * 1.0) * b_op, (k_fit * v) * a_op);

    auto closed = [&](double k) { return (s_a * k * v) * a_op + (s_b * 1.0) * b_op; };

    std::vector<ProbePoint> probes;
    probes.reserve(schedule.dts.size());
    for (double dt : schedule.dts) {
        double dist = 0.0;
        for (double k : k_samples) dist = std::max(dist, op_norm(gen(k, dt) - closed(k)));
        probes.push_back({dt, v * dt, dist});
    }

    auto limit = [gen, dt0, dt1](double k) {
        return richardson(gen(k, dt0), dt0, gen(k, dt1), dt1);
    };
    DiracTypeResult out{make_report(std::move(probes)), s_a, s_b, limit};
    out.report.limit_estimate = limit(k_fit);
    return out;
}

}  // namespace qw
