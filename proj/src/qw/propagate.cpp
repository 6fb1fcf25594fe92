#include "qw/propagate.hpp"

#include <cmath>
#include <numbers>

namespace qw {

namespace {

constexpr double pi = std::numbers::pi;

cplx unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

// i^d for any integer d.
cplx i_pow(long d) {
    switch (((d % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace

SpinorField spectral_evolve(const SpinorField& field, const KSpaceHamiltonian& h, double t) {
    return apply_kspace_op(field, h.evaluator, KOpMode::exponentiate, t);
}

std::vector<double> bessel_j_array(long nmax, double z) {
    if (nmax < 0 || nmax > 1000000L || !(std::abs(z) <= 1.0e4) || !std::isfinite(z))
        throw Error(ErrorCode::out_of_range, "bessel_j_array: order or argument out of range");
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
    const bool neg_z = z < 0.0;
    z = std::abs(z);
    if (z == 0.0) {
        out[0] = 1.0;
        return out;
    }
    const long zc = static_cast<long>(std::ceil(z));
    const long base = std::max(nmax, zc);
    long start = base + 40 + static_cast<long>(std::ceil(10.0 * std::sqrt(static_cast<double>(base) + 1.0)));
    if (start % 2 != 0) ++start;

    double fkp1 = 0.0;
    double fk = 1e-300;
    double sum = 0.0;  // accumulates J_0 + 2 sum_{even j>0} J_j, unnormalized
    for (long k = start; k >= 1; --k) {
        const double fkm1 = (2.0 * k / z) * fk - fkp1;
        fkp1 = fk;
        fk = fkm1;
        const long j = k - 1;
        if (j <= nmax) out[static_cast<std::size_t>(j)] = fk;
        if (j > 0 && j % 2 == 0) sum += 2.0 * fk;
        if (std::abs(fk) > 1e250) {
            const double s = 1e-250;
            fk *= s;
            fkp1 *= s;
            sum *= s;
            for (auto& v : out) v *= s;
        }
    }
    sum += fk;  // the j = 0 term
    for (long j = 0; j <= nmax; ++j) {
        out[static_cast<std::size_t>(j)] /= sum;
        if (neg_z && (j % 2 != 0)) out[static_cast<std::size_t>(j)] = -out[static_cast<std::size_t>(j)];
    }
    return out;
}

double bessel_j(long order, double z) {
    if (std::labs(order) > 1000000L || !(std::abs(z) <= 1.0e4) || !std::isfinite(z))
        throw Error(ErrorCode::out_of_range, "bessel_j: order or argument out of range");
    double sign = 1.0;
    long n = order;
    if (n < 0) {
        n = -n;
        if (n % 2 != 0) sign = -sign;  // J_{-n} = (-1)^n J_n
    }
    return sign * bessel_j_array(n, z)[static_cast<std::size_t>(n)];
}

int BesselKernelSpec::min_cutoff(double theta1, double t) {
    return static_cast<int>(std::ceil(std::abs(theta1 * t) / 2.0)) + 40;
}

BesselKernelSpec::BesselKernelSpec(double theta1_, double alpha_, double beta_, double t_,
                                   int cutoff_)
    : theta1(theta1_), alpha(alpha_), beta(beta_), t(t_), cutoff(cutoff_) {
    if (cutoff < min_cutoff(theta1, t))
        throw Error(ErrorCode::cutoff_too_small,
                    "BesselKernelSpec: cutoff below ceil(|theta1| t/2) + 40");
}

BesselKernelSpec BesselKernelSpec::from_angles(double theta1, double phi0, double psi0, double t) {
    return BesselKernelSpec(theta1, 0.5 * (phi0 + psi0), 0.5 * (phi0 - psi0), t,
                            min_cutoff(theta1, t));
}

SpinorField bessel_propagate(const SpinorField& field0, const BesselKernelSpec& spec) {
    const int n_sites = field0.grid.n_sites;
    const long cut = spec.cutoff;
    const std::vector<double> j = bessel_j_array(cut, spec.theta1 * spec.t / 2.0);

    // c_d = 1/2 i^d e^{i alpha d} J_d for d in [-cut, cut]; J_{-d} = (-1)^d J_d.
    std::vector<cplx> kernel(static_cast<std::size_t>(2 * cut + 1));
    for (long d = -cut; d <= cut; ++d) {
        double jd = j[static_cast<std::size_t>(std::labs(d))];
        if (d < 0 && (d % 2 != 0)) jd = -jd;
        kernel[static_cast<std::size_t>(d + cut)] = 0.5 * i_pow(d) * unit(spec.alpha * d) * jd;
    }

    const cplx ieb = cplx(0.0, 1.0) * unit(spec.beta);
    const cplx mieb = cplx(0.0, -1.0) * unit(-spec.beta);

    SpinorField out(field0.grid);
    for (int m = 0; m < n_sites; ++m) {
        cplx al{0.0, 0.0}, ar{0.0, 0.0};
        for (long d = -cut; d <= cut; ++d) {
            const cplx c = kernel[static_cast<std::size_t>(d + cut)];
            const int n = static_cast<int>(((m - d) % n_sites + n_sites) % n_sites);
            if (d % 2 == 0) {
                al += 2.0 * c * field0.data[static_cast<std::size_t>(n)].l;
                ar += 2.0 * c * field0.data[static_cast<std::size_t>(n)].r;
            } else {
                const int np = (n + 1) % n_sites;
                const int nm = (n - 1 + n_sites) % n_sites;
                al += 2.0 * c * ieb * field0.data[static_cast<std::size_t>(np)].r;
                ar += 2.0 * c * mieb * field0.data[static_cast<std::size_t>(nm)].l;
            }
        }
        out.data[static_cast<std::size_t>(m)] = {al, ar};
    }
    return out;
}

double graf_convolution_check(double alpha, double z, int n) {
    if (!(std::abs(z) <= 100.0))
        throw Error(ErrorCode::out_of_range, "graf_convolution_check: |z| must be <= 100");
    const long jmax = static_cast<long>(std::ceil(std::abs(z))) + 50 + std::labs(n);
    const double zc = z * std::cos(alpha);
    const double zs = z * std::sin(alpha);
    const std::vector<double> jc = bessel_j_array(jmax, zc);
    const std::vector<double> js = bessel_j_array(jmax + std::labs(n), zs);

    auto jval = [](const std::vector<double>& tab, long order) {
        const long a = std::labs(order);
        double v = tab[static_cast<std::size_t>(a)];
        if (order < 0 && (a % 2 != 0)) v = -v;
        return v;
    };

    cplx lhs{0.0, 0.0};
    for (long jj = -jmax; jj <= jmax; ++jj)
        lhs += i_pow(-jj) * jval(jc, jj) * jval(js, n - jj);
    lhs *= (n % 2 == 0) ? 1.0 : -1.0;  // (-1)^n
    const cplx rhs = i_pow(n) * bessel_j(n, z) * unit(alpha * n);
    return std::abs(lhs - rhs);
}

SpinorField ctqw_evolve(const SpinorField& field, double theta1, int sign, double t) {
    if (sign != 1 && sign != -1)
        throw Error(ErrorCode::invalid_argument, "ctqw_evolve: sign must be +1 or -1");
    const double dx = field.grid.dx;
    auto op = [theta1, sign, dx, t](double k) {
        // e^{i s (theta1/4)(2 cos k dx - 2) t} on both components
        const double phase = sign * (theta1 / 4.0) * (2.0 * std::cos(k * dx) - 2.0) * t;
        const cplx u = unit(phase);
        return Mat2{u, 0.0, 0.0, u};
    };
    return apply_kspace_op(field, op, KOpMode::multiply);
}

SplitPair split_pm(const SpinorField& field0, double theta1, double phi0, double psi0) {
    (void)theta1;  // branch geometry depends only on beta; theta1 scales the eigenvalues
    const Grid& grid = field0.grid;
    const double alpha = 0.5 * (phi0 + psi0);
    const double beta = 0.5 * (phi0 - psi0);

    KSpaceField kf = dft_forward(field0);
    KSpaceField kplus(grid), kminus(grid);
    const double inv_s2 = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < grid.n_sites; ++j) {
        const double chi = mode_momentum(grid, j) * grid.dx + beta;
        const cplx iec = cplx(0.0, 1.0) * unit(chi);
        // plus branch: eigenvalue +(theta1/2) cos(k dx - alpha), vector (-i e^{i chi}, 1)/sqrt2
        const Spinor vp{-iec * inv_s2, cplx(inv_s2, 0.0)};
        const Spinor vm{iec * inv_s2, cplx(inv_s2, 0.0)};
        const Spinor& a = kf.data[static_cast<std::size_t>(j)];
        const cplx cp = std::conj(vp.l) * a.l + std::conj(vp.r) * a.r;
        const cplx cm = std::conj(vm.l) * a.l + std::conj(vm.r) * a.r;
        kplus.data[static_cast<std::size_t>(j)] = cp * vp;
        kminus.data[static_cast<std::size_t>(j)] = cm * vm;
    }
    SplitPair pair{dft_inverse(kplus), dft_inverse(kminus)};
    for (int n = 0; n < grid.n_sites; ++n) {
        const cplx dress = unit(-alpha * n);
        pair.plus.data[static_cast<std::size_t>(n)] = dress * pair.plus.data[static_cast<std::size_t>(n)];
        pair.minus.data[static_cast<std::size_t>(n)] = dress * pair.minus.data[static_cast<std::size_t>(n)];
    }
    return pair;
}

SpinorField reconstruct(const SplitPair& pair, double theta1, double alpha, double t,
                        const Grid& grid) {
    if (pair.plus.grid != grid || pair.minus.grid != grid)
        throw Error(ErrorCode::grid_mismatch, "reconstruct: grids do not match");
    const cplx wplus = unit(-theta1 * t / 2.0);
    const cplx wminus = unit(theta1 * t / 2.0);
    SpinorField out(grid);
    for (int n = 0; n < grid.n_sites; ++n) {
        const cplx dress = unit(alpha * n);
        const auto i = static_cast<std::size_t>(n);
        out.data[i] = dress * (wplus * pair.plus.data[i] + wminus * pair.minus.data[i]);
    }
    return out;
}

}  // namespace qw
