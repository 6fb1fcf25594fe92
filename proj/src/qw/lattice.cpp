#include "qw/lattice.hpp"

#include <cmath>
#include <numbers>

namespace qw {

namespace {

// e^{i 2*pi*jn/N} with the integer product reduced mod N first, so large
// grids do not lose phase accuracy.
cplx unit_phase(long long jn, int n_sites) {
    long long r = jn % n_sites;
    if (r < 0) r += n_sites;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / n_sites;
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace

double mode_momentum(const Grid& grid, int j) {
    if (j < 0 || j >= grid.n_sites)
        throw Error(ErrorCode::invalid_argument, "mode_momentum: mode index out of range");
    const int half = grid.n_sites / 2;
    const int j_signed = (j < half) ? j : j - grid.n_sites;
    return 2.0 * std::numbers::pi * j_signed / (grid.n_sites * grid.dx);
}

SpinorField SpinorField::delta(const Grid& g, int site, const Spinor& s) {
    if (site < 0 || site >= g.n_sites)
        throw Error(ErrorCode::invalid_argument, "delta: site out of range");
    SpinorField f(g);
    f.data[static_cast<std::size_t>(site)] = s;
    return f;
}

KSpaceField dft_forward(const SpinorField& field) {
    const int n = field.grid.n_sites;
    KSpaceField out(field.grid);
    for (int j = 0; j < n; ++j) {
        cplx al{0.0, 0.0}, ar{0.0, 0.0};
        for (int site = 0; site < n; ++site) {
            // k_j * site * dx = 2*pi*j*site/N regardless of dx
            const cplx w = unit_phase(-static_cast<long long>(j) * site, n);
            al += w * field.data[static_cast<std::size_t>(site)].l;
            ar += w * field.data[static_cast<std::size_t>(site)].r;
        }
        out.data[static_cast<std::size_t>(j)] = {al, ar};
    }
    return out;
}

SpinorField dft_inverse(const KSpaceField& kfield) {
    const int n = kfield.grid.n_sites;
    SpinorField out(kfield.grid);
    const double inv_n = 1.0 / n;
    for (int site = 0; site < n; ++site) {
        cplx al{0.0, 0.0}, ar{0.0, 0.0};
        for (int j = 0; j < n; ++j) {
            const cplx w = unit_phase(static_cast<long long>(j) * site, n);
            al += w * kfield.data[static_cast<std::size_t>(j)].l;
            ar += w * kfield.data[static_cast<std::size_t>(j)].r;
        }
        out.data[static_cast<std::size_t>(site)] = {inv_n * al, inv_n * ar};
    }
    return out;
}

double total_norm(const SpinorField& field) {
    double s = 0.0;
    for (const auto& v : field.data) s += norm2(v);
    return s;
}

double total_norm(const KSpaceField& kfield) {
    double s = 0.0;
    for (const auto& v : kfield.data) s += norm2(v);
    return s;
}

SpinorField apply_kspace_op(const SpinorField& field, const std::function<Mat2(double)>& op,
                            KOpMode mode, double t) {
    KSpaceField kf = dft_forward(field);
    const int n = field.grid.n_sites;
    for (int j = 0; j < n; ++j) {
        const double k = mode_momentum(field.grid, j);
        Mat2 m = op(k);
        if (mode == KOpMode::exponentiate) {
            const double scale = op_norm(m);
            if (op_norm(m - adjoint(m)) > 1e-10 * std::max(scale, 1e-300))
                throw Error(ErrorCode::non_hermitian,
                            "apply_kspace_op: exponentiate mode requires a Hermitian symbol");
            m = exp_minus_i(m, t);
        }
        auto& v = kf.data[static_cast<std::size_t>(j)];
        v = m * v;
    }
    return dft_inverse(kf);
}

}  // namespace qw
