#include "qw/walk.hpp"

namespace qw {

SpinorField apply_shift(const SpinorField& field) {
    const int n = field.grid.n_sites;
    SpinorField out(field.grid);
    for (int site = 0; site < n; ++site) {
        const int right = (site + 1) % n;
        const int left = (site - 1 + n) % n;
        out.data[static_cast<std::size_t>(site)].l = field.data[static_cast<std::size_t>(right)].l;
        out.data[static_cast<std::size_t>(site)].r = field.data[static_cast<std::size_t>(left)].r;
    }
    return out;
}

SpinorField step(const SpinorField& field, const Unitary2& coin) {
    const int n = field.grid.n_sites;
    SpinorField mixed(field.grid);
    const Mat2& c = coin.mat();
    for (int site = 0; site < n; ++site)
        mixed.data[static_cast<std::size_t>(site)] = c * field.data[static_cast<std::size_t>(site)];
    return apply_shift(mixed);
}

SpinorField evolve(SpinorField field, const Unitary2& coin, long steps) {
    if (steps < 0) throw Error(ErrorCode::invalid_argument, "evolve: steps must be >= 0");
    for (long i = 0; i < steps; ++i) field = step(field, coin);
    return field;
}

Mat2 generator_matrix(double k, const Unitary2& coin, int n, double dx, double dt) {
    if (n < 1) throw Error(ErrorCode::invalid_argument, "generator_matrix: n must be >= 1");
    if (!(dt > 0.0)) throw Error(ErrorCode::invalid_argument, "generator_matrix: dt must be > 0");
    const Mat2 m = exp_i_z(k * dx) * coin.mat();
    const Mat2 p = mat_pow(m, static_cast<unsigned>(n));
    return cplx(0.0, 1.0) * (1.0 / (n * dt)) * (p - mat2_identity());
}

SpinorField discrete_derivative(const SpinorField& field, const StepPlan& plan) {
    if (field.grid != plan.grid)
        throw Error(ErrorCode::grid_mismatch, "discrete_derivative: grid mismatch");
    SpinorField advanced = evolve(field, plan.coin, plan.skip_n);
    const double inv = 1.0 / (plan.skip_n * plan.dt);
    SpinorField out(field.grid);
    for (std::size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = cplx(inv, 0.0) * (advanced.data[i] - field.data[i]);
    return out;
}

}  // namespace qw
