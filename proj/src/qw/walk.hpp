#ifndef QW_WALK_HPP
#define QW_WALK_HPP

#include "qw/coin.hpp"
#include "qw/lattice.hpp"

namespace qw {

struct StepPlan {
    Unitary2 coin;
    int skip_n;
    double dt;
    Grid grid;

    StepPlan(const Unitary2& c, int skip_n_, double dt_, const Grid& g)
        : coin(c), skip_n(skip_n_), dt(dt_), grid(g) {
        if (skip_n < 1) throw Error(ErrorCode::invalid_argument, "StepPlan: skip_n must be >= 1");
        if (!(dt > 0.0)) throw Error(ErrorCode::invalid_argument, "StepPlan: dt must be positive");
    }
};

// Conditional translation with periodic wrap: the left component reads from
// the right neighbor, the right component from the left.
//   L'(x) = L(x + dx),  R'(x) = R(x - dx)
// Fourier symbol e^{i k dx sigma_z}.
SpinorField apply_shift(const SpinorField& field);

// One walk step: coin at every site, then shift.
SpinorField step(const SpinorField& field, const Unitary2& coin);

SpinorField evolve(SpinorField field, const Unitary2& coin, long steps);

// Exact finite-dt generator at mode k: i [ (e^{i k dx sigma_z} C)^n - I ] / (n dt).
Mat2 generator_matrix(double k, const Unitary2& coin, int n, double dx, double dt);

// (evolve(field, coin, skip_n) - field) / (skip_n * dt), componentwise.
SpinorField discrete_derivative(const SpinorField& field, const StepPlan& plan);

}  // namespace qw

#endif
