#ifndef QW_LATTICE_HPP
#define QW_LATTICE_HPP

#include <functional>
#include <vector>

#include "qw/mat2.hpp"

namespace qw {

// Periodic 1D lattice: an even number of sites at spacing dx, x = n*dx.
struct Grid {
    int n_sites;
    double dx;

    Grid(int n_sites_, double dx_) : n_sites(n_sites_), dx(dx_) {
        if (n_sites < 2 || n_sites % 2 != 0)
            throw Error(ErrorCode::invalid_argument, "Grid: n_sites must be even and >= 2");
        if (!(dx > 0.0)) throw Error(ErrorCode::invalid_argument, "Grid: dx must be positive");
    }
    bool operator==(const Grid& o) const { return n_sites == o.n_sites && dx == o.dx; }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

// Mode j quasimomentum k_j = 2*pi*j/(N*dx), wrapped into [-pi/dx, pi/dx).
double mode_momentum(const Grid& grid, int j);

struct SpinorField {
    Grid grid;
    std::vector<Spinor> data;

    explicit SpinorField(const Grid& g) : grid(g), data(static_cast<std::size_t>(g.n_sites)) {}
    static SpinorField delta(const Grid& g, int site, const Spinor& s);
};

// Same storage, indexed by Fourier mode j instead of site.
struct KSpaceField {
    Grid grid;
    std::vector<Spinor> data;

    explicit KSpaceField(const Grid& g) : grid(g), data(static_cast<std::size_t>(g.n_sites)) {}
};

// Unnormalized forward sum: F(k_j) = sum_n e^{-i k_j n dx} f(n dx), per component.
KSpaceField dft_forward(const SpinorField& field);
// Inverse carries the 1/N: f(n dx) = (1/N) sum_j e^{i k_j n dx} F(k_j).
SpinorField dft_inverse(const KSpaceField& kfield);

// Plain site sum of |l|^2 + |r|^2 (no dx weight).
double total_norm(const SpinorField& field);
double total_norm(const KSpaceField& kfield);  // mode sum; Parseval pairs it with 1/N

enum class KOpMode { multiply, exponentiate };

// Conjugation by the DFT: field' = F^{-1}( M(k_j) F(field) ) with
// M = op(k) in multiply mode or exp(-i op(k) t) in exponentiate mode.
// Exponentiate mode requires op(k) Hermitian (||op-op†|| <= 1e-10 ||op||).
SpinorField apply_kspace_op(const SpinorField& field, const std::function<Mat2(double)>& op,
                            KOpMode mode, double t = 0.0);

}  // namespace qw

#endif
