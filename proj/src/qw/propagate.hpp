#ifndef QW_PROPAGATE_HPP
#define QW_PROPAGATE_HPP

#include <vector>

#include "qw/lattice.hpp"
#include "qw/limits.hpp"

namespace qw {

// Exact per-mode evolution exp(-i H(k_j) t) via the closed-form 2x2 matrix
// exponential. The reference oracle for every other propagation route.
SpinorField spectral_evolve(const SpinorField& field, const KSpaceHamiltonian& h, double t);

// Bessel function of the first kind, integer order, by Miller's downward
// recurrence with sum normalization. |order| <= 1e6, |z| <= 1e4.
double bessel_j(long order, double z);

// J_0..J_nmax(z) in one downward pass.
std::vector<double> bessel_j_array(long nmax, double z);

// Kernel data for the closed-form propagator of the even-step continuous time
// limit: alpha = (phi0+psi0)/2, beta = (phi0-psi0)/2, convolution truncated at
// |offset| > cutoff. The tail bound needs cutoff >= ceil(|theta1| t / 2) + 40.
struct BesselKernelSpec {
    double theta1;
    double alpha;
    double beta;
    double t;
    int cutoff;

    BesselKernelSpec(double theta1_, double alpha_, double beta_, double t_, int cutoff_);
    static int min_cutoff(double theta1, double t);
    static BesselKernelSpec from_angles(double theta1, double phi0, double psi0, double t);
};

// Closed-form time evolution as a truncated Bessel convolution:
//   psi_L(m,t) = 1/2 sum_d i^d e^{i alpha d} J_d(theta1 t/2)
//                [ (1+(-1)^d) psi_L(m-d,0) + i e^{i beta} (1-(-1)^d) psi_R(m-d+1,0) ]
//   psi_R(m,t) = 1/2 sum_d i^d e^{i alpha d} J_d(theta1 t/2)
//                [ -i e^{-i beta} (1-(-1)^d) psi_L(m-d-1,0) + (1+(-1)^d) psi_R(m-d,0) ]
// with periodic site indices.
SpinorField bessel_propagate(const SpinorField& field0, const BesselKernelSpec& spec);

// Residual of the Bessel product-series collapse used by the kernel derivation:
//   | (-1)^n sum_j (-i)^j J_j(z cos a) J_{n-j}(z sin a)  -  i^n J_n(z) e^{i a n} |.
double graf_convolution_check(double alpha, double z, int n);

// Lattice-Laplacian walk evolution, exact in k-space: every mode k picks up
// e^{ i sign (theta1/4) (2 cos(k dx) - 2) t }, identically on both components.
SpinorField ctqw_evolve(const SpinorField& field, double theta1, int sign, double t);

struct SplitPair {
    SpinorField plus;
    SpinorField minus;
};

// Spectral projections of field0 onto the two analytic eigenbranches of
// ct_hamiltonian(theta1, phi0, psi0): "plus" is the branch with eigenvalue
// +(theta1/2) cos(k dx - alpha) at every k. Each projection is then dressed
// by e^{-i alpha x/dx}. Note the dressing is single-valued on the ring only
// when alpha is a multiple of 2 pi / n_sites.
SplitPair split_pm(const SpinorField& field0, double theta1, double phi0, double psi0);

// Superposition e^{i alpha x/dx} ( e^{-i theta1 t/2} plus + e^{+i theta1 t/2} minus ).
// The pair must have been advanced to time t with ctqw_evolve, the plus
// component with sign -1 and the minus component with sign +1.
SpinorField reconstruct(const SplitPair& pair, double theta1, double alpha, double t,
                        const Grid& grid);

}  // namespace qw

#endif
