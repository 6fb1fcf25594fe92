#ifndef QW_LIMITS_HPP
#define QW_LIMITS_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qw/coin.hpp"
#include "qw/report.hpp"
#include "qw/walk.hpp"

namespace qw {

// Hermitian 2x2 matrix-valued function of quasimomentum.
struct KSpaceHamiltonian {
    std::function<Mat2(double)> evaluator;
    std::map<std::string, double> params;
    std::string label;

    Mat2 operator()(double k) const { return evaluator(k); }
};

// Closed-form generator of the even-step continuous time limit:
//   H(k) = (theta1/4) (e^{i phi0 sigma_z} + e^{2 i k dx sigma_z} e^{-i psi0 sigma_z}) sigma_y.
// The sign is fixed against the finite-dt generator, which this limit must
// match; see ct_limit_check.
KSpaceHamiltonian ct_hamiltonian(double theta1, double phi0, double psi0, double dx);

// Eigen data of a ct_hamiltonian at one momentum. lambda_plus >= lambda_minus;
// eigenvectors come from the closed form ( +- i e^{i(k dx + beta)}, 1 )/sqrt2,
// with that fixed orientation kept at the degenerate points cos(k dx - alpha) = 0.
struct CtSpectrum {
    double lambda_plus;
    double lambda_minus;
    Spinor v_plus;
    Spinor v_minus;
    bool degenerate;
};
CtSpectrum ct_spectrum(const KSpaceHamiltonian& h, double k);

// Even-n generator convergence: distance at each dt is the max over k_samples
// of || generator_matrix(k, coin_at(series,dt), n, dx, dt) - H_closed(k) ||.
// Throws Error(odd_step_count) for odd n.
ConvergenceReport ct_limit_check(const CoinSeries& series, int n,
                                 const std::vector<double>& k_samples,
                                 const LimitSchedule& schedule);

// Odd-n harness: records ||generator|| itself, which grows like 1/dt.
ConvergenceReport divergence_check(const CoinSeries& series, int n, double k,
                                   const LimitSchedule& schedule);

// Space-time limit of the non-varying root-of-unity coin, skipping m steps,
// along dx = v dt. The limit is s * k * v * n_z * (n.sigma) with the unit sign
// s fitted from the smallest-dt generator (analytically s = -1).
struct DiracLimitResult {
    ConvergenceReport report;
    int transport_sign;                   // fitted s
    std::function<Mat2(double)> limit;    // Richardson-extrapolated generator
};
DiracLimitResult dirac_limit_check(int l, int m, const PauliAxis& axis, double v,
                                   const std::vector<double>& k_samples,
                                   const LimitSchedule& schedule);

// dx -> 0 limit of ct_hamiltonian under theta1 = alpha/dx, phi0 + psi0 = pi:
//   H(k) = (alpha/2) e^{-i psi0 sigma_z} k sigma_x   (sign matched to ct_hamiltonian).
KSpaceHamiltonian ctcs_hamiltonian(double alpha_coef, double psi0);

// Distance between ct_hamiltonian(alpha/dx, pi - psi0 + constraint_offset, psi0, dx)
// and ctcs_hamiltonian along the dx schedule. With constraint_offset = 0 this
// converges O(dx); a nonzero offset diverges like 1/dx.
ConvergenceReport ctcs_limit_check(double alpha_coef, double psi0,
                                   const std::vector<double>& k_samples,
                                   const std::vector<double>& dx_schedule,
                                   double constraint_offset = 0.0);

// Varying-coin space-time limit with shift symbol e^{i k dx A} and coin
// e^{i coin_sign dt B}: generator converges to -(k v A + coin_sign B).
// Signs are fitted and reported; inputs must be Hermitian.
struct DiracTypeResult {
    ConvergenceReport report;
    int transport_sign;                 // fitted coefficient sign of k v A
    int mass_sign;                      // fitted coefficient sign of B
    std::function<Mat2(double)> limit;  // Richardson-extrapolated generator
};
DiracTypeResult dirac_type_limit_check(const Mat2& a_op, const Mat2& b_op, double v,
                                       const std::vector<double>& k_samples,
                                       const LimitSchedule& schedule, int coin_sign = +1);

}  // namespace qw

#endif
