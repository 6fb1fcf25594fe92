#ifndef QW_COIN_HPP
#define QW_COIN_HPP

#include <functional>
#include <vector>

#include "qw/mat2.hpp"
#include "qw/report.hpp"

namespace qw {

// A 2x2 matrix checked unitary (to 1e-12) on construction.
class Unitary2 {
  public:
    explicit Unitary2(const Mat2& m) : m_(m) {
        if (!unitary_within(m, 1e-12))
            throw Error(ErrorCode::not_unitary, "Unitary2: U†U deviates from identity");
    }
    const Mat2& mat() const { return m_; }

  private:
    Mat2 m_;
};

// Euler angles of C = e^{i delta} R_z(psi) R_y(theta) R_z(phi).
struct CoinZYZ {
    double delta = 0.0;
    double psi = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

// Delta-t expansion coefficients of the angles: psi = psi0 + psi1*dt, etc.
// delta carries no dt term; higher orders do not affect the limits.
struct CoinSeries {
    double delta = 0.0;
    double psi0 = 0.0, psi1 = 0.0;
    double theta0 = 0.0, theta1 = 0.0;
    double phi0 = 0.0, phi1 = 0.0;
};

struct PauliAxis {
    double nx, ny, nz;

    PauliAxis(double nx_, double ny_, double nz_) : nx(nx_), ny(ny_), nz(nz_) {
        const double n2 = nx * nx + ny * ny + nz * nz;
        if (std::abs(n2 - 1.0) > 1e-12)
            throw Error(ErrorCode::invalid_argument, "PauliAxis: |n| must be 1");
    }
    static PauliAxis normalized(double x, double y, double z);
    static PauliAxis x_axis() { return {1.0, 0.0, 0.0}; }
    static PauliAxis y_axis() { return {0.0, 1.0, 0.0}; }
    static PauliAxis z_axis() { return {0.0, 0.0, 1.0}; }
    Mat2 dot_sigma() const { return pauli_dot(nx, ny, nz); }
};

Unitary2 compose_zyz(const CoinZYZ& c);

// Inverse of compose_zyz: theta in [0, pi], delta/psi/phi in (-pi, pi].
// Degenerate theta in {0, pi} canonicalized with psi = 0.
CoinZYZ decompose_zyz(const Unitary2& u);

// Coin at finite dt from the series angles (first order only).
Unitary2 coin_at(const CoinSeries& series, double dt);

// The family admitting an even-step continuous time limit:
// e^{-i psi0 sigma_z/2} sigma_y e^{-i theta1 dt sigma_y/2} e^{-i phi0 sigma_z/2}.
Unitary2 ct_family_coin(double psi0, double phi0, double theta1, double dt);

// e^{i pi l/m} e^{-i (pi l/m) n.sigma}; satisfies C^m = I.
Unitary2 root_unity_coin(int l, int m, const PauliAxis& axis);

// Operator norm of u^m - I.
double power_deviation(const Unitary2& u, int m);

// Records power_deviation(family(dt), m) along the schedule and fits the
// log-log slope. Verdict converged <=> the family approaches a root of unity.
ConvergenceReport homotopy_probe(const std::function<Unitary2(double)>& family, int m,
                                 const std::vector<double>& dts);

inline bool approaches_root_of_unity(const ConvergenceReport& rep) {
    return rep.verdict == Verdict::converged;
}

// The two-component balanced coin of the classic walk, (1/sqrt2) [[1,-1],[1,1]].
Unitary2 hadamard_coin();

}  // namespace qw

#endif
