#ifndef QW_MAT2_HPP
#define QW_MAT2_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qw {

using cplx = std::complex<double>;

// Two-component internal state (left/right amplitudes) at one lattice site.
struct Spinor {
    cplx l{0.0, 0.0};
    cplx r{0.0, 0.0};
};

inline Spinor operator+(const Spinor& a, const Spinor& b) { return {a.l + b.l, a.r + b.r}; }
inline Spinor operator-(const Spinor& a, const Spinor& b) { return {a.l - b.l, a.r - b.r}; }
inline Spinor operator*(const cplx& s, const Spinor& a) { return {s * a.l, s * a.r}; }
inline double norm2(const Spinor& a) { return std::norm(a.l) + std::norm(a.r); }

// Dense 2x2 complex matrix, row-major. Small enough that everything is by value.
struct Mat2 {
    cplx m00{0.0, 0.0};
    cplx m01{0.0, 0.0};
    cplx m10{0.0, 0.0};
    cplx m11{0.0, 0.0};
};

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}
inline Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}
inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}
inline Mat2 operator*(const cplx& s, const Mat2& a) {
    return {s * a.m00, s * a.m01, s * a.m10, s * a.m11};
}
inline Mat2 operator*(double s, const Mat2& a) { return cplx(s, 0.0) * a; }
inline Spinor operator*(const Mat2& a, const Spinor& v) {
    return {a.m00 * v.l + a.m01 * v.r, a.m10 * v.l + a.m11 * v.r};
}

inline Mat2 mat2_zero() { return {}; }
inline Mat2 mat2_identity() { return {1.0, 0.0, 0.0, 1.0}; }
inline Mat2 pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
inline Mat2 pauli_y() { return {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}; }
inline Mat2 pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }

inline Mat2 adjoint(const Mat2& a) {
    return {std::conj(a.m00), std::conj(a.m10), std::conj(a.m01), std::conj(a.m11)};
}
inline cplx trace(const Mat2& a) { return a.m00 + a.m11; }
inline cplx det(const Mat2& a) { return a.m00 * a.m11 - a.m01 * a.m10; }

// Largest singular value, from the closed-form eigenvalues of A†A.
inline double op_norm(const Mat2& a) {
    const double p = std::norm(a.m00) + std::norm(a.m01) + std::norm(a.m10) + std::norm(a.m11);
    const double d = std::abs(det(a));
    const double disc = std::max(p * p - 4.0 * d * d, 0.0);
    return std::sqrt(std::max(0.5 * (p + std::sqrt(disc)), 0.0));
}

inline double distance(const Mat2& a, const Mat2& b) { return op_norm(a - b); }

inline bool unitary_within(const Mat2& a, double tol) {
    return op_norm(adjoint(a) * a - mat2_identity()) <= tol;
}
inline bool hermitian_within(const Mat2& a, double tol) {
    return op_norm(a - adjoint(a)) <= tol;
}

// v . sigma for a real 3-vector (vx, vy, vz).
inline Mat2 pauli_dot(double vx, double vy, double vz) {
    return {cplx(vz, 0.0), cplx(vx, -vy), cplx(vx, vy), cplx(-vz, 0.0)};
}

// Decompose a Hermitian H = mu*I + v.sigma into (mu, vx, vy, vz).
struct PauliDecomp {
    double mu, vx, vy, vz;
};
inline PauliDecomp pauli_decompose(const Mat2& h) {
    return {0.5 * (h.m00.real() + h.m11.real()), h.m01.real(), -h.m01.imag(),
            0.5 * (h.m00.real() - h.m11.real())};
}

// exp(-i t H) for Hermitian H, exact: e^{-i mu t}(cos(wt) I - i sin(wt) v^.sigma).
inline Mat2 exp_minus_i(const Mat2& h, double t) {
    const PauliDecomp p = pauli_decompose(h);
    const double w = std::sqrt(p.vx * p.vx + p.vy * p.vy + p.vz * p.vz);
    const cplx phase = std::exp(cplx(0.0, -p.mu * t));
    const double c = std::cos(w * t);
    const double s = (w > 0.0) ? std::sin(w * t) / w : t;
    const cplx mis(0.0, -s);
    Mat2 out = c * mat2_identity() + mis * pauli_dot(p.vx, p.vy, p.vz);
    return phase * out;
}

// Eigenvalues of a Hermitian 2x2, descending.
struct HermitianEigs {
    double plus, minus;
};
inline HermitianEigs hermitian_eigs(const Mat2& h) {
    const PauliDecomp p = pauli_decompose(h);
    const double w = std::sqrt(p.vx * p.vx + p.vy * p.vy + p.vz * p.vz);
    return {p.mu + w, p.mu - w};
}

inline Mat2 mat_pow(Mat2 a, unsigned n) {
    Mat2 r = mat2_identity();
    while (n > 0) {
        if (n & 1u) r = r * a;
        a = a * a;
        n >>= 1u;
    }
    return r;
}

// Rotation conventions: R_z(a) = e^{-i a sigma_z / 2}, R_y(a) = e^{-i a sigma_y / 2}.
inline Mat2 rot_z(double a) {
    return {std::exp(cplx(0.0, -0.5 * a)), 0.0, 0.0, std::exp(cplx(0.0, 0.5 * a))};
}
inline Mat2 rot_y(double a) {
    const double c = std::cos(0.5 * a), s = std::sin(0.5 * a);
    return {cplx(c, 0.0), cplx(-s, 0.0), cplx(s, 0.0), cplx(c, 0.0)};
}
// e^{i a sigma_z} (diagonal phase), the Fourier symbol workhorse.
inline Mat2 exp_i_z(double a) {
    return {std::exp(cplx(0.0, a)), 0.0, 0.0, std::exp(cplx(0.0, -a))};
}

// Error taxonomy shared by the whole library; the C API maps these to codes.
enum class ErrorCode {
    invalid_argument,
    not_unitary,
    non_hermitian,
    degenerate_schedule,
    odd_step_count,
    insufficient_data,
    cutoff_too_small,
    out_of_range,
    grid_mismatch,
    invalid_config,
    io_error,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace qw

#endif
