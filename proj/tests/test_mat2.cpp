#include <doctest.h>

#include "qw/mat2.hpp"
#include "test_helpers.hpp"

using namespace qw;

TEST_CASE("op_norm: known values") {
    CHECK(op_norm(mat2_identity()) == doctest::Approx(1.0));
    CHECK(op_norm(mat2_zero()) == doctest::Approx(0.0));
    CHECK(op_norm(2.0 * pauli_x()) == doctest::Approx(2.0));
    // sigma_x - I has singular values {2, 0}
    CHECK(op_norm(pauli_x() - mat2_identity()) == doctest::Approx(2.0));
    // scaling
    const Mat2 m{cplx(1, 2), cplx(0, -1), cplx(3, 0), cplx(-1, 1)};
    CHECK(op_norm(cplx(0, 2) * m) == doctest::Approx(2.0 * op_norm(m)));
}

TEST_CASE("pauli algebra sanity") {
    CHECK(qwtest::entry_dist(pauli_x() * pauli_x(), mat2_identity()) < 1e-15);
    CHECK(qwtest::entry_dist(pauli_y() * pauli_y(), mat2_identity()) < 1e-15);
    CHECK(qwtest::entry_dist(pauli_z() * pauli_z(), mat2_identity()) < 1e-15);
    // sigma_z sigma_y = -i sigma_x
    CHECK(qwtest::entry_dist(pauli_z() * pauli_y(), cplx(0, -1) * pauli_x()) < 1e-15);
}

TEST_CASE("exp_minus_i: unitarity and known exponentials") {
    qw::Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Mat2 h = pauli_dot(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)) +
                       rng.uniform(-1, 1) * mat2_identity();
        const Mat2 u = exp_minus_i(h, rng.uniform(0.0, 5.0));
        CHECK(unitary_within(u, 1e-12));
    }
    // e^{-i (pi/2) sigma_x} = -i sigma_x
    CHECK(qwtest::entry_dist(exp_minus_i(pauli_x(), qwtest::pi / 2), cplx(0, -1) * pauli_x()) < 1e-14);
    // zero Hamiltonian
    CHECK(qwtest::entry_dist(exp_minus_i(mat2_zero(), 3.7), mat2_identity()) < 1e-15);
}

TEST_CASE("hermitian_eigs matches the trace/norm closed form") {
    const Mat2 h = 0.5 * pauli_x() + 1.25 * pauli_z() + 0.75 * mat2_identity();
    const auto e = hermitian_eigs(h);
    const double w = std::sqrt(0.5 * 0.5 + 1.25 * 1.25);
    CHECK(e.plus == doctest::Approx(0.75 + w).epsilon(1e-14));
    CHECK(e.minus == doctest::Approx(0.75 - w).epsilon(1e-14));
}

TEST_CASE("mat_pow") {
    CHECK(qwtest::entry_dist(mat_pow(pauli_x(), 2), mat2_identity()) < 1e-15);
    CHECK(qwtest::entry_dist(mat_pow(pauli_x(), 5), pauli_x()) < 1e-15);
    const Mat2 rz = rot_z(0.3);
    CHECK(qwtest::entry_dist(mat_pow(rz, 7), rot_z(2.1)) < 1e-13);
}

TEST_CASE("rotation conventions") {
    // R_y(pi/2) is the balanced mixing matrix
    const Mat2 h = rot_y(qwtest::pi / 2);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(qwtest::entry_dist(h, Mat2{r, -r, r, r}) < 1e-15);
    // exp_i_z(a) = diag(e^{ia}, e^{-ia}) = R_z(-2a)
    CHECK(qwtest::entry_dist(exp_i_z(0.4), rot_z(-0.8)) < 1e-15);
}
