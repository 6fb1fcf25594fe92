#include <doctest.h>

#include "qw/limits.hpp"
#include "qw/walk.hpp"
#include "test_helpers.hpp"

using namespace qw;
using qwtest::pi;

TEST_CASE("apply_shift moves the components in opposite directions") {
    const Grid g(8, 1.0);
    const auto fl = apply_shift(SpinorField::delta(g, 3, {1.0, 0.0}));
    CHECK(std::abs(fl.data[2].l - cplx(1.0, 0.0)) < 1e-15);  // L reads from the right
    const auto fr = apply_shift(SpinorField::delta(g, 3, {0.0, 1.0}));
    CHECK(std::abs(fr.data[4].r - cplx(1.0, 0.0)) < 1e-15);
    // periodic wrap
    const auto fw = apply_shift(SpinorField::delta(g, 0, {1.0, 0.0}));
    CHECK(std::abs(fw.data[7].l - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("shift in Fourier space is e^{i k dx sigma_z} mode by mode") {
    const Grid g(16, 0.7);
    qw::Rng rng(31);
    const auto f = rng.normalized_field(g);
    const auto kf_shifted = dft_forward(apply_shift(f));
    const auto kf = dft_forward(f);
    double dev = 0.0;
    for (int j = 0; j < g.n_sites; ++j) {
        const auto i = static_cast<std::size_t>(j);
        const Spinor expect = exp_i_z(mode_momentum(g, j) * g.dx) * kf.data[i];
        dev = std::max({dev, std::abs(kf_shifted.data[i].l - expect.l),
                        std::abs(kf_shifted.data[i].r - expect.r)});
    }
    CHECK(dev < 1e-12);
}

TEST_CASE("step: identity coin reduces to the shift") {
    const Grid g(8, 1.0);
    qw::Rng rng(32);
    const auto f = rng.normalized_field(g);
    CHECK(qwtest::field_dist(step(f, Unitary2(mat2_identity())), apply_shift(f)) < 1e-15);
}

TEST_CASE("step equals its Fourier-space conjugation e^{i k dx sz} C") {
    const Grid g(16, 0.6);
    qw::Rng rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = rng.normalized_field(g);
        const auto coin = qwtest::random_unitary(rng);
        const double dx = g.dx;
        const Mat2 cm = coin.mat();
        const auto via_k = apply_kspace_op(
            f, [dx, cm](double k) { return exp_i_z(k * dx) * cm; }, KOpMode::multiply);
        CHECK(qwtest::field_dist(step(f, coin), via_k) < 1e-12);
    }
}

TEST_CASE("step: balanced coin acting on a two-sided delta, written out by hand") {
    const Grid g(8, 1.0);
    const auto f = SpinorField::delta(g, 4, {cplx(0.6, 0.0), cplx(0.0, 0.8)});
    const auto out = step(f, hadamard_coin());
    const double r = 1.0 / std::sqrt(2.0);
    // coin output at site 4: L' = (psiL - psiR)/sqrt2, R' = (psiL + psiR)/sqrt2;
    // then L' lands at site 3 and R' at site 5
    CHECK(std::abs(out.data[3].l - r * (cplx(0.6, 0) - cplx(0, 0.8))) < 1e-15);
    CHECK(std::abs(out.data[5].r - r * (cplx(0.6, 0) + cplx(0, 0.8))) < 1e-15);
    CHECK(std::abs(out.data[4].l) < 1e-15);
    CHECK(std::abs(out.data[4].r) < 1e-15);
}

TEST_CASE("step preserves the norm over many random coins and fields") {
    const Grid g(8, 1.0);
    qw::Rng rng(33);
    for (int i = 0; i < 1000; ++i) {
        const auto f = rng.normalized_field(g);
        const auto out = step(f, qwtest::random_unitary(rng));
        CHECK(std::abs(total_norm(out) - 1.0) < 1e-12);
    }
}

TEST_CASE("evolve: zero steps, semigroup, accumulated drift") {
    const Grid g(16, 1.0);
    qw::Rng rng(34);
    const auto f = rng.normalized_field(g);
    const auto coin = qwtest::random_unitary(rng);

    CHECK(qwtest::field_dist(evolve(f, coin, 0), f) < 1e-15);

    const auto ab = evolve(f, coin, 7);
    const auto a_then_b = evolve(evolve(f, coin, 3), coin, 4);
    CHECK(qwtest::field_dist(ab, a_then_b) < 1e-13);

    auto g100 = f;
    for (int i = 0; i < 100; ++i) g100 = step(g100, coin);
    CHECK(std::abs(total_norm(g100) - 1.0) < 1e-12);
}

TEST_CASE("evolve with the sigma_z coin is two deterministic counter-shifts") {
    const Grid g(8, 1.0);
    const auto f = SpinorField::delta(g, 4, {cplx(0.6, 0.0), cplx(0.8, 0.0)});
    const auto out = evolve(f, root_unity_coin(1, 2, PauliAxis::z_axis()), 2);
    // diagonal coin => no mixing: |L| mass moves two sites left, |R| two right
    CHECK(norm2(out.data[2]) == doctest::Approx(0.36));
    CHECK(norm2(out.data[6]) == doctest::Approx(0.64));
}

TEST_CASE("generator_matrix: trivial zero and the reconstruction identity") {
    CHECK(op_norm(generator_matrix(0.0, Unitary2(mat2_identity()), 3, 1.0, 0.25)) < 1e-15);

    qw::Rng rng(35);
    for (int i = 0; i < 20; ++i) {
        const auto coin = qwtest::random_unitary(rng);
        const double k = rng.uniform(-pi, pi), dx = rng.uniform(0.1, 2.0);
        const double dt = rng.uniform(1e-4, 0.5);
        const int n = 1 + static_cast<int>(rng.below(4));
        const Mat2 gmat = generator_matrix(k, coin, n, dx, dt);
        // G * (n dt) / i + I must rebuild (e^{i k dx sz} C)^n
        const Mat2 rebuilt =
            (cplx(0.0, -1.0) * (n * dt)) * gmat + mat2_identity();
        const Mat2 direct = mat_pow(exp_i_z(k * dx) * coin.mat(), static_cast<unsigned>(n));
        CHECK(qwtest::entry_dist(rebuilt, direct) < 1e-14);
    }
}

TEST_CASE("generator_matrix: even-step limit of the varying family, and odd-step blowup") {
    // gamma = 1 family: theta1 = -2, psi0 = -pi/2, phi0 = pi/2; n = 2 generator
    // approaches (theta1/4)(I + e^{2 i k dx sz}) sx, i.e. -(1/2)(I + S^2) sx
    const double th1 = -2.0, dx = 1.0, dt = 1e-6;
    for (double k : {0.0, 0.7, 2.1}) {
        const Mat2 gmat = generator_matrix(k, ct_family_coin(-pi / 2, pi / 2, th1, dt), 2, dx, dt);
        const Mat2 limit = (th1 / 4.0) * ((mat2_identity() + exp_i_z(2 * k * dx)) * pauli_x());
        CHECK(qwtest::entry_dist(gmat, limit) <= 1e-4);
    }

    // n = 1: the norm grows like 1/dt (log-log slope -1)
    std::vector<ProbePoint> pts;
    for (double dt1 : LimitSchedule::geometric(std::pow(2.0, -4), std::pow(2.0, -14))) {
        const Mat2 gmat =
            generator_matrix(0.7, ct_family_coin(-pi / 2, pi / 2, th1, dt1), 1, dx, dt1);
        pts.push_back({dt1, dx, op_norm(gmat)});
    }
    const auto rep = make_report(std::move(pts));
    CHECK(rep.fitted_slope == doctest::Approx(-1.0).epsilon(0.1));
}

TEST_CASE("two-step expansion of the varying family is first-order exact") {
    // || (SC)^2 - [I - i 2 (theta1 dt/4)(Rz(-2 phi0) + Rz(2 psi0 - 4 k dx)) sy] || = O(dt^2)
    const double th1 = 1.9, phi0 = 0.4, psi0 = -0.9, dx = 0.7, k = 1.3;
    std::vector<ProbePoint> pts;
    for (double dt : {1e-2, 1e-3, 1e-4, 1e-5}) {
        const Mat2 sc = exp_i_z(k * dx) * ct_family_coin(psi0, phi0, th1, dt).mat();
        const Mat2 first = mat2_identity() -
                           cplx(0.0, 2.0 * th1 * dt / 4.0) *
                               ((rot_z(-2 * phi0) + rot_z(2 * psi0 - 4 * k * dx)) * pauli_y());
        pts.push_back({dt, dx, op_norm(sc * sc - first)});
    }
    const auto rep = make_report(std::move(pts));
    CHECK(rep.fitted_slope == doctest::Approx(2.0).epsilon(0.075));
}

TEST_CASE("discrete_derivative: vanishing numerator, Fourier consistency, linearity") {
    // On a 2-site ring the sigma_z walk squared is the identity
    const Grid tiny(2, 1.0);
    qw::Rng rng(36);
    const auto f2 = rng.normalized_field(tiny);
    const StepPlan plan(root_unity_coin(1, 2, PauliAxis::z_axis()), 2, 0.125, tiny);
    const auto deriv = discrete_derivative(f2, plan);
    CHECK(total_norm(deriv) < 1e-24);

    // F(discrete_derivative) = -i G(k) F(field) mode by mode
    const Grid g(8, 0.9);
    const auto f = rng.normalized_field(g);
    const auto coin = qwtest::random_unitary(rng);
    const StepPlan plan2(coin, 3, 0.2, g);
    const auto kd = dft_forward(discrete_derivative(f, plan2));
    const auto kf = dft_forward(f);
    double dev = 0.0;
    for (int j = 0; j < g.n_sites; ++j) {
        const auto i = static_cast<std::size_t>(j);
        const Mat2 gm = generator_matrix(mode_momentum(g, j), coin, 3, g.dx, 0.2);
        const Spinor expect = (cplx(0.0, -1.0) * gm) * kf.data[i];
        dev = std::max({dev, std::abs(kd.data[i].l - expect.l), std::abs(kd.data[i].r - expect.r)});
    }
    CHECK(dev < 1e-12);

    // linearity
    const auto fa = rng.normalized_field(g);
    const auto fb = rng.normalized_field(g);
    const cplx a{0.4, 0.3}, b{-0.8, 0.1};
    SpinorField mix(g);
    for (std::size_t i = 0; i < mix.data.size(); ++i)
        mix.data[i] = a * fa.data[i] + b * fb.data[i];
    const auto dmix = discrete_derivative(mix, plan2);
    const auto da = discrete_derivative(fa, plan2);
    const auto db = discrete_derivative(fb, plan2);
    double ldev = 0.0;
    for (std::size_t i = 0; i < mix.data.size(); ++i) {
        ldev = std::max(ldev, std::abs(dmix.data[i].l - (a * da.data[i].l + b * db.data[i].l)));
        ldev = std::max(ldev, std::abs(dmix.data[i].r - (a * da.data[i].r + b * db.data[i].r)));
    }
    CHECK(ldev < 1e-12);
}
