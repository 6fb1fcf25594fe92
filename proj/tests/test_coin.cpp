#include <doctest.h>

#include "qw/coin.hpp"
#include "test_helpers.hpp"

using namespace qw;
using qwtest::pi;

TEST_CASE("compose_zyz: identity and unitarity over random angles") {
    CHECK(qwtest::entry_dist(compose_zyz({0, 0, 0, 0}).mat(), mat2_identity()) < 1e-15);
    qw::Rng rng(21);
    for (int i = 0; i < 1000; ++i) {
        const Unitary2 u = compose_zyz({rng.uniform(-pi, pi), rng.uniform(-pi, pi),
                                        rng.uniform(-pi, pi), rng.uniform(-pi, pi)});
        CHECK(unitary_within(u.mat(), 1e-12));
    }
}

TEST_CASE("compose_zyz: the x-rotation walk coin in ZYZ angles") {
    // (0, -pi/2, pi - 2 gamma dt, pi/2) composes to e^{-i(pi/2 - gamma dt) sigma_x}
    const double gamma = 1.0, dt = 0.01;
    const Unitary2 c = compose_zyz({0.0, -pi / 2, pi - 2 * gamma * dt, pi / 2});
    CHECK(qwtest::entry_dist(c.mat(), qwtest::exp_x(pi / 2 - gamma * dt)) < 1e-12);
}

TEST_CASE("decompose_zyz: canonical cases") {
    const CoinZYZ id = decompose_zyz(Unitary2(mat2_identity()));
    CHECK(id.delta == doctest::Approx(0.0));
    CHECK(id.psi == doctest::Approx(0.0));
    CHECK(id.theta == doctest::Approx(0.0));
    CHECK(id.phi == doctest::Approx(0.0));

    // sigma_x exercises the theta = pi branch
    const CoinZYZ sx = decompose_zyz(Unitary2(pauli_x()));
    CHECK(sx.theta == doctest::Approx(pi));
    CHECK(sx.psi == doctest::Approx(0.0));
    CHECK(qwtest::entry_dist(compose_zyz(sx).mat(), pauli_x()) < 1e-12);

    // the balanced mixing coin
    const CoinZYZ h = decompose_zyz(hadamard_coin());
    CHECK(qwtest::entry_dist(compose_zyz(h).mat(), hadamard_coin().mat()) < 1e-12);

    CHECK_THROWS_AS(Unitary2(Mat2{1.0, 1.0, 0.0, 1.0}), Error);
}

TEST_CASE("decompose_zyz round trip including degenerate theta") {
    qw::Rng rng(22);
    for (int i = 0; i < 1000; ++i) {
        CoinZYZ angles{rng.uniform(-pi, pi), rng.uniform(-pi, pi), rng.uniform(0.0, pi),
                       rng.uniform(-pi, pi)};
        if (i % 10 == 0) angles.theta = 0.0;
        if (i % 10 == 5) angles.theta = pi;
        const Unitary2 u = compose_zyz(angles);
        const CoinZYZ back = decompose_zyz(u);
        CHECK(back.theta >= 0.0);
        CHECK(back.theta <= pi);
        CHECK(qwtest::entry_dist(compose_zyz(back).mat(), u.mat()) < 1e-10);
    }
}

TEST_CASE("coin_at: identity, x-rotation series, continuity") {
    CHECK(qwtest::entry_dist(coin_at({}, 0.0).mat(), mat2_identity()) < 1e-15);

    // theta(dt) = pi - 2 gamma dt with gamma = 1, so theta1 = -2
    const CoinSeries strauch_zero_delta{0.0, -pi / 2, 0.0, pi, -2.0, pi / 2, 0.0};
    const double dt = 0.01;
    CHECK(qwtest::entry_dist(coin_at(strauch_zero_delta, dt).mat(),
                             qwtest::exp_x(pi / 2 - dt)) < 1e-12);

    const double d = op_norm(coin_at(strauch_zero_delta, 1e-6).mat() -
                             coin_at(strauch_zero_delta, 0.0).mat());
    CHECK(d <= 10.0 * 1e-6);
    CHECK_THROWS_AS(coin_at(strauch_zero_delta, -0.1), Error);
}

TEST_CASE("ct_family_coin: sigma_y seed and relation to the constrained ZYZ form") {
    CHECK(qwtest::entry_dist(ct_family_coin(0, 0, 1.7, 0.0).mat(), pauli_y()) < 1e-15);

    // The delta = -pi/2, theta0 = pi ZYZ composition equals minus this family;
    // the global sign cancels in any even power.
    qw::Rng rng(23);
    for (int i = 0; i < 20; ++i) {
        const double psi0 = rng.uniform(-pi, pi), phi0 = rng.uniform(-pi, pi);
        const double theta1 = rng.uniform(-4, 4), dt = rng.uniform(0, 0.1);
        const CoinSeries s{-pi / 2, psi0, 0.0, pi, theta1, phi0, 0.0};
        const Mat2 a = coin_at(s, dt).mat();
        const Mat2 b = ct_family_coin(psi0, phi0, theta1, dt).mat();
        CHECK(qwtest::entry_dist(a, cplx(-1.0, 0.0) * b) < 1e-12);
    }

    // with psi0 = -pi/2, phi0 = pi/2 the family is sigma_x e^{-i theta1 dt sigma_x / 2}
    const double theta1 = -2.0, dt = 0.03;
    const Mat2 c = ct_family_coin(-pi / 2, pi / 2, theta1, dt).mat();
    const Mat2 expect = pauli_x() * exp_minus_i(pauli_x(), 0.5 * theta1 * dt);
    CHECK(qwtest::entry_dist(c, expect) < 1e-13);
}

TEST_CASE("root_unity_coin: identity, sigma_z, and the power identity") {
    CHECK(qwtest::entry_dist(root_unity_coin(0, 3, PauliAxis::x_axis()).mat(), mat2_identity()) <
          1e-15);
    CHECK(qwtest::entry_dist(root_unity_coin(1, 2, PauliAxis::z_axis()).mat(), pauli_z()) < 1e-14);

    qw::Rng rng(24);
    for (int m = 1; m <= 8; ++m) {
        for (int rep = 0; rep < 20; ++rep) {
            const auto axis = PauliAxis::normalized(rng.uniform(-1, 1), rng.uniform(-1, 1),
                                                    rng.uniform(-1, 1));
            for (int l = 0; l < 2 * m; ++l)
                CHECK(power_deviation(root_unity_coin(l, m, axis), m) <= 1e-12);
        }
    }
}

TEST_CASE("power_deviation: values and global-phase behaviour") {
    CHECK(power_deviation(Unitary2(mat2_identity()), 5) == doctest::Approx(0.0));
    CHECK(power_deviation(Unitary2(pauli_x()), 2) == doctest::Approx(0.0));
    CHECK(power_deviation(hadamard_coin(), 2) > 0.5);

    // an m-th root-of-unity phase leaves the deviation unchanged, a generic one does not
    qw::Rng rng(25);
    const Unitary2 u = qwtest::random_unitary(rng);
    const int m = 3;
    const double base = power_deviation(u, m);
    const Unitary2 u_rooted(std::exp(cplx(0.0, 2.0 * pi / m)) * u.mat());
    CHECK(power_deviation(u_rooted, m) == doctest::Approx(base).epsilon(1e-12));
    const Unitary2 u_generic(std::exp(cplx(0.0, 0.9)) * u.mat());
    CHECK(std::abs(power_deviation(u_generic, m) - base) > 1e-3);
}

TEST_CASE("homotopy_probe: varying family, exact root, and a coin that never approaches") {
    const auto dts = LimitSchedule::geometric(std::pow(2.0, -4), std::pow(2.0, -14));

    const auto family = [](double dt) { return ct_family_coin(0.4, -1.1, 2.0, dt); };
    const auto rep = homotopy_probe(family, 2, dts);
    CHECK(approaches_root_of_unity(rep));
    CHECK(rep.fitted_slope == doctest::Approx(1.0).epsilon(0.1));

    const auto constant_root = [](double) { return root_unity_coin(1, 2, PauliAxis::z_axis()); };
    const auto rep2 = homotopy_probe(constant_root, 2, dts);
    CHECK(approaches_root_of_unity(rep2));
    CHECK(rep2.max_distance() <= 1e-12);

    const auto constant_h = [](double) { return hadamard_coin(); };
    const auto rep3 = homotopy_probe(constant_h, 2, dts);
    CHECK_FALSE(approaches_root_of_unity(rep3));
    CHECK(rep3.max_distance() > 0.5);

    CHECK_THROWS_AS(homotopy_probe(family, 2, {0.1, 0.05, 0.025}), Error);
}

TEST_CASE("pauli axis validation") {
    CHECK_THROWS_AS(PauliAxis(1.0, 1.0, 0.0), Error);
    CHECK_NOTHROW(PauliAxis::normalized(3.0, -1.0, 2.0));
    CHECK_THROWS_AS(PauliAxis::normalized(0.0, 0.0, 0.0), Error);
}
