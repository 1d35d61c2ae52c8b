#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "heun/elliptic.hpp"

using namespace heun;

namespace {

// Oracle: truncated lattice sum for wp, independent of the theta engine.
Complex wp_lattice_sum(Complex z, Complex w1, Complex w3, int N) {
    Complex s = 1.0 / (z * z);
    for (int m = -N; m <= N; ++m)
        for (int n = -N; n <= N; ++n) {
            if (m == 0 && n == 0) continue;
            Complex om = 2.0 * static_cast<double>(m) * w1 + 2.0 * static_cast<double>(n) * w3;
            s += 1.0 / ((z - om) * (z - om)) - 1.0 / (om * om);
        }
    return s;
}

std::mt19937 rng(2024);

Complex random_cell_point(const Lattice& L) {
    std::uniform_real_distribution<double> u(-0.45, 0.45);
    for (;;) {
        Complex z = u(rng) * 2.0 * L.omega1 + u(rng) * 2.0 * L.omega3;
        if (std::abs(z) > 0.15 * std::abs(L.omega1)) return z;
    }
}

}  // namespace

TEST_CASE("lemniscatic lattice: Legendre relation and symmetric branch points") {
    Lattice L = lattice_from_half_periods(Complex(1, 0), Complex(0, 1));
    Complex leg = L.eta[0] * L.omega3 - L.eta[2] * L.omega1;
    CHECK(std::abs(leg - Complex(0, M_PI / 2)) < 1e-12);

    CHECK(std::abs(L.e[1]) < 1e-12);
    CHECK(std::abs(L.e[0] + L.e[2]) < 1e-12);
    CHECK(std::abs(L.e[0].imag()) < 1e-12);

    // independent oracle: truncated lattice sums at the half-periods
    Complex o1 = wp_lattice_sum(L.omega1, L.omega1, L.omega3, 200);
    Complex o2 = wp_lattice_sum(L.omega2, L.omega1, L.omega3, 200);
    CHECK(std::abs(L.e[0] - o1) < 2e-4);
    CHECK(std::abs(L.e[1] - o2) < 2e-4);
}

TEST_CASE("theta engine matches lattice-sum oracle at generic points") {
    Lattice L = lattice_from_half_periods(Complex(1.1, 0.2), Complex(-0.3, 0.9));
    for (int i = 0; i < 4; ++i) {
        Complex z = random_cell_point(L);
        Complex o = wp_lattice_sum(z, L.omega1, L.omega3, 150);
        CHECK(std::abs(L.wp(z) - o) < 5e-4 * (1.0 + std::abs(o)));
    }
}

TEST_CASE("basic invariants on two lattices") {
    for (auto [w1, w3] : {std::pair<Complex, Complex>{{1, 0}, {0.3, 1.2}},
                          std::pair<Complex, Complex>{{0.9, -0.1}, {0.2, 0.8}}}) {
        Lattice L = lattice_from_half_periods(w1, w3);
        CHECK(std::abs(L.e[0] + L.e[1] + L.e[2]) < 1e-12 * L.scale());
        CHECK(std::abs(L.eta[0] + L.eta[1] + L.eta[2]) < 1e-10);

        // wp(omega_k) = e_k through the public interface
        CHECK(std::abs(L.wp(L.omega1 + 2.0 * L.omega3) - L.e[0]) < 1e-9 * L.scale());

        for (int i = 0; i < 25; ++i) {
            Complex z = random_cell_point(L);
            Complex wp = L.wp(z), wpp = L.wp_prime(z);
            Complex curve = wpp * wpp - (4.0 * wp * wp * wp - L.g2 * wp - L.g3);
            CHECK(std::abs(curve) < 1e-9 * std::pow(std::abs(wp) + L.scale(), 3));
            CHECK(std::abs(L.zeta(-z) + L.zeta(z)) < 1e-9 * (1.0 + std::abs(L.zeta(z))));
        }
    }
}

TEST_CASE("quasi-periodicity of zeta and sigma") {
    Lattice L = lattice_from_half_periods(Complex(1, 0), Complex(0.25, 1.1));
    const std::array<Complex, 3> omegas = {L.omega1, L.omega2, L.omega3};
    for (int k = 0; k < 3; ++k) {
        for (int i = 0; i < 5; ++i) {
            Complex z = random_cell_point(L);
            Complex lhs = L.zeta(z + 2.0 * omegas[k]) - L.zeta(z) - 2.0 * L.eta[k];
            CHECK(std::abs(lhs) < 1e-9 * (1.0 + std::abs(L.zeta(z))));
            Complex s2 = L.sigma(z + 2.0 * omegas[k]);
            Complex rhs = -L.sigma(z) * std::exp(2.0 * L.eta[k] * (z + omegas[k]));
            CHECK(std::abs(s2 - rhs) < 1e-9 * (1.0 + std::abs(s2)));
        }
    }
}

TEST_CASE("addition formula for zeta") {
    Lattice L = lattice_from_half_periods(Complex(1.2, 0.1), Complex(0.2, 0.9));
    for (int i = 0; i < 20; ++i) {
        Complex z = random_cell_point(L), w = random_cell_point(L);
        if (std::abs(L.wp(z) - L.wp(w)) < 1e-3) continue;
        Complex lhs = L.zeta(z + w) - L.zeta(z) - L.zeta(w);
        Complex rhs = 0.5 * (L.wp_prime(z) - L.wp_prime(w)) / (L.wp(z) - L.wp(w));
        CHECK(std::abs(lhs - rhs) < 1e-8 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("co-wp squares to wp - e_k and obeys the sign law") {
    Lattice L = lattice_from_half_periods(Complex(1, 0), Complex(0.15, 1.05));
    const std::array<Complex, 3> omegas = {L.omega1, L.omega2, L.omega3};
    for (int k = 1; k <= 3; ++k) {
        for (int i = 0; i < 8; ++i) {
            Complex z = random_cell_point(L);
            Complex c = L.co_wp(k, z);
            CHECK(std::abs(c * c - (L.wp(z) - L.e[k - 1])) < 1e-8 * L.scale());
            for (int kp = 1; kp <= 3; ++kp) {
                Complex shifted = L.co_wp(k, z + 2.0 * omegas[kp - 1]);
                // multiplier exp(2(eta_{k'} w_k - eta_k w_{k'})): +1 iff k = k'
                Complex f = std::exp(2.0 * (L.eta[kp - 1] * omegas[k - 1] -
                                            L.eta[k - 1] * omegas[kp - 1]));
                double sign = (k == kp) ? 1.0 : -1.0;
                CHECK(std::abs(f - sign) < 1e-9);
                CHECK(std::abs(shifted - sign * c) < 1e-8 * (1.0 + std::abs(c)));
            }
        }
    }
}

TEST_CASE("half-period shift identity for wp") {
    Lattice L = lattice_from_half_periods(Complex(1, 0), Complex(0.3, 1.2));
    const std::array<Complex, 3> omegas = {L.omega1, L.omega2, L.omega3};
    for (int k = 0; k < 3; ++k) {
        int kp = (k + 1) % 3, kpp = (k + 2) % 3;
        Complex dk = (L.e[k] - L.e[kp]) * (L.e[k] - L.e[kpp]);
        for (int i = 0; i < 6; ++i) {
            Complex z = random_cell_point(L);
            Complex lhs = L.wp(z + omegas[k]);
            Complex rhs = L.e[k] + dk / (L.wp(z) - L.e[k]);
            CHECK(std::abs(lhs - rhs) < 1e-8 * (1.0 + std::abs(lhs)));
        }
    }
}

TEST_CASE("wp_inverse") {
    Lattice L = lattice_from_branch_points(Rational(5), Rational(-2), Rational(-3));

    SUBCASE("branch point maps to half-period") {
        Complex t = L.wp_inverse(L.e[0], Complex(0, 0));
        Complex diff = t - L.omega1;
        // agreement mod lattice
        EllipticPoint p = L.reduce(diff);
        CHECK(std::abs(p.reduced) < 1e-8);
    }
    SUBCASE("roundtrip and sign selection") {
        Complex t0(0.3, 0.2);
        Complex v = L.wp(t0), vp = L.wp_prime(t0);
        Complex t = L.wp_inverse(v, vp);
        CHECK(std::abs(L.reduce(t - t0).reduced) < 1e-9);
        Complex tneg = L.wp_inverse(v, -vp);
        CHECK(std::abs(L.reduce(tneg + t0).reduced) < 1e-9);
    }
    SUBCASE("off-curve input rejected") {
        CHECK_THROWS_AS(L.wp_inverse(Complex(1, 1), Complex(100, 0)), NotOnCurve);
    }
    SUBCASE("random roundtrips") {
        for (int i = 0; i < 20; ++i) {
            Complex t0 = random_cell_point(L);
            Complex t = L.wp_inverse(L.wp(t0), L.wp_prime(t0));
            CHECK(std::abs(L.reduce(t - t0).reduced) < 1e-8 * (1.0 + std::abs(t0)));
        }
    }
}

TEST_CASE("lattice_from_branch_points") {
    CHECK_THROWS_AS(lattice_from_branch_points(Rational(2), Rational(-1), Rational(-1)),
                    DegenerateLattice);
    CHECK_THROWS_AS(lattice_from_branch_points(Rational(1), Rational(2), Rational(-2)),
                    DegenerateLattice);

    Lattice L = lattice_from_branch_points(Rational(5), Rational(-2), Rational(-3));
    CHECK(std::abs(L.wp(L.omega1 + 2.0 * L.omega1) - Complex(5, 0)) < 1e-10 * L.scale());
    CHECK(std::abs(L.e[1] - Complex(-2, 0)) < 1e-10 * L.scale());
    CHECK(std::abs(L.e[2] - Complex(-3, 0)) < 1e-10 * L.scale());

    // permuted labels still honoured
    Lattice P = lattice_from_branch_points(Rational(-2), Rational(5), Rational(-3));
    CHECK(std::abs(P.e[0] - Complex(-2, 0)) < 1e-10 * P.scale());
    CHECK(std::abs(P.e[1] - Complex(5, 0)) < 1e-10 * P.scale());

    // g2 formula holds exactly for (4, -1, -3)
    Lattice G = lattice_from_branch_points(Rational(4), Rational(-1), Rational(-3));
    double g2 = -4.0 * (4.0 * -1.0 + -1.0 * -3.0 + -3.0 * 4.0);
    CHECK(std::abs(G.g2 - Complex(g2, 0)) < 1e-9 * std::abs(g2));
}

TEST_CASE("degenerate half-period input rejected") {
    CHECK_THROWS_AS(lattice_from_half_periods(Complex(1, 0), Complex(2, 0)), DegenerateLattice);
    CHECK_THROWS_AS(lattice_from_half_periods(Complex(1, 0), Complex(0, -1)), DegenerateLattice);
}

TEST_CASE("pole detection") {
    Lattice L = lattice_from_half_periods(Complex(1, 0), Complex(0, 1));
    CHECK_THROWS_AS(L.wp(Complex(0, 0)), PoleAtArgument);
    CHECK_THROWS_AS(L.zeta(2.0 * L.omega1 + 2.0 * L.omega3), PoleAtArgument);
}
