#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heun/finitegap.hpp"
#include "heun/frat.hpp"

using namespace heun;

namespace {

Rational Q(long n, long d = 1) { return frac(n, d); }
const std::array<Rational, 3> E0 = {Q(5), Q(-2), Q(-3)};

Rational g2_of(const std::array<Rational, 3>& e) {
    return -4 * (e[0] * e[1] + e[1] * e[2] + e[2] * e[0]);
}

HeunSet make_set(int l0, int l1, int l2, int l3, const std::array<Rational, 3>& e = E0) {
    auto C = Couplings::make(l0, l1, l2, l3);
    XiData X = build_xi(C, e);
    SpectralCurve S = build_Q(X);
    return build_heun_set(X, S);
}

}  // namespace

TEST_CASE("gauge potential identity behind the recursion operator") {
    // v(z) - (4 W m' + 2 m W' + 4 m^2 W) with m = (1/2) sum l_k/(z-e_k)
    // must equal -(l0+l1+l2+l3)(l1+l2+l3-l0-1) z + sum_k e_k (l_k' + l_k'')^2
    for (auto Cl : {std::array<int, 4>{2, 1, 0, 0}, std::array<int, 4>{3, 2, 1, 0},
                    std::array<int, 4>{1, 1, 1, 1}, std::array<int, 4>{2, 2, 2, 2}}) {
        auto C = Couplings::make(Cl[0], Cl[1], Cl[2], Cl[3]);
        FactorCtx<Rational> fac;
        for (auto& ek : E0) fac.roots.push_back(ek);
        using FRq = FRat<Rational>;
        using ZPq = Polynomial<Rational>;
        ZPq W;
        W.c = {-E0[0] * E0[1] * E0[2], E0[0] * E0[1] + E0[1] * E0[2] + E0[2] * E0[0], Rational(0),
               Rational(1)};
        W.c[2] = -(E0[0] + E0[1] + E0[2]);
        ZPq Wp = W.derivative();
        FRq m(&fac), v(&fac);
        for (size_t k = 0; k < 3; ++k) {
            if (C.l[k + 1] == 0) continue;
            FRq t(&fac);
            t.num = ZPq(frac(C.l[k + 1], 2));
            t.den[k] = 1;
            m = m + t;
        }
        {
            ZPq head;
            head.c = {Rational(0), Rational(C.l[0]) * (C.l[0] + 1)};
            head.trim();
            v = FRq::from_poly(&fac, head);
            for (size_t k = 0; k < 3; ++k) {
                Rational Lk = Rational(C.l[k + 1]) * (C.l[k + 1] + 1);
                if (is_zero(Lk)) continue;
                Rational dk = (E0[k] - E0[(k + 1) % 3]) * (E0[k] - E0[(k + 2) % 3]);
                FRq t(&fac);
                t.num = ZPq(Lk * dk);
                t.den[k] = 1;
                v = v + FRq::from_poly(&fac, ZPq(Lk * E0[k])) + t;
            }
        }
        // exp(kappa x) / prod (z-e_k)^{l_k/2} gauge: zero-order part is
        // v + 4 W m' + 2 m W' - 4 W m^2 (kappa^2 handled separately)
        FRq lhs = v + Rational(4) * (W * m.dy()) + Rational(2) * (Wp * m) -
                  Rational(4) * (W * (m * m));
        lhs.reduce();
        for (size_t f = 0; f < 3; ++f) CHECK(lhs.den[f] == 0);
        ZPq expect;
        Rational zcoef = Rational(-C.lsum) * (C.l[1] + C.l[2] + C.l[3] - C.l[0] - 1);
        Rational cst = E0[0] * (C.l[2] + C.l[3]) * (C.l[2] + C.l[3]) +
                       E0[1] * (C.l[1] + C.l[3]) * (C.l[1] + C.l[3]) +
                       E0[2] * (C.l[1] + C.l[2]) * (C.l[1] + C.l[2]);
        expect.c = {cst, zcoef};
        expect.trim();
        CHECK(lhs.num == expect);
    }
}

TEST_CASE("Heun polynomials for small cases") {
    SUBCASE("(1,0,0,0)") {
        auto H = heun_polys(Couplings::make(1, 0, 0, 0), E0);
        CHECK(H[0] == polyq({Q(1)}));
        for (int k = 1; k <= 3; ++k)
            CHECK(H[static_cast<size_t>(k)] == polyq({E0[static_cast<size_t>(k - 1)], Q(1)}));
    }
    SUBCASE("(2,0,0,0)") {
        auto H = heun_polys(Couplings::make(2, 0, 0, 0), E0);
        CHECK(H[0] == polyq({-3 * g2_of(E0), Q(0), Q(1)}));
        for (int k = 1; k <= 3; ++k)
            CHECK(H[static_cast<size_t>(k)] == polyq({-3 * E0[static_cast<size_t>(k - 1)], Q(1)}));
    }
    SUBCASE("(2,0,0,0) at (4,-1,-3): H0 = E^2 - 156") {
        std::array<Rational, 3> e = {Q(4), Q(-1), Q(-3)};
        auto H = heun_polys(Couplings::make(2, 0, 0, 0), e);
        CHECK(H[0] == polyq({Q(-156), Q(0), Q(1)}));
    }
    SUBCASE("(3,1,0,0): H2 = E - 3 e2 - 8 e3") {
        auto H = heun_polys(Couplings::make(3, 1, 0, 0), E0);
        CHECK(H[2] == polyq({-3 * E0[1] - 8 * E0[2], Q(1)}));
        CHECK(H[3] == polyq({-8 * E0[1] - 3 * E0[2], Q(1)}));
    }
    SUBCASE("(1,1,0,0)") {
        auto H = heun_polys(Couplings::make(1, 1, 0, 0), E0);
        CHECK(H[0] == polyq({-4 * E0[0], Q(1)}));
        CHECK(H[1] == polyq({g2_of(E0) - 11 * E0[0] * E0[0], -2 * E0[0], Q(1)}));
        CHECK(H[2] == polyq({Q(1)}));
        CHECK(H[3] == polyq({Q(1)}));
    }
}

TEST_CASE("twisted Heun polynomials for small cases") {
    auto H2000 = heun_polys(Couplings::make(2, 0, 0, 0), E0);
    SUBCASE("(2,0,0,0): Ht0 = 1, Htk = E + 6 e_k") {
        CHECK(twisted_heun(Couplings::make(2, 0, 0, 0), E0, 0, H2000) == polyq({Q(1)}));
        for (int k = 1; k <= 3; ++k)
            CHECK(twisted_heun(Couplings::make(2, 0, 0, 0), E0, k, H2000) ==
                  polyq({6 * E0[static_cast<size_t>(k - 1)], Q(1)}));
    }
    SUBCASE("(1,1,0,0): Ht2, Ht3") {
        auto C = Couplings::make(1, 1, 0, 0);
        auto H = heun_polys(C, E0);
        CHECK(twisted_heun(C, E0, 0, H) == polyq({Q(1)}));
        CHECK(twisted_heun(C, E0, 1, H) == polyq({Q(1)}));
        CHECK(twisted_heun(C, E0, 2, H) == polyq({5 * E0[1] + 3 * E0[2], Q(1)}));
        CHECK(twisted_heun(C, E0, 3, H) == polyq({3 * E0[1] + 5 * E0[2], Q(1)}));
    }
    SUBCASE("(3,0,0,0): Ht0 = E^2 - (75/4) g2") {
        auto C = Couplings::make(3, 0, 0, 0);
        auto H = heun_polys(C, E0);
        CHECK(twisted_heun(C, E0, 0, H) == polyq({Q(-75, 4) * g2_of(E0), Q(0), Q(1)}));
        CHECK(twisted_heun(C, E0, 1, H) ==
              polyq({Q(75, 4) * (g2_of(E0) - 12 * E0[0] * E0[0]), 15 * E0[0], Q(1)}));
    }
    SUBCASE("(1,0,0,0): all Ht = 1") {
        auto C = Couplings::make(1, 0, 0, 0);
        auto H = heun_polys(C, E0);
        for (int i = 0; i < 4; ++i) CHECK(twisted_heun(C, E0, i, H) == polyq({Q(1)}));
    }
}

TEST_CASE("theta-twisted Heun polynomials") {
    SUBCASE("(2,0,0,0): Htheta = 1") {
        HeunSet HS = make_set(2, 0, 0, 0);
        CHECK(HS.Htheta == polyq({Q(1)}));
    }
    SUBCASE("(1,1,1,1): Htheta = E^2 - (4/3) g2") {
        HeunSet HS = make_set(1, 1, 1, 1);
        CHECK(HS.Htheta == polyq({Q(-4, 3) * g2_of(E0), Q(0), Q(1)}));
    }
    SUBCASE("(1,1,0,0): Htheta = 1 (p = 1 branch)") {
        HeunSet HS = make_set(1, 1, 0, 0);
        CHECK(HS.Htheta == polyq({Q(1)}));
    }
    SUBCASE("(2,2,0,0): Htheta quadratic") {
        HeunSet HS = make_set(2, 2, 0, 0);
        PolyQ expect = polyq({Q(-432, 5) * E0[0] * E0[0] + Q(36, 5) * g2_of(E0),
                              Q(-72, 5) * E0[0], Q(1)});
        CHECK(HS.Htheta == expect);
    }
}

TEST_CASE("build_heun_set structural laws") {
    for (auto Cl : {std::array<int, 4>{2, 1, 0, 0}, std::array<int, 4>{2, 1, 1, 0},
                    std::array<int, 4>{1, 1, 1, 1}}) {
        HeunSet HS = make_set(Cl[0], Cl[1], Cl[2], Cl[3]);
        PolyQ prod = polyq({Q(1)});
        for (const auto& h : HS.H) prod = prod * h;
        CHECK(prod == HS.Q);
        CHECK(HS.Q.deg() == 2 * HS.genus + 1);
        int base = HS.H[0].deg() + 2 * HS.Ht[0].deg();
        for (int k = 1; k <= 3; ++k)
            CHECK(HS.H[static_cast<size_t>(k)].deg() + 2 * HS.Ht[static_cast<size_t>(k)].deg() ==
                  base + 1);
        CHECK(HS.Htheta.deg() == HS.H[0].deg() + HS.Ht[0].deg() - HS.genus);
    }
}

TEST_CASE("covering map") {
    SUBCASE("(1,0,0,0): xi = -E") {
        HeunSet HS = make_set(1, 0, 0, 0);
        CoveringMap cm = covering_map(HS);
        CHECK(cm.xi == RatE(polyq({Q(0), Q(-1)})));
        CHECK(cm.kappa_sq_ratio.zero());  // prefactor 1 - 2/s vanishes at s = 2
    }
    SUBCASE("(2,0,0,0): xi - e_k = -(E-3e_k)(E+6e_k)^2 / (9(E^2-3g2))") {
        HeunSet HS = make_set(2, 0, 0, 0);
        CoveringMap cm = covering_map(HS);
        for (int k = 1; k <= 3; ++k) {
            Rational ek = E0[static_cast<size_t>(k - 1)];
            PolyQ num = polyq({-3 * ek, Q(1)}) * polyq({6 * ek, Q(1)}) * polyq({6 * ek, Q(1)});
            RatE expect(Q(-1) * num, Q(9) * polyq({-3 * g2_of(E0), Q(0), Q(1)}));
            CHECK(cm.xi_minus_e[static_cast<size_t>(k - 1)] == expect);
        }
    }
    SUBCASE("k-consistency is exact") {
        HeunSet HS = make_set(2, 1, 0, 0);
        CoveringMap cm = covering_map(HS);
        RatE d01 = cm.xi_minus_e[0] - cm.xi_minus_e[1];
        CHECK(d01 == RatE(polyq({E0[1] - E0[0]})));
    }
}

TEST_CASE("second lattice sanity: (2,0,0,0) at (7,-1,-6)") {
    std::array<Rational, 3> e = {Q(7), Q(-1), Q(-6)};
    HeunSet HS = make_set(2, 0, 0, 0, e);
    CHECK(HS.H[0] == polyq({-3 * g2_of(e), Q(0), Q(1)}));
    CHECK(HS.Ht[1] == polyq({6 * e[0], Q(1)}));
    CHECK(HS.Htheta == polyq({Q(1)}));
}
