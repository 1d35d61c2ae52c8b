#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "heun/linalg.hpp"
#include "heun/modular.hpp"
#include "heun/poly.hpp"

using namespace heun;

namespace {

Rational Q(long n, long d = 1) { return frac(n, d); }

PolyQ random_poly(std::mt19937& rng, int deg) {
    std::uniform_int_distribution<long> coef(-9, 9);
    PolyQ p;
    for (int i = 0; i <= deg; ++i) p.c.push_back(Q(coef(rng)));
    p.trim();
    return p;
}

}  // namespace

TEST_CASE("polynomial arithmetic basics") {
    PolyQ a = polyq({Q(1), Q(2)});       // 1 + 2E
    PolyQ b = polyq({Q(-1), Q(0), Q(3)});  // -1 + 3E^2
    CHECK((a + b) == polyq({Q(0), Q(2), Q(3)}));
    CHECK((a * b).deg() == 3);
    CHECK((a * b).coeff(3) == Q(6));
    CHECK(a.eval(Q(2)) == Q(5));
    CHECK(b.derivative() == polyq({Q(0), Q(6)}));
}

TEST_CASE("divrem and divexact") {
    PolyQ a = polyq({Q(-6), Q(11), Q(-6), Q(1)});  // (E-1)(E-2)(E-3)
    PolyQ b = polyq({Q(-2), Q(1)});
    PolyQ q, r;
    divrem(a, b, q, r);
    CHECK(r.zero());
    CHECK(q == polyq({Q(3), Q(-4), Q(1)}));
    CHECK_THROWS_AS(divexact(polyq({Q(1), Q(1)}), polyq({Q(0), Q(1)})), Error);
}

TEST_CASE("gcd on the (E-3) example") {
    PolyQ p = polyq({Q(6), Q(-5), Q(1)});   // (E-2)(E-3)
    PolyQ q = polyq({Q(15), Q(-8), Q(1)});  // (E-3)(E-5)
    CHECK(poly_gcd(p, q) == polyq({Q(-3), Q(1)}));
    CHECK(gcd_modular(p, q) == polyq({Q(-3), Q(1)}));
}

TEST_CASE("gcd: random agreement between PRS and modular") {
    std::mt19937 rng(42);
    for (int it = 0; it < 25; ++it) {
        PolyQ g = random_poly(rng, 3);
        if (g.zero()) continue;
        PolyQ a = g * random_poly(rng, 4);
        PolyQ b = g * random_poly(rng, 4);
        if (a.zero() || b.zero()) continue;
        PolyQ g1 = poly_gcd(a, b);
        PolyQ g2 = gcd_modular(a, b);
        CHECK(g1 == g2);
        CHECK(divides(g1, a));
        CHECK(divides(g1, b));
    }
}

TEST_CASE("squarefree part has squarefree certificate") {
    PolyQ p = polyq({Q(-1), Q(1)});
    PolyQ q = p * p * polyq({Q(-2), Q(1)});
    PolyQ sf = squarefree_part(q);
    CHECK(sf == polyq({Q(2), Q(-3), Q(1)}));
    CHECK(poly_gcd(sf, sf.derivative()).deg() == 0);
}

TEST_CASE("interpolation roundtrip") {
    std::mt19937 rng(7);
    PolyQ p = random_poly(rng, 6);
    std::vector<Rational> xs, ys;
    for (int i = 0; i <= 6; ++i) {
        xs.push_back(Q(i - 3));
        ys.push_back(p.eval(Q(i - 3)));
    }
    CHECK(interpolate(xs, ys) == p);
}

TEST_CASE("resultant over kappa of (k^2 - E, k - 1) is E - 1 up to sign") {
    // outer variable kappa, inner E
    BivarQ p;  // k^2 - E
    p.c = {polyq({Q(0), Q(-1)}), PolyQ(), polyq({Q(1)})};
    BivarQ q;  // k - 1
    q.c = {polyq({Q(-1)}), polyq({Q(1)})};
    PolyQ r = resultant_bivar(p, q);
    CHECK(monic(r) == polyq({Q(-1), Q(1)}));
    PolyQ rd = resultant_bivar_direct(p, q);
    CHECK(monic(rd) == polyq({Q(-1), Q(1)}));
}

TEST_CASE("resultant: modular equals direct on random bivariate inputs") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> coef(-5, 5);
    for (int it = 0; it < 10; ++it) {
        BivarQ p, q;
        for (int i = 0; i <= 3; ++i) p.c.push_back(random_poly(rng, 2));
        for (int i = 0; i <= 2; ++i) q.c.push_back(random_poly(rng, 3));
        p.trim();
        q.trim();
        if (p.deg() < 1 || q.deg() < 1) continue;
        PolyQ a = resultant_bivar(p, q);
        PolyQ b = resultant_bivar_direct(p, q);
        CHECK(a == b);
    }
}

TEST_CASE("resultant vanishes exactly at shared roots") {
    // p = (k - E)(k - 2), q = (k - E)(k + 1): share root k = E
    BivarQ k;
    k.c = {PolyQ(), polyq({Q(1)})};
    BivarQ Epoly;
    Epoly.c = {polyq({Q(0), Q(1)})};
    BivarQ two;
    two.c = {polyq({Q(2)})};
    BivarQ one;
    one.c = {polyq({Q(1)})};
    BivarQ p = (k - Epoly) * (k - two);
    BivarQ q = (k - Epoly) * (k + one);
    PolyQ r = resultant_bivar(p, q);
    CHECK(r.zero());  // common factor k - E for every E
}

TEST_CASE("kernel examples") {
    // M = [[E, -1], [E^2, -E]] has kernel (1, E)
    PolyMat M = {{polyq({Q(0), Q(1)}), polyq({Q(-1)})},
                 {polyq({Q(0), Q(0), Q(1)}), polyq({Q(0), Q(-1)})}};
    auto v = kernel_poly(M);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == polyq({Q(1)}));
    CHECK(v[1] == polyq({Q(0), Q(1)}));

    PolyMat Z = {{PolyQ()}};
    auto w = kernel_poly(Z);
    REQUIRE(w.size() == 1);
    CHECK(w[0] == polyq({Q(1)}));

    PolyMat full = {{polyq({Q(1)}), PolyQ()}, {PolyQ(), polyq({Q(1)})}};
    CHECK_THROWS_AS(kernel_poly(full), KernelDimError);
}

TEST_CASE("char_poly of companion-like matrix") {
    RatMat A = {{Q(0), Q(2)}, {Q(1), Q(1)}};
    // char poly: E^2 - E - 2
    CHECK(char_poly(A) == polyq({Q(-2), Q(-1), Q(1)}));
    CHECK(char_poly({}) == polyq({Q(1)}));
}

TEST_CASE("roots_numeric finds roots to 1e-10") {
    PolyQ p = polyq({Q(-6), Q(11), Q(-6), Q(1)});  // roots 1,2,3
    auto roots = roots_numeric(p);
    REQUIRE(roots.size() == 3);
    std::vector<double> expect = {1.0, 2.0, 3.0};
    for (double e : expect) {
        double best = 1e9;
        for (auto r : roots) best = std::min(best, std::abs(r - Complex(e, 0)));
        CHECK(best < 1e-10);
    }
}

TEST_CASE("exact and numeric modes agree after coercion") {
    std::mt19937 rng(11);
    for (int it = 0; it < 20; ++it) {
        PolyQ a = random_poly(rng, 8), b = random_poly(rng, 8);
        PolyQ s = a * b;
        PolyC sn = to_numeric(a) * to_numeric(b);
        Complex x(0.37, -0.22);
        CHECK(std::abs(eval_c(s, x) - sn.eval(x)) < 1e-10);
    }
}
