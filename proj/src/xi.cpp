#include "heun/xi.hpp"

#include <algorithm>

#include "heun/frat.hpp"
#include "heun/linalg.hpp"
#include "heun/modular.hpp"

namespace heun {

int klein(int i, int j) {
    static const int table[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    return table[i][j];
}

Couplings Couplings::make(int l0, int l1, int l2, int l3) {
    if (l0 < 0 || l1 < 0 || l2 < 0 || l3 < 0) throw UsageError("couplings must be nonnegative");
    if (l0 == 0 && l1 == 0 && l2 == 0 && l3 == 0) throw UsageError("couplings (0,0,0,0) excluded");
    Couplings C;
    C.l = {l0, l1, l2, l3};
    C.lsum = l0 + l1 + l2 + l3;
    C.s = l0 * (l0 + 1) + l1 * (l1 + 1) + l2 * (l2 + 1) + l3 * (l3 + 1);
    C.parity = C.lsum % 2;
    int a = (l1 + l2) % 2, b = (l3 + l2) % 2;
    C.p = (a == 0 && b == 0) ? 0 : (a == 1 && b == 0) ? 1 : (a == 1 && b == 1) ? 2 : 3;
    return C;
}

namespace {

using ZP = Polynomial<PolyQ>;  // polynomial in z, coefficients in Q[E]
using FR = FRat<PolyQ>;

PolyQ cE(const Rational& r) { return polyq({r}); }  // constant in E

struct ZContext {
    FactorCtx<PolyQ> fac;  // roots e1, e2, e3
    std::array<Rational, 3> e;
    Rational g2, g3;
    std::array<Rational, 3> d;  // d_k = (e_k - e_k')(e_k - e_k'')
    ZP W4, W4p, W4pp;

    explicit ZContext(const std::array<Rational, 3>& ein) : e(ein) {
        for (const auto& ek : e) fac.roots.push_back(cE(ek));
        g2 = -4 * (e[0] * e[1] + e[1] * e[2] + e[2] * e[0]);
        g3 = 4 * e[0] * e[1] * e[2];
        for (size_t k = 0; k < 3; ++k)
            d[k] = (e[k] - e[(k + 1) % 3]) * (e[k] - e[(k + 2) % 3]);
        W4.c = {cE(-g3), cE(-g2), PolyQ(), cE(4)};
        W4p = W4.derivative();
        W4pp = W4p.derivative();
    }

    // z^m
    FR zpow(int m) const {
        ZP p;
        p.c.assign(static_cast<size_t>(m) + 1, PolyQ());
        p.c[static_cast<size_t>(m)] = cE(1);
        return FR::from_poly(&fac, p);
    }

    // wp(x + w_k)^m as a rational function of z; k in 1..3, m >= 1
    FR shifted_power(int k, int m) const {
        size_t kk = static_cast<size_t>(k - 1);
        ZP lin;  // e_k (z - e_k) + d_k
        lin.c = {cE(d[kk] - e[kk] * e[kk]), cE(e[kk])};
        lin.trim();
        ZP acc(cE(1));
        for (int i = 0; i < m; ++i) acc = acc * lin;
        FR r = FR::from_poly(&fac, acc);
        r.den[kk] = m;
        return r;
    }

    // v(z) - E, v = l0(l0+1) z + sum_k l_k(l_k+1)(e_k + d_k/(z-e_k))
    FR v_minus_E(const Couplings& C) const {
        ZP head;
        head.c = {polyq({Rational(0), Rational(-1)}),  // -E
                  cE(Rational(C.l[0]) * (C.l[0] + 1))};
        head.trim();
        FR v = FR::from_poly(&fac, head);
        for (int k = 1; k <= 3; ++k) {
            size_t kk = static_cast<size_t>(k - 1);
            Rational Lk = Rational(C.l[static_cast<size_t>(k)]) * (C.l[static_cast<size_t>(k)] + 1);
            if (is_zero(Lk)) continue;
            FR t(&fac);
            t.num = ZP(cE(Lk * d[kk]));
            t.den[kk] = 1;
            v = v + FR::from_poly(&fac, ZP(cE(Lk * e[kk]))) + t;
        }
        return v;
    }
};

// ---- power basis -> even-derivative basis ----

struct DerivTable {
    std::vector<PolyQ> d2j;                 // (d/dx)^{2j} wp as polynomial in wp
    std::vector<std::vector<Rational>> cv;  // cv[m][j]: wp^m = sum_j cv[m][j] d2j[j] + cc[m]
    std::vector<Rational> cc;

    DerivTable(int maxm, const Rational& g2, const Rational& g3) {
        PolyQ W4 = polyq({-g3, -g2, Rational(0), Rational(4)});
        PolyQ ddz = polyq({-g2 / 2, Rational(0), Rational(6)});  // wp''
        PolyQ A = polyq({Rational(0), Rational(1)}), B;          // wp as pair (A, B)
        d2j.push_back(A);
        for (int j = 1; j < maxm; ++j) {
            // apply D twice: D(A,B) = (ddz*B + W4*B', A')
            PolyQ A1 = ddz * B + W4 * B.derivative();
            PolyQ B1 = A.derivative();
            A = ddz * B1 + W4 * B1.derivative();
            B = A1.derivative();
            if (!B.zero()) throw Error("derivative table parity failure");
            d2j.push_back(A);
        }
        cv.resize(static_cast<size_t>(maxm) + 1);
        cc.assign(static_cast<size_t>(maxm) + 1, Rational(0));
        for (int m = 1; m <= maxm; ++m) {
            PolyQ T;
            T.c.assign(static_cast<size_t>(m) + 1, Rational(0));
            T.c[static_cast<size_t>(m)] = 1;
            cv[static_cast<size_t>(m)].assign(static_cast<size_t>(m), Rational(0));
            for (int jj = m - 1; jj >= 0; --jj) {
                Rational coef = T.coeff(jj + 1) / d2j[static_cast<size_t>(jj)].coeff(jj + 1);
                cv[static_cast<size_t>(m)][static_cast<size_t>(jj)] = coef;
                T -= coef * d2j[static_cast<size_t>(jj)];
            }
            if (T.deg() > 0) throw Error("derivative table inversion failure");
            cc[static_cast<size_t>(m)] = T.coeff(0);
        }
    }
};

PolyQ frat_eval(const FR& f, const Rational& z0, const ZContext& Z) {
    PolyQ num;
    for (size_t i = f.num.c.size(); i-- > 0;) num = polyq({z0}) * num + f.num.c[i];
    Rational den(1);
    for (size_t i = 0; i < f.den.size(); ++i)
        den *= rat_pow(z0 - Z.e[i], static_cast<unsigned long>(f.den[i]));
    return (1 / den) * num;
}

FR assemble_xi_rational(const XiData& X, const ZContext& Z) {
    FR R = FR::from_poly(&Z.fac, ZP(X.c0));
    for (int j = 0; j < X.C.l[0]; ++j)
        R = R + X.b[0][static_cast<size_t>(j)] * Z.zpow(X.C.l[0] - j);
    for (int k = 1; k <= 3; ++k)
        for (int j = 0; j < X.C.l[static_cast<size_t>(k)]; ++j)
            R = R + X.b[static_cast<size_t>(k)][static_cast<size_t>(j)] *
                        Z.shifted_power(k, X.C.l[static_cast<size_t>(k)] - j);
    return R;
}

}  // namespace

XiData build_xi(const Couplings& C, const std::array<Rational, 3>& e) {
    if (C.lsum > 12) throw NotImplementedCase("coupling sum above registry bound 12");
    if (e[0] == e[1] || e[1] == e[2] || e[0] == e[2] || !is_zero(Rational(e[0] + e[1] + e[2])))
        throw DegenerateLattice("branch points must be distinct with zero sum");

    ZContext Z(e);
    FR vE = Z.v_minus_E(C);
    FR vEp = vE.dy();

    std::vector<FR> cols;
    cols.push_back(FR::from_poly(&Z.fac, ZP(cE(1))));  // c0 slot
    for (int j = 0; j < C.l[0]; ++j) cols.push_back(Z.zpow(C.l[0] - j));
    for (int k = 1; k <= 3; ++k)
        for (int j = 0; j < C.l[static_cast<size_t>(k)]; ++j)
            cols.push_back(Z.shifted_power(k, C.l[static_cast<size_t>(k)] - j));

    ZP W4p32 = ZP(cE(frac(3, 2))) * Z.W4p;
    ZP W4pp12 = ZP(cE(frac(1, 2))) * Z.W4pp;

    std::vector<FR> ops;
    ops.reserve(cols.size());
    for (const auto& R : cols) {
        FR R1 = R.dy(), R2 = R1.dy(), R3 = R2.dy();
        FR I = Z.W4 * R3 + W4p32 * R2 + W4pp12 * R1 - cE(4) * (vE * R1) - cE(2) * (vEp * R);
        I.reduce();
        ops.push_back(I);
    }

    std::vector<int> target(3, 0);
    for (const auto& I : ops)
        for (size_t i = 0; i < 3; ++i) target[i] = std::max(target[i], I.den[i]);
    int maxdeg = 0;
    std::vector<FR> raised = ops;
    for (auto& I : raised) {
        I.raise_to(target);
        maxdeg = std::max(maxdeg, I.num.deg());
    }

    PolyMat M(static_cast<size_t>(maxdeg) + 1, std::vector<PolyQ>(cols.size()));
    for (size_t t = 0; t < raised.size(); ++t)
        for (int r = 0; r <= maxdeg; ++r) M[static_cast<size_t>(r)][t] = raised[t].num.coeff(r);

    std::vector<PolyQ> x = kernel_poly(M);

    XiData X;
    X.C = C;
    X.e = e;
    X.g2 = Z.g2;
    X.g3 = Z.g3;
    X.c0 = x[0];
    if (X.c0.zero() || X.c0.lead() != Rational(1))
        throw KernelDimError("xi kernel: leading entry not monic");
    size_t idx = 1;
    for (int i = 0; i < 4; ++i) {
        X.b[static_cast<size_t>(i)].resize(static_cast<size_t>(C.l[static_cast<size_t>(i)]));
        for (int j = 0; j < C.l[static_cast<size_t>(i)]; ++j)
            X.b[static_cast<size_t>(i)][static_cast<size_t>(j)] = x[idx++];
    }
    X.genus = X.c0.deg();
    for (int i = 0; i < 4; ++i)
        for (const auto& bij : X.b[static_cast<size_t>(i)])
            if (bij.deg() >= X.genus) throw Error("xi: deg b exceeds genus bound");

    // derivative-basis form, a(E), c(E)
    int maxm = *std::max_element(C.l.begin(), C.l.end());
    DerivTable T(std::max(1, maxm), Z.g2, Z.g3);
    X.c = X.c0;
    for (int i = 0; i < 4; ++i) {
        X.a_deriv[static_cast<size_t>(i)].assign(static_cast<size_t>(C.l[static_cast<size_t>(i)]),
                                                 PolyQ());
        for (int m = 1; m <= C.l[static_cast<size_t>(i)]; ++m) {
            const PolyQ& coef = X.b[static_cast<size_t>(i)][static_cast<size_t>(C.l[static_cast<size_t>(i)] - m)];
            for (int jj = 0; jj < m; ++jj)
                X.a_deriv[static_cast<size_t>(i)][static_cast<size_t>(jj)] +=
                    T.cv[static_cast<size_t>(m)][static_cast<size_t>(jj)] * coef;
            X.c += T.cc[static_cast<size_t>(m)] * coef;
        }
    }
    X.a = PolyQ();
    for (int i = 0; i < 4; ++i)
        if (!X.a_deriv[static_cast<size_t>(i)].empty()) X.a += X.a_deriv[static_cast<size_t>(i)][0];

    if (X.c.deg() != X.genus || X.c.lead() != Rational(1))
        throw Error("xi: c(E) degree/monicity law failed");
    if (X.a.deg() != X.genus - 1 || X.a.lead() != frac(C.s, 2))
        throw Error("xi: a(E) degree/leading law failed");
    return X;
}

SpectralCurve build_Q(const XiData& X) {
    ZContext Z(X.e);
    FR R = assemble_xi_rational(X, Z);
    FR R1 = R.dy(), R2 = R1.dy();
    FR vE = Z.v_minus_E(X.C);

    auto q_at = [&](const Rational& z0) -> PolyQ {
        PolyQ r0 = frat_eval(R, z0, Z);
        PolyQ r1 = frat_eval(R1, z0, Z);
        PolyQ r2 = frat_eval(R2, z0, Z);
        PolyQ ve = frat_eval(vE, z0, Z);
        Rational w4 = Z.W4.eval(polyq({z0})).coeff(0), w4p = Z.W4p.eval(polyq({z0})).coeff(0);
        PolyQ q = r0 * r0 * (Rational(-1) * ve);
        q += frac(1, 2) * (r0 * (w4 * r2 + (w4p / 2) * r1));
        q -= frac(1, 4) * w4 * (r1 * r1);
        return q;
    };

    auto pick = [&](Rational start) {
        Rational z = start;
        while (z == X.e[0] || z == X.e[1] || z == X.e[2]) z += 1;
        return z;
    };
    Rational z0 = pick(frac(17, 5)), z1 = pick(frac(-29, 7));
    PolyQ Q = q_at(z0);
    if (!(Q == q_at(z1))) throw NotConstant("Q depends on evaluation point");
    if (Q.deg() != 2 * X.genus + 1 || Q.lead() != Rational(1))
        throw Error("Q: degree/monicity law failed");
    return SpectralCurve{Q, X.genus};
}

std::pair<PolyQ, PolyQ> monodromy_integrands(const XiData& X) {
    if (X.a.deg() != X.genus - 1 || X.a.lead() != frac(X.C.s, 2))
        throw Error("a(E) law violated");
    if (X.c.deg() != X.genus || X.c.lead() != Rational(1)) throw Error("c(E) law violated");
    return {X.a, X.c};
}

SymImage symmetry_transport(const Couplings& C, SymOp op) {
    SymImage S;
    auto shift = [&](int k) {
        for (int i = 0; i < 4; ++i) S.i_perm[static_cast<size_t>(i)] = klein(i, k);
        S.e_perm = {1, 2, 3};
        S.C2 = Couplings::make(C.l[static_cast<size_t>(klein(0, k))], C.l[static_cast<size_t>(klein(1, k))],
                               C.l[static_cast<size_t>(klein(2, k))], C.l[static_cast<size_t>(klein(3, k))]);
    };
    auto swap = [&](int a, int b) {
        std::array<int, 4> l = C.l;
        std::swap(l[static_cast<size_t>(a)], l[static_cast<size_t>(b)]);
        S.C2 = Couplings::make(l[0], l[1], l[2], l[3]);
        S.e_perm = {1, 2, 3};
        std::swap(S.e_perm[static_cast<size_t>(a - 1)], S.e_perm[static_cast<size_t>(b - 1)]);
        S.i_perm = {0, 1, 2, 3};
        std::swap(S.i_perm[static_cast<size_t>(a)], S.i_perm[static_cast<size_t>(b)]);
    };
    switch (op) {
        case SymOp::Shift1: shift(1); break;
        case SymOp::Shift2: shift(2); break;
        case SymOp::Shift3: shift(3); break;
        case SymOp::Swap23: swap(2, 3); break;
        case SymOp::Swap13: swap(1, 3); break;
        case SymOp::Swap12: swap(1, 2); break;
    }
    return S;
}

std::array<Rational, 3> apply_perm(const std::array<Rational, 3>& e, const std::array<int, 3>& perm) {
    std::array<Rational, 3> r;
    for (size_t k = 0; k < 3; ++k) r[k] = e[static_cast<size_t>(perm[k] - 1)];
    return r;
}

}  // namespace heun
