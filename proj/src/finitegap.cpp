#include "heun/finitegap.hpp"
#include <cstdio>
#include <cstdlib>

#include <algorithm>
#include <functional>
#include <optional>

#include "heun/frat.hpp"
#include "heun/linalg.hpp"
#include "heun/modular.hpp"

namespace heun {

namespace {

int fdiv2(int x) { return (x >= 0) ? x / 2 : -((-x + 1) / 2); }

// ============================ Heun polynomials ============================

using FRq = FRat<Rational>;
using ZPq = Polynomial<Rational>;

struct SpaceDef {
    std::array<int, 4> beta;  // exponents of the gauge prefactor
    int dim;
    int klass;  // half-period class of sum alpha_k omega_k
};

std::optional<SpaceDef> space_for(const std::array<int, 4>& alpha) {
    int S = alpha[0] + alpha[1] + alpha[2] + alpha[3];
    int a = ((alpha[1] - alpha[2]) % 2 + 2) % 2;
    int b = ((alpha[3] - alpha[2]) % 2 + 2) % 2;
    int klass = (a == 0 && b == 0) ? 0 : (a == 1 && b == 0) ? 1 : (a == 1 && b == 1) ? 2 : 3;
    SpaceDef d;
    d.klass = klass;
    if (S <= 0) {
        d.beta = alpha;
        d.dim = 1 - S / 2;
        return d;
    }
    if (S >= 4) {
        for (int i = 0; i < 4; ++i) d.beta[static_cast<size_t>(i)] = 1 - alpha[static_cast<size_t>(i)];
        d.dim = S / 2 - 1;
        return d;
    }
    d.beta = alpha;
    d.dim = 0;
    return d;
}

}  // namespace

std::array<PolyQ, 4> heun_polys(const Couplings& C, const std::array<Rational, 3>& e) {
    std::array<PolyQ, 4> H;
    for (auto& h : H) h = polyq({Rational(1)});

    std::vector<std::array<int, 4>> alphas;
    const int l0 = C.l[0], l1 = C.l[1], l2 = C.l[2], l3 = C.l[3];
    if (C.parity == 0) {
        alphas = {{-l0, -l1, -l2, -l3},
                  {-l0, -l1, l2 + 1, l3 + 1},
                  {-l0, l1 + 1, -l2, l3 + 1},
                  {-l0, l1 + 1, l2 + 1, -l3}};
    } else {
        alphas = {{-l0, -l1, -l2, l3 + 1},
                  {-l0, -l1, l2 + 1, -l3},
                  {-l0, l1 + 1, -l2, -l3},
                  {l0 + 1, -l1, -l2, -l3}};
    }

    FactorCtx<Rational> fac;
    for (const auto& ek : e) fac.roots.push_back(ek);
    ZPq W;  // monic cubic
    W.c = {-e[0] * e[1] * e[2], e[0] * e[1] + e[1] * e[2] + e[2] * e[0],
           -(e[0] + e[1] + e[2]), Rational(1)};
    W.trim();
    ZPq Wp = W.derivative();

    // v(z)
    FRq v(&fac);
    {
        ZPq head;
        head.c = {Rational(0), Rational(C.l[0]) * (C.l[0] + 1)};
        head.trim();
        v = FRq::from_poly(&fac, head);
        for (int k = 0; k < 3; ++k) {
            Rational Lk = Rational(C.l[static_cast<size_t>(k + 1)]) * (C.l[static_cast<size_t>(k + 1)] + 1);
            if (is_zero(Lk)) continue;
            Rational dk = (e[static_cast<size_t>(k)] - e[static_cast<size_t>((k + 1) % 3)]) *
                          (e[static_cast<size_t>(k)] - e[static_cast<size_t>((k + 2) % 3)]);
            FRq t(&fac);
            t.num = ZPq(Lk * dk);
            t.den[static_cast<size_t>(k)] = 1;
            v = v + FRq::from_poly(&fac, ZPq(Lk * e[static_cast<size_t>(k)])) + t;
        }
    }

    for (const auto& alpha : alphas) {
        auto sd = space_for(alpha);
        int i = sd->klass;
        if (sd->dim == 0) {
            H[static_cast<size_t>(i)] = polyq({Rational(1)});
            continue;
        }
        int d = sd->dim;
        // m(z) = (1/2) sum beta_k/(z - e_k), k = 1..3
        FRq m(&fac);
        for (int k = 0; k < 3; ++k) {
            if (sd->beta[static_cast<size_t>(k + 1)] == 0) continue;
            FRq t(&fac);
            t.num = ZPq(frac(sd->beta[static_cast<size_t>(k + 1)], 2));
            t.den[static_cast<size_t>(k)] = 1;
            m = m + t;
        }
        FRq mz = m.dy();
        // potential part: -(4 W m' + 2 m W' + 4 m^2 W) + v
        FRq pot = v - (Rational(4) * (ZPq(Rational(1)) * W * mz) + Rational(2) * (Wp * m) +
                       Rational(4) * (W * (m * m)));
        RatMat M(static_cast<size_t>(d), std::vector<Rational>(static_cast<size_t>(d), Rational(0)));
        for (int n = 0; n < d; ++n) {
            ZPq P;
            P.c.assign(static_cast<size_t>(n) + 1, Rational(0));
            P.c[static_cast<size_t>(n)] = 1;
            ZPq Pp = P.derivative(), Ppp = Pp.derivative();
            FRq col = FRq::from_poly(&fac, Rational(-4) * (W * Ppp) + Rational(-2) * (Wp * Pp));
            col = col - Rational(8) * (W * (m * FRq::from_poly(&fac, Pp)));
            col = col + pot * FRq::from_poly(&fac, P);
            col.reduce();
            for (size_t f = 0; f < 3; ++f)
                if (col.den[f] != 0) throw Error("heun_polys: pole cancellation failed");
            if (col.num.deg() > d - 1) throw Error("heun_polys: space not invariant");
            for (int r = 0; r <= col.num.deg(); ++r)
                M[static_cast<size_t>(r)][static_cast<size_t>(n)] = col.num.coeff(r);
        }
        H[static_cast<size_t>(i)] = char_poly(M);
    }
    return H;
}

// ============================ scalar rings ============================

namespace {

using Bi = Polynomial<PolyQ>;  // outer: auxiliary (kappa or Pb); inner: E
using Tri = Polynomial<Bi>;    // outer: free parameter A

Tri tri_rat(const Rational& r) {
    if (is_zero(r)) return Tri();
    return Tri(Bi(polyq({r})));
}
Tri tri_E() { return Tri(Bi(polyq({Rational(0), Rational(1)}))); }
Tri tri_mid() {  // the auxiliary variable itself
    Bi b;
    b.c = {PolyQ(), polyq({Rational(1)})};
    return Tri(b);
}
Tri tri_A() {
    Tri t;
    t.c = {Bi(), Bi(polyq({Rational(1)}))};
    return t;
}

bool tri_is_rat(const Tri& t, Rational& out) {
    if (t.zero()) {
        out = 0;
        return true;
    }
    if (t.deg() != 0) return false;
    const Bi& b = t.c[0];
    if (b.deg() != 0) return false;
    if (b.c[0].deg() != 0) return false;
    out = b.c[0].c[0];
    return true;
}

// ============================ twisted system ============================

using ZPt = Polynomial<Tri>;
using FRt = FRat<Tri>;

struct SysSpec {
    int nA = 0, nB = 0;       // family sizes
    int seedFam = 0, seedIdx = -1;
    int freeFam = -1, freeIdx = -1;
};

SysSpec twist_spec(const Couplings& C, bool bar) {
    SysSpec s;
    int l = C.lsum;
    int rest = C.l[1] + C.l[2] + C.l[3];
    if (bar) {
        s.nA = fdiv2(l) + 1;
        s.nB = std::max(0, fdiv2(l - 3) + 1);
        if (C.parity == 0) {
            s.seedFam = 0;
            s.seedIdx = fdiv2(l);
            if (C.l[0] <= rest - 4) {
                s.freeFam = 1;
                s.freeIdx = (rest - C.l[0] - 4) / 2;
            }
        } else {
            s.seedFam = 1;
            s.seedIdx = fdiv2(l - 3);
            if (C.l[0] <= rest - 1) {
                s.freeFam = 0;
                s.freeIdx = (rest - C.l[0] - 1) / 2;
            }
        }
    } else {
        s.nA = fdiv2(l - 1) + 1;
        s.nB = std::max(0, fdiv2(l - 2) + 1);
        if (C.parity == 0) {
            s.seedFam = 1;
            s.seedIdx = fdiv2(l - 2);
            if (C.l[0] <= rest - 2) {
                s.freeFam = 0;
                s.freeIdx = (rest - C.l[0] - 2) / 2;
            }
        } else {
            s.seedFam = 0;
            s.seedIdx = fdiv2(l - 1);
            if (C.l[0] <= rest - 3) {
                s.freeFam = 1;
                s.freeIdx = (rest - C.l[0] - 3) / 2;
            }
        }
    }
    if (s.freeFam >= 0) {
        int n = (s.freeFam == 0) ? s.nA : s.nB;
        if (s.freeIdx < 0 || s.freeIdx >= n) s.freeFam = -1;
    }
    return s;
}

// theta systems share the k-system index bookkeeping
SysSpec theta_spec(const Couplings& C) { return twist_spec(C, false); }

template <class S>
struct RecEq {
    std::vector<S> coef;
    S cst;
};

template <class S>
struct RecOut {
    std::vector<S> constraints;
};

template <class S>
RecOut<S> triangular_solve(std::vector<RecEq<S>>& eqs, size_t nU, size_t seed, long freeId,
                           const S& unitS,
                           const std::function<std::optional<S>(const S&, const S&)>& pivotSolve,
                           const std::function<S()>& makeA) {
    std::vector<std::optional<S>> val(nU);
    std::vector<char> state(eqs.size(), 0);  // 0 pending, 1 pivot-used, 2 residual
    auto substitute = [&](size_t u) {
        for (auto& e : eqs) {
            if (!is_zero(e.coef[u])) {
                e.cst = e.cst + e.coef[u] * (*val[u]);
                e.coef[u] = S{};
            }
        }
    };
    val[seed] = unitS;
    substitute(seed);
    bool introducedA = false;
    for (;;) {
        bool progress = false;
        for (size_t ei = 0; ei < eqs.size(); ++ei) {
            if (state[ei]) continue;
            long only = -1;
            int cnt = 0;
            for (size_t u = 0; u < nU && cnt < 2; ++u)
                if (!val[u] && !is_zero(eqs[ei].coef[u])) {
                    only = static_cast<long>(u);
                    ++cnt;
                }
            if (cnt == 0) {
                state[ei] = 2;
                progress = true;
                continue;
            }
            if (cnt == 1) {
                auto v = pivotSolve(eqs[ei].cst, eqs[ei].coef[static_cast<size_t>(only)]);
                if (v) {
                    val[static_cast<size_t>(only)] = *v;
                    substitute(static_cast<size_t>(only));
                    state[ei] = 1;
                    progress = true;
                }
            }
        }
        bool allDone = true;
        for (char st : state)
            if (!st) allDone = false;
        bool allVals = true;
        for (const auto& v : val)
            if (!v) allVals = false;
        if (allDone && allVals) break;
        if (!progress) {
            if (!introducedA && freeId >= 0 && !val[static_cast<size_t>(freeId)]) {
                val[static_cast<size_t>(freeId)] = makeA();
                substitute(static_cast<size_t>(freeId));
                introducedA = true;
                continue;
            }
            if (allDone) break;  // leftover unknowns never constrained
            throw EliminationCollapse("triangular solve stuck");
        }
    }
    RecOut<S> out;
    for (size_t ei = 0; ei < eqs.size(); ++ei)
        if (state[ei] == 2 && !is_zero(eqs[ei].cst)) out.constraints.push_back(eqs[ei].cst);
    return out;
}

// ---- twisted operator assembly ----

struct TwistOps {
    FactorCtx<Tri> fac;
    ZPt W, Wp, pi1, pi2, pi1p, pi2p;
    FRt mu, vE, X0;
    Tri kap;

    TwistOps(const Couplings& C, const std::array<Rational, 3>& e, const Rational& ec, bool bar,
             int centerK) {
        for (size_t k = 0; k < 3; ++k) fac.roots.push_back(tri_rat(e[k] - ec));
        kap = tri_mid();
        // W = prod (y - r_k), monic cubic in y
        W = ZPt(tri_rat(1));
        for (size_t k = 0; k < 3; ++k) {
            ZPt lin;
            lin.c = {tri_rat(-(e[k] - ec)), tri_rat(1)};
            W = W * lin;
        }
        Wp = W.derivative();
        if (bar) {
            pi1 = ZPt(tri_rat(1));
            pi2 = W;
        } else {
            ZPt y;
            y.c = {Tri(), tri_rat(1)};
            pi1 = y;  // center is e_k, so z - e_k = y
            pi2 = ZPt(tri_rat(1));
            for (int k = 0; k < 3; ++k) {
                if (k + 1 == centerK) continue;
                ZPt lin;
                lin.c = {tri_rat(-(e[static_cast<size_t>(k)] - ec)), tri_rat(1)};
                pi2 = pi2 * lin;
            }
        }
        pi1p = pi1.derivative();
        pi2p = pi2.derivative();

        mu = FRt(&fac);
        for (size_t k = 0; k < 3; ++k) {
            if (C.l[k + 1] == 0) continue;
            FRt t(&fac);
            t.num = ZPt(tri_rat(frac(C.l[k + 1], 2)));
            t.den[k] = 1;
            mu = mu + t;
        }

        // v(z) - E with z = y + ec
        ZPt head;
        head.c = {tri_rat(Rational(C.l[0]) * (C.l[0] + 1) * ec) - ZPt(tri_E()).c[0],
                  tri_rat(Rational(C.l[0]) * (C.l[0] + 1))};
        head.trim();
        vE = FRt::from_poly(&fac, head);
        for (size_t k = 0; k < 3; ++k) {
            Rational Lk = Rational(C.l[k + 1]) * (C.l[k + 1] + 1);
            if (is_zero(Lk)) continue;
            Rational dk = (e[k] - e[(k + 1) % 3]) * (e[k] - e[(k + 2) % 3]);
            FRt t(&fac);
            t.num = ZPt(tri_rat(Lk * dk));
            t.den[k] = 1;
            vE = vE + FRt::from_poly(&fac, ZPt(tri_rat(Lk * e[k]))) + t;
        }

        // X0 = kappa^2 - 4 W mu' - 2 W' mu + 4 W mu^2
        FRt muy = mu.dy();
        X0 = FRt::from_poly(&fac, ZPt(kap * kap)) - tri_rat(4) * (W * muy) -
             tri_rat(2) * (Wp * mu) + tri_rat(4) * (W * (mu * mu));
    }

    ZPt D1(const ZPt& F) const { return ZPt(tri_rat(2)) * pi1 * F.derivative() + pi1p * F; }
    ZPt D2(const ZPt& G) const { return ZPt(tri_rat(2)) * pi2 * G.derivative() + pi2p * G; }

    // components of L(s1 F + s2 G)
    std::pair<FRt, FRt> apply(const ZPt& F, const ZPt& G) const {
        FRt fF = FRt::from_poly(&fac, F), fG = FRt::from_poly(&fac, G);
        ZPt d1F = D1(F), d2G = D2(G);
        FRt c1 = FRt::from_poly(&fac, -D2(d1F)) + tri_rat(4) * (mu * (pi2 * FRt::from_poly(&fac, d1F))) -
                 X0 * fF + vE * fF +
                 FRt::from_poly(&fac, ZPt(tri_rat(-2) * kap) * D2(G)) +
                 (tri_rat(4) * kap) * (mu * (pi2 * fG));
        FRt c2 = FRt::from_poly(&fac, -D1(d2G)) + tri_rat(4) * (mu * (pi1 * FRt::from_poly(&fac, d2G))) -
                 X0 * fG + vE * fG +
                 FRt::from_poly(&fac, ZPt(tri_rat(-2) * kap) * D1(F)) +
                 (tri_rat(4) * kap) * (mu * (pi1 * fF));
        return {c1, c2};
    }
};

std::vector<RecEq<Tri>> collect_equations(std::vector<std::pair<FRt, FRt>>& cols, size_t nU) {
    // align denominators per component, then one equation per y-power,
    // ordered by descending power (component 1 first at equal power)
    std::vector<int> t1(3, 0), t2(3, 0);
    for (auto& c : cols)
        for (size_t f = 0; f < c.first.den.size(); ++f) {
            t1[f] = std::max(t1[f], c.first.den[f]);
            t2[f] = std::max(t2[f], c.second.den[f]);
        }
    int d1 = -1, d2 = -1;
    for (auto& c : cols) {
        c.first.raise_to(t1);
        c.second.raise_to(t2);
        d1 = std::max(d1, c.first.num.deg());
        d2 = std::max(d2, c.second.num.deg());
    }
    std::vector<RecEq<Tri>> eqs;
    for (int r = std::max(d1, d2); r >= 0; --r) {
        if (r <= d1) {
            RecEq<Tri> e;
            e.coef.resize(nU);
            for (size_t u = 0; u < nU; ++u) e.coef[u] = cols[u].first.num.coeff(r);
            eqs.push_back(std::move(e));
        }
        if (r <= d2) {
            RecEq<Tri> e;
            e.coef.resize(nU);
            for (size_t u = 0; u < nU; ++u) e.coef[u] = cols[u].second.num.coeff(r);
            eqs.push_back(std::move(e));
        }
    }
    return eqs;
}

// ---- elimination helpers ----

// strip full powers of the outer variable (kappa / u / Pb)
BivarQ strip_outer_pow(BivarQ b) {
    size_t k = 0;
    while (k < b.c.size() && b.c[k].zero()) ++k;
    if (k > 0 && k < b.c.size()) b.c.erase(b.c.begin(), b.c.begin() + static_cast<long>(k));
    b.trim();
    return b;
}

// remove every factor of p that divides d (all powers)
PolyQ deflate_by(PolyQ p, const PolyQ& d) {
    if (p.deg() <= 0 || d.deg() <= 0) return p;
    PolyQ g = poly_gcd_adaptive(p, d);
    while (g.deg() > 0) {
        p = divexact(p, g);
        g = poly_gcd_adaptive(p, g);
        if (g.deg() == 0) g = poly_gcd_adaptive(p, d);
    }
    return p;
}

// gcd-accumulate pairwise resultants of the aux variable until stable.
// Leading-coefficient roots correspond to the discarded aux -> infinity
// branch and are deflated per pair.
PolyQ resultant_gcd(std::vector<BivarQ> polys) {
    std::vector<BivarQ> P;
    for (auto& b : polys) {
        b = strip_outer_pow(b);
        if (b.zero()) continue;
        // primitive normal form for dedupe
        Rational lead;
        PolyQ content;
        for (const auto& q : b.c) content = poly_gcd(content, q);
        if (content.deg() >= 0 && !is_zero(content.lead())) {
            // only normalize the scalar scale, keep polynomial content
        }
        bool dup = false;
        for (const auto& other : P) {
            if (other.deg() != b.deg()) continue;
            // scalar-multiple test via cross products of leading terms
            const PolyQ& lb = b.lead();
            const PolyQ& lo = other.lead();
            bool same = true;
            for (int k = 0; k <= b.deg() && same; ++k)
                if (!(b.coeff(k) * lo == other.coeff(k) * lb)) same = false;
            if (same) {
                dup = true;
                break;
            }
        }
        (void)lead;
        if (!dup) P.push_back(b);
    }
    if (P.empty()) throw EliminationCollapse("no constraints survive");
    PolyQ G;
    std::vector<BivarQ> withAux;
    for (auto& b : P) {
        if (b.deg() == 0) G = poly_gcd_adaptive(G, b.c[0]);
        else withAux.push_back(b);
    }
    std::sort(withAux.begin(), withAux.end(), [](const BivarQ& a, const BivarQ& b) {
        long sa = static_cast<long>(a.deg()) * 64 + max_inner_deg(a);
        long sb = static_cast<long>(b.deg()) * 64 + max_inner_deg(b);
        return sa < sb;
    });
    size_t n = std::min<size_t>(withAux.size(), 6);
    int stable = 0;
    for (size_t i = 0; i < n && stable < 2; ++i) {
        for (size_t j = i + 1; j < n && stable < 2; ++j) {
            PolyQ r = resultant_bivar(withAux[i], withAux[j]);
            if (r.zero()) continue;
            PolyQ lcj = squarefree_part_adaptive(withAux[i].lead() * withAux[j].lead());
            r = deflate_by(r, lcj);
            if (r.deg() == 0) return polyq({Rational(1)});
            PolyQ gnew = G.zero() ? r : poly_gcd_adaptive(G, r);
            if (!G.zero() && gnew.deg() == G.deg()) ++stable;
            else stable = 0;
            G = gnew;
            if (G.deg() == 0) return polyq({Rational(1)});
        }
    }
    if (G.zero()) throw EliminationCollapse("all resultants vanish identically");
    return monic(G);
}

PolyQ strip_known_factors(PolyQ cand, const std::vector<PolyQ>& strips) {
    for (int pass = 0; pass < 3; ++pass) {
        for (const auto& f : strips) {
            if (f.deg() <= 0) continue;
            PolyQ g = poly_gcd_adaptive(cand, f);
            while (g.deg() > 0) {
                cand = divexact(cand, g);
                g = poly_gcd_adaptive(cand, f);
            }
        }
    }
    return monic(cand);
}

// split A-linear constraints, eliminate A by 2x2 determinants
std::vector<Bi> eliminate_A(const std::vector<Tri>& cons) {
    bool hasA = false;
    for (const auto& c : cons)
        if (c.deg() >= 1) hasA = true;
    std::vector<Bi> out;
    if (!hasA) {
        for (const auto& c : cons)
            if (!c.zero()) out.push_back(c.c[0]);
        return out;
    }
    std::vector<std::pair<Bi, Bi>> parts;  // (A^0, A^1)
    for (const auto& c : cons) {
        if (c.deg() > 1) throw EliminationCollapse("constraint not linear in free parameter");
        parts.push_back({c.coeff(0), c.coeff(1)});
    }
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].second.zero()) {
            if (!parts[i].first.zero()) out.push_back(parts[i].first);
            continue;
        }
        for (size_t j = i + 1; j < parts.size(); ++j) {
            if (parts[j].second.zero()) continue;
            Bi r = parts[i].first * parts[j].second - parts[j].first * parts[i].second;
            if (!r.zero()) out.push_back(r);
        }
    }
    return out;
}

// kappa-parity reduction to u = kappa^2 where possible
bool parity_reduce(const std::vector<Bi>& in, std::vector<BivarQ>& out) {
    out.clear();
    for (const auto& b : in) {
        bool even = true, odd = true;
        for (int k = 0; k <= b.deg(); ++k) {
            if (b.coeff(k).zero()) continue;
            if (k % 2 == 0) odd = false;
            else even = false;
        }
        if (!even && !odd) return false;
        BivarQ u;
        for (int k = (even ? 0 : 1); k <= b.deg(); k += 2) u.c.push_back(b.coeff(k));
        u.trim();
        if (!u.zero()) out.push_back(u);
    }
    return true;
}

PolyQ eliminate_twisted(const std::vector<Tri>& cons, const std::vector<PolyQ>& strips) {
    std::vector<Bi> flat = eliminate_A(cons);
    if (flat.empty()) throw EliminationCollapse("no twisted constraints");
    std::vector<BivarQ> polys;
    if (!parity_reduce(flat, polys)) {
        polys.assign(flat.begin(), flat.end());
    }
    PolyQ cand = squarefree_part_adaptive(resultant_gcd(polys));

    // kappa = 0 specialization of the pre-elimination system
    std::vector<Tri> at0;
    for (const auto& c : cons) {
        Tri t;
        for (int ai = 0; ai <= c.deg(); ++ai) {
            Bi b = c.coeff(ai);
            PolyQ c0 = b.coeff(0);
            Tri term;
            term.c.assign(static_cast<size_t>(ai) + 1, Bi());
            term.c[static_cast<size_t>(ai)] = Bi(c0);
            term.trim();
            t += term;
        }
        if (!t.zero()) at0.push_back(t);
    }
    PolyQ K0;
    for (const auto& b : eliminate_A(at0)) {
        if (b.deg() > 0) throw Error("kappa=0 specialization kept kappa");
        K0 = poly_gcd_adaptive(K0, b.coeff(0));
    }
    std::vector<PolyQ> allStrips = strips;
    if (K0.deg() > 0) allStrips.push_back(squarefree_part_adaptive(K0));
    return strip_known_factors(cand, allStrips);
}

}  // namespace

PolyQ twisted_heun(const Couplings& C, const std::array<Rational, 3>& e, int i,
                   const std::array<PolyQ, 4>& H) {
    bool bar = (i == C.p);
    SysSpec spec = twist_spec(C, bar);
    if ((spec.seedFam == 0 && spec.seedIdx >= spec.nA) ||
        (spec.seedFam == 1 && (spec.nB == 0 || spec.seedIdx >= spec.nB)) || spec.seedIdx < 0)
        return polyq({Rational(1)});

    int centerK = bar ? 2 : klein(C.p, i);
    Rational ec = e[static_cast<size_t>(centerK - 1)];
    TwistOps ops(C, e, ec, bar, centerK);

    size_t nU = static_cast<size_t>(spec.nA + spec.nB);
    std::vector<std::pair<FRt, FRt>> cols;
    cols.reserve(nU);
    for (int j = 0; j < spec.nA; ++j) {
        ZPt F;
        F.c.assign(static_cast<size_t>(j) + 1, Tri());
        F.c[static_cast<size_t>(j)] = tri_rat(1);
        cols.push_back(ops.apply(F, ZPt()));
    }
    for (int j = 0; j < spec.nB; ++j) {
        ZPt G;
        G.c.assign(static_cast<size_t>(j) + 1, Tri());
        G.c[static_cast<size_t>(j)] = tri_rat(1);
        cols.push_back(ops.apply(ZPt(), G));
    }

    auto eqs = collect_equations(cols, nU);
    size_t seed = static_cast<size_t>(spec.seedFam == 0 ? spec.seedIdx : spec.nA + spec.seedIdx);
    long freeId = -1;
    if (spec.freeFam >= 0)
        freeId = (spec.freeFam == 0) ? spec.freeIdx : spec.nA + spec.freeIdx;

    std::function<std::optional<Tri>(const Tri&, const Tri&)> pivotSolve =
        [](const Tri& cst, const Tri& piv) -> std::optional<Tri> {
        Rational r;
        if (!tri_is_rat(piv, r) || is_zero(r)) return std::nullopt;
        Tri v = cst;
        Rational inv = -1 / r;
        for (auto& bi : v.c)
            for (auto& pe : bi.c) pe = inv * pe;
        return v;
    };
    std::function<Tri()> makeA = [] { return tri_A(); };

    auto out = triangular_solve<Tri>(eqs, nU, seed, freeId, tri_rat(1), pivotSolve, makeA);
    if (out.constraints.empty()) throw EliminationCollapse("twisted system unconstrained");

    std::vector<PolyQ> strips;
    for (const auto& h : H) strips.push_back(h);
    PolyQ cand = eliminate_twisted(out.constraints, strips);
    if (cand.zero()) throw EliminationCollapse("twisted candidate vanished");
    return monic(cand);
}

// ============================ theta system ============================

namespace {

struct ThetaCtx {
    Bi W4;  // 4 prod (Pb - e_k), polynomial in Pb (rational coefficients)
    bool has_ep = false;
    Rational ep;
};

struct ThS {
    Tri a, b;  // a + Rb * b   (outer A, mid Pb, inner E)
    int dpow = 0;
    const ThetaCtx* ctx = nullptr;

    static ThS unit() {
        ThS r;
        r.a = tri_rat(1);
        return r;
    }
};

bool is_zero(const ThS& x) { return x.a.zero() && x.b.zero(); }

}  // namespace

template <>
struct RingTraits<ThS> {
    static ThS from_int(int n) {
        ThS r;
        r.a = tri_rat(Rational(n));
        return r;
    }
};

namespace {

Tri tri_mul_bi(const Tri& t, const Bi& m) {
    Tri r;
    r.c.reserve(t.c.size());
    for (const auto& bi : t.c) r.c.push_back(bi * m);
    r.trim();
    return r;
}

bool tri_divisible_mid(const Tri& t, const Rational& root) {
    for (const auto& bi : t.c) {
        PolyQ v;
        for (size_t i = bi.c.size(); i-- > 0;) v = polyq({root}) * v + bi.c[i];
        if (!v.zero()) return false;
    }
    return true;
}

Tri tri_div_linear_mid(const Tri& t, const Rational& root) {
    Tri r;
    r.c.reserve(t.c.size());
    for (const auto& bi : t.c) r.c.push_back(bi.zero() ? Bi() : divide_linear(bi, polyq({root})));
    r.trim();
    return r;
}

void ths_strip(ThS& x) {
    if (!x.ctx || !x.ctx->has_ep) return;
    while (x.dpow > 0 && tri_divisible_mid(x.a, x.ctx->ep) && tri_divisible_mid(x.b, x.ctx->ep)) {
        x.a = tri_div_linear_mid(x.a, x.ctx->ep);
        x.b = tri_div_linear_mid(x.b, x.ctx->ep);
        --x.dpow;
    }
}

void ths_raise(ThS& x, int target) {
    if (x.dpow >= target) return;
    Bi lin;
    lin.c = {polyq({-x.ctx->ep}), polyq({Rational(1)})};
    for (int k = x.dpow; k < target; ++k) {
        x.a = tri_mul_bi(x.a, lin);
        x.b = tri_mul_bi(x.b, lin);
    }
    x.dpow = target;
}

ThS operator+(ThS x, ThS y) {
    const ThetaCtx* ctx = x.ctx ? x.ctx : y.ctx;
    x.ctx = ctx;
    y.ctx = ctx;
    if (x.dpow != y.dpow) {
        int t = std::max(x.dpow, y.dpow);
        ths_raise(x, t);
        ths_raise(y, t);
    }
    x.a += y.a;
    x.b += y.b;
    ths_strip(x);
    return x;
}

ThS operator-(ThS x, const ThS& yin) {
    ThS y = yin;
    for (auto& bi : y.a.c)
        for (auto& pe : bi.c) pe = Rational(-1) * pe;
    for (auto& bi : y.b.c)
        for (auto& pe : bi.c) pe = Rational(-1) * pe;
    return std::move(x) + std::move(y);
}

ThS operator*(const ThS& x, const ThS& y) {
    ThS r;
    r.ctx = x.ctx ? x.ctx : y.ctx;
    r.dpow = x.dpow + y.dpow;
    Tri bb = x.b * y.b;
    if (!bb.zero()) {
        if (!r.ctx) throw Error("theta scalar product without context");
        r.a = x.a * y.a + tri_mul_bi(bb, r.ctx->W4);
    } else {
        r.a = x.a * y.a;
    }
    r.b = x.a * y.b + x.b * y.a;
    ths_strip(r);
    return r;
}

bool operator==(const ThS& x, const ThS& y) { return is_zero(x - y); }

ThS ths_rat(const Rational& r) {
    ThS x;
    x.a = tri_rat(r);
    return x;
}
ThS ths_tri(const Tri& t, const ThetaCtx* ctx) {
    ThS x;
    x.a = t;
    x.ctx = ctx;
    return x;
}

using ZPh = Polynomial<ThS>;
using FRh = FRat<ThS>;

struct PairFR {
    FRh u, v;  // u + wp' * v
};

struct ThetaOps {
    ThetaCtx tctx;
    FactorCtx<ThS> fac;  // roots r1, r2, r3, gamma
    ZPh W, Wp, W4, W2p;  // monic cubic, derivative, 4W, 2W'
    FRh mu, vE;
    PairFR lambda;

    ThetaOps(const Couplings& C, const std::array<Rational, 3>& e, const Rational& ec, int p) {
        // curve polynomial in Pb
        Bi w4;
        w4.c = {polyq({Rational(4)})};
        for (size_t k = 0; k < 3; ++k) {
            Bi lin;
            lin.c = {polyq({-e[k]}), polyq({Rational(1)})};
            w4 = w4 * lin;
        }
        tctx.W4 = w4;
        tctx.has_ep = (p != 0);
        if (p != 0) tctx.ep = e[static_cast<size_t>(p - 1)];

        for (size_t k = 0; k < 3; ++k) fac.roots.push_back(ths_rat(e[k] - ec));
        // gamma = Pb - ec
        Bi pb;
        pb.c = {PolyQ(), polyq({Rational(1)})};
        Tri gammaT = Tri(pb) - Tri(Bi(polyq({ec})));
        fac.roots.push_back(ths_tri(gammaT, &tctx));

        W = ZPh(ths_rat(1));
        for (size_t k = 0; k < 3; ++k) {
            ZPh lin;
            lin.c = {ths_rat(-(e[k] - ec)), ths_rat(1)};
            W = W * lin;
        }
        Wp = W.derivative();
        W4 = ZPh(ths_rat(4)) * W;
        W2p = ZPh(ths_rat(2)) * Wp;

        mu = FRh(&fac);
        for (size_t k = 0; k < 3; ++k) {
            if (C.l[k + 1] == 0) continue;
            FRh t(&fac);
            t.num = ZPh(ths_rat(frac(C.l[k + 1], 2)));
            t.den[k] = 1;
            mu = mu + t;
        }

        // v(z) - E
        ThS Es;
        Es.a = tri_E();
        Es.ctx = &tctx;
        ZPh head;
        head.c = {ths_rat(Rational(C.l[0]) * (C.l[0] + 1) * ec) - Es,
                  ths_rat(Rational(C.l[0]) * (C.l[0] + 1))};
        head.trim();
        vE = FRh::from_poly(&fac, head);
        for (size_t k = 0; k < 3; ++k) {
            Rational Lk = Rational(C.l[k + 1]) * (C.l[k + 1] + 1);
            if (heun::is_zero(Lk)) continue;
            Rational dk = (e[k] - e[(k + 1) % 3]) * (e[k] - e[(k + 2) % 3]);
            FRh t(&fac);
            t.num = ZPh(ths_rat(Lk * dk));
            t.den[k] = 1;
            vE = vE + FRh::from_poly(&fac, ZPh(ths_rat(Lk * e[k]))) + t;
        }

        // nu0 = (1/2) Rb / (y - gamma) + c_psi,  nu1 = (1/2) / (y - gamma)
        ThS halfRb;
        halfRb.b = tri_rat(frac(1, 2));
        halfRb.ctx = &tctx;
        FRh nu0(&fac);
        nu0.num = ZPh(halfRb);
        nu0.den[3] = 1;
        if (p != 0) {
            ThS cpsi;
            cpsi.b = tri_rat(frac(1, 2));
            cpsi.dpow = 1;
            cpsi.ctx = &tctx;
            nu0 = nu0 + FRh::from_poly(&fac, ZPh(cpsi));
        }
        FRh nu1(&fac);
        nu1.num = ZPh(ths_rat(frac(1, 2)));
        nu1.den[3] = 1;
        lambda.u = nu0;
        lambda.v = nu1 - mu;
    }

    PairFR dx(const PairFR& P) const {
        PairFR r;
        r.u = W2p * P.v + W4 * P.v.dy();
        r.v = P.u.dy();
        return r;
    }
    PairFR mulp(const PairFR& P, const PairFR& Q) const {
        PairFR r;
        r.u = P.u * Q.u + W4 * (P.v * Q.v);
        r.v = P.u * Q.v + P.v * Q.u;
        return r;
    }
    PairFR apply(const PairFR& h) const {
        PairFR dh = dx(h);
        PairFR ddh = dx(dh);
        PairFR lam2 = mulp(lambda, lambda);
        PairFR dlam = dx(lambda);
        PairFR t1 = mulp(lambda, dh);
        PairFR pot;
        pot.u = dlam.u + lam2.u;
        pot.v = dlam.v + lam2.v;
        PairFR t2 = mulp(pot, h);
        PairFR r;
        r.u = -ddh.u - ths_rat(2) * t1.u - t2.u + vE * h.u;
        r.v = -ddh.v - ths_rat(2) * t1.v - t2.v + vE * h.v;
        return r;
    }
};

std::vector<RecEq<ThS>> collect_equations_theta(std::vector<PairFR>& cols, size_t nU) {
    std::vector<int> t1(4, 0), t2(4, 0);
    for (auto& c : cols)
        for (size_t f = 0; f < 4; ++f) {
            t1[f] = std::max(t1[f], c.u.den[f]);
            t2[f] = std::max(t2[f], c.v.den[f]);
        }
    int d1 = -1, d2 = -1;
    for (auto& c : cols) {
        c.u.raise_to(t1);
        c.v.raise_to(t2);
        d1 = std::max(d1, c.u.num.deg());
        d2 = std::max(d2, c.v.num.deg());
    }
    std::vector<RecEq<ThS>> eqs;
    for (int r = std::max(d1, d2); r >= 0; --r) {
        if (r <= d1) {
            RecEq<ThS> e;
            e.coef.resize(nU);
            for (size_t u = 0; u < nU; ++u) e.coef[u] = cols[u].u.num.coeff(r);
            eqs.push_back(std::move(e));
        }
        if (r <= d2) {
            RecEq<ThS> e;
            e.coef.resize(nU);
            for (size_t u = 0; u < nU; ++u) e.coef[u] = cols[u].v.num.coeff(r);
            eqs.push_back(std::move(e));
        }
    }
    return eqs;
}

// pivot: Rb-free, A-free, rational multiple of (Pb - ep)^k
std::optional<ThS> theta_pivot_solve(const ThS& cst, const ThS& piv) {
    if (!piv.b.zero()) return std::nullopt;
    if (piv.a.deg() != 0) return std::nullopt;
    Bi a0 = piv.a.c[0];
    int k = 0;
    Rational r;
    const ThetaCtx* ctx = piv.ctx;
    Bi cur = a0;
    for (;;) {
        if (cur.deg() == 0 && cur.c[0].deg() == 0) {
            r = cur.c[0].c[0];
            break;
        }
        if (!ctx || !ctx->has_ep) return std::nullopt;
        PolyQ v;
        for (size_t i = cur.c.size(); i-- > 0;) v = polyq({ctx->ep}) * v + cur.c[i];
        if (!v.zero()) return std::nullopt;
        cur = divide_linear(cur, polyq({ctx->ep}));
        ++k;
    }
    if (heun::is_zero(r)) return std::nullopt;
    ThS out = cst;
    out.ctx = cst.ctx ? cst.ctx : ctx;
    Rational inv = -1 / r;
    for (auto& bi : out.a.c)
        for (auto& pe : bi.c) pe = inv * pe;
    for (auto& bi : out.b.c)
        for (auto& pe : bi.c) pe = inv * pe;
    out.dpow = cst.dpow + k - piv.dpow;
    if (out.dpow < 0) {
        int up = -out.dpow;
        out.dpow = 0;
        Bi lin;
        lin.c = {polyq({-ctx->ep}), polyq({Rational(1)})};
        for (int t = 0; t < up; ++t) {
            out.a = tri_mul_bi(out.a, lin);
            out.b = tri_mul_bi(out.b, lin);
        }
    }
    ths_strip(out);
    return out;
}

}  // namespace

PolyQ theta_twisted_heun(const Couplings& C, const std::array<Rational, 3>& e,
                         const std::array<PolyQ, 4>& H, const std::array<PolyQ, 4>& Ht,
                         int genus) {
    // s = 2 forces kappa = 0 identically (the 1 - 2/s prefactor vanishes);
    // the theta polynomial is the empty product
    if (C.s == 2) return polyq({Rational(1)});
    SysSpec spec = theta_spec(C);
    if (spec.seedIdx < 0 || (spec.seedFam == 1 && spec.nB == 0)) return polyq({Rational(1)});

    Rational ec = e[1];  // expand around e_2 as in the source construction
    ThetaOps ops(C, e, ec, C.p);

    size_t nU = static_cast<size_t>(spec.nA + spec.nB);
    std::vector<PairFR> cols;
    cols.reserve(nU);
    // c_j columns: h = (y^j, 0)
    for (int j = 0; j < spec.nA; ++j) {
        ZPh Y;
        Y.c.assign(static_cast<size_t>(j) + 1, ThS());
        Y.c[static_cast<size_t>(j)] = ths_rat(1);
        PairFR h;
        h.u = FRh::from_poly(&ops.fac, Y);
        h.v = FRh(&ops.fac);
        cols.push_back(ops.apply(h));
    }
    // d_j columns: h = (nu0 y^j, nu1 y^j)
    for (int j = 0; j < spec.nB; ++j) {
        ZPh Y;
        Y.c.assign(static_cast<size_t>(j) + 1, ThS());
        Y.c[static_cast<size_t>(j)] = ths_rat(1);
        FRh fy = FRh::from_poly(&ops.fac, Y);
        PairFR h;
        h.u = ops.lambda.u * fy;  // nu0 * y^j
        // lambda.v = nu1 - mu; recover nu1 = lambda.v + mu
        h.v = (ops.lambda.v + ops.mu) * fy;
        cols.push_back(ops.apply(h));
    }

    auto eqs = collect_equations_theta(cols, nU);
    size_t seed = static_cast<size_t>(spec.seedFam == 0 ? spec.seedIdx : spec.nA + spec.seedIdx);
    long freeId = -1;
    if (spec.freeFam >= 0)
        freeId = (spec.freeFam == 0) ? spec.freeIdx : spec.nA + spec.freeIdx;

    std::function<std::optional<ThS>(const ThS&, const ThS&)> pivotSolve = theta_pivot_solve;
    std::function<ThS()> makeA = [&] {
        ThS x;
        x.a = tri_A();
        x.ctx = &ops.tctx;
        return x;
    };

    auto out = triangular_solve<ThS>(eqs, nU, seed, freeId, ThS::unit(), pivotSolve, makeA);
    if (out.constraints.empty()) throw EliminationCollapse("theta system unconstrained");

    // A-elimination in the quadratic extension, then split by Rb-parity
    struct QE {
        Bi F, G;
    };  // F + Rb G, A eliminated
    std::vector<std::pair<QE, QE>> withA;  // (A^0 part, A^1 part)
    for (const auto& c : out.constraints) {
        if (std::max(c.a.deg(), c.b.deg()) > 1)
            throw EliminationCollapse("theta constraint not linear in free parameter");
        QE c0{c.a.coeff(0), c.b.coeff(0)};
        QE c1{c.a.coeff(1), c.b.coeff(1)};
        withA.push_back({c0, c1});
    }
    auto qe_zero = [](const QE& q) { return q.F.zero() && q.G.zero(); };
    auto qe_mul = [&](const QE& x, const QE& y) {
        QE r;
        r.F = x.F * y.F + (x.G * y.G) * ops.tctx.W4;
        r.G = x.F * y.G + x.G * y.F;
        return r;
    };
    auto qe_sub = [](const QE& x, const QE& y) {
        QE r;
        r.F = x.F - y.F;
        r.G = x.G - y.G;
        return r;
    };
    std::vector<QE> flat;
    bool anyA = false;
    for (const auto& [c0, c1] : withA)
        if (!qe_zero(c1)) anyA = true;
    if (!anyA) {
        for (const auto& [c0, c1] : withA)
            if (!qe_zero(c0)) flat.push_back(c0);
    } else {
        for (size_t i = 0; i < withA.size(); ++i) {
            if (qe_zero(withA[i].second)) {
                if (!qe_zero(withA[i].first)) flat.push_back(withA[i].first);
                continue;
            }
            for (size_t j = i + 1; j < withA.size(); ++j) {
                if (qe_zero(withA[j].second)) continue;
                QE r = qe_sub(qe_mul(withA[i].first, withA[j].second),
                              qe_mul(withA[j].first, withA[i].second));
                if (!qe_zero(r)) flat.push_back(r);
            }
        }
    }

    // pure polynomial generators in (E, Pb)
    std::vector<BivarQ> pure;
    std::vector<QE> mixed;
    for (const auto& q : flat) {
        if (q.G.zero()) pure.push_back(q.F);
        else if (q.F.zero()) pure.push_back(q.G);
        else mixed.push_back(q);
    }
    if (!mixed.empty()) {
        for (size_t i = 0; i < mixed.size(); ++i) {
            pure.push_back(mixed[i].F * mixed[i].F - (mixed[i].G * mixed[i].G) * ops.tctx.W4);
            for (size_t j = i + 1; j < mixed.size(); ++j)
                pure.push_back(mixed[i].F * mixed[j].G - mixed[j].F * mixed[i].G);
        }
    }

    // (Pb - e_k) planes are the discarded half-period branch; constraints
    // wholly divisible by them carry no information about genuine roots
    for (auto& b : pure) {
        for (size_t k = 0; k < 3; ++k) {
            for (;;) {
                PolyQ at;
                for (size_t q = b.c.size(); q-- > 0;) at = polyq({e[k]}) * at + b.c[q];
                if (!at.zero() || b.zero()) break;
                b = divide_linear(b, polyq({e[k]}));
            }
        }
    }

    if (std::getenv("HEUN_DEBUG_THETA")) {
        auto dump_bi = [](const char* tag, const Bi& b) {
            std::fprintf(stderr, "%s deg_Pb=%d:", tag, b.deg());
            for (int i = 0; i <= b.deg(); ++i) {
                std::fprintf(stderr, " Pb^%d[", i);
                const PolyQ& q = b.coeff(i);
                for (int j = 0; j <= q.deg(); ++j)
                    std::fprintf(stderr, "%s%s", q.coeff(j).get_str().c_str(),
                                 j < q.deg() ? "," : "");
                std::fprintf(stderr, "]");
            }
            std::fprintf(stderr, "\n");
        };
        for (const auto& q : flat) {
            dump_bi("F", q.F);
            dump_bi("G", q.G);
        }
    }

    // note: outer variable of Bi here is Pb
    PolyQ cand = squarefree_part_adaptive(resultant_gcd(pure));

    // spurious-branch spectra: Pb = e_k, Rb = 0
    std::vector<PolyQ> strips;
    for (const auto& h : H) strips.push_back(h);
    for (const auto& h : Ht) strips.push_back(h);
    for (size_t k = 0; k < 3; ++k) {
        std::vector<Tri> spec0;
        for (const auto& c : out.constraints) {
            Tri t;
            for (int ai = 0; ai <= c.a.deg(); ++ai) {
                Bi bi = c.a.coeff(ai);
                PolyQ atk;
                for (size_t q = bi.c.size(); q-- > 0;) atk = polyq({e[k]}) * atk + bi.c[q];
                Tri term;
                term.c.assign(static_cast<size_t>(ai) + 1, Bi());
                term.c[static_cast<size_t>(ai)] = Bi(atk);
                term.trim();
                t += term;
            }
            if (!t.zero()) spec0.push_back(t);
        }
        PolyQ Kk;
        for (const auto& b : eliminate_A(spec0)) {
            if (b.deg() > 0) throw Error("branch specialization kept Pb");
            Kk = poly_gcd_adaptive(Kk, b.coeff(0));
        }
        if (Kk.deg() > 0) strips.push_back(squarefree_part_adaptive(Kk));
    }
    // leading-coefficient (Pb -> infinity) junk
    {
        PolyQ lcg;
        for (const auto& b : pure) {
            BivarQ s = b;
            s.trim();
            if (s.deg() >= 1) lcg = poly_gcd_adaptive(lcg, s.lead());
        }
        if (lcg.deg() > 0) strips.push_back(squarefree_part_adaptive(lcg));
    }
    cand = strip_known_factors(cand, strips);
    if (cand.zero()) throw EliminationCollapse("theta candidate vanished");
    (void)genus;
    return monic(cand);
}

// ============================ assembled family ============================

HeunSet build_heun_set(const XiData& X, const SpectralCurve& S) {
    HeunSet HS;
    HS.C = X.C;
    HS.e = X.e;
    HS.g2 = X.g2;
    HS.g3 = X.g3;
    HS.Q = S.Q;
    HS.a = X.a;
    HS.c = X.c;
    HS.genus = X.genus;
    HS.H = heun_polys(X.C, X.e);

    PolyQ prod = polyq({Rational(1)});
    for (const auto& h : HS.H) prod = prod * h;
    if (!(prod == S.Q)) throw EliminationCollapse("product of Heun polynomials differs from Q");
    if (poly_gcd_adaptive(S.Q, S.Q.derivative()).deg() != 0)
        throw EliminationCollapse("Q not squarefree at this lattice");

    for (int i = 0; i < 4; ++i)
        HS.Ht[static_cast<size_t>(i)] = twisted_heun(X.C, X.e, i, HS.H);
    HS.Htheta = theta_twisted_heun(X.C, X.e, HS.H, HS.Ht, X.genus);

    // degree laws
    int base = HS.H[0].deg() + 2 * HS.Ht[0].deg();
    for (int k = 1; k <= 3; ++k) {
        if (HS.H[static_cast<size_t>(k)].deg() + 2 * HS.Ht[static_cast<size_t>(k)].deg() != base + 1)
            throw EliminationCollapse("twisted degree law failed");
    }
    // the theta degree hypothesis only binds when kappa is not identically 0
    if (HS.C.s > 2 && HS.Htheta.deg() != HS.H[0].deg() + HS.Ht[0].deg() - HS.genus)
        throw EliminationCollapse("theta degree law failed");

    // pairwise root disjointness
    std::vector<PolyQ> fam;
    for (const auto& h : HS.H) fam.push_back(h);
    for (const auto& h : HS.Ht) fam.push_back(h);
    for (size_t i = 0; i < fam.size(); ++i)
        for (size_t j = i + 1; j < fam.size(); ++j) {
            if (fam[i].deg() <= 0 || fam[j].deg() <= 0) continue;
            if (is_zero(resultant_q(fam[i], fam[j])))
                throw EliminationCollapse("Heun-family root collision at this lattice");
        }
    return HS;
}

CoveringMap covering_map(const HeunSet& HS) {
    CoveringMap cm;
    cm.s = HS.C.s;
    Rational s2 = Rational(HS.C.s) * HS.C.s;
    PolyQ den = HS.H[0] * HS.Ht[0] * HS.Ht[0];
    for (int k = 1; k <= 3; ++k) {
        PolyQ num = HS.H[static_cast<size_t>(k)] * HS.Ht[static_cast<size_t>(k)] *
                    HS.Ht[static_cast<size_t>(k)];
        cm.xi_minus_e[static_cast<size_t>(k - 1)] = RatE(Rational(-4) * num, s2 * den);
    }
    for (int k = 1; k <= 3; ++k) {
        int kp = k % 3 + 1;
        RatE diff = cm.xi_minus_e[static_cast<size_t>(k - 1)] - cm.xi_minus_e[static_cast<size_t>(kp - 1)];
        RatE expect(polyq({HS.e[static_cast<size_t>(kp - 1)] - HS.e[static_cast<size_t>(k - 1)]}));
        if (!(diff == expect)) throw InconsistentCovering("xi - e_k forms disagree");
    }
    cm.xi = cm.xi_minus_e[0] + RatE(polyq({HS.e[0]}));
    Rational pref = 1 - Rational(2) / HS.C.s;
    RatE ratio(pref * HS.Htheta, HS.H[0] * HS.Ht[0]);
    cm.kappa_sq_ratio = ratio * ratio;
    return cm;
}

}  // namespace heun
