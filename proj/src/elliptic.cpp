#include "heun/elliptic.hpp"

#include <algorithm>
#include <cmath>

namespace heun {

namespace {
const double kPi = 3.14159265358979323846264338327950288;
const Complex kI(0.0, 1.0);

double max3(double a, double b, double c) { return std::max(a, std::max(b, c)); }
}  // namespace

Complex carlson_rf(Complex x, Complex y, Complex z) {
    Complex A = (x + y + z) / 3.0;
    const Complex A0 = A;
    const Complex x0 = x, y0 = y;
    double Q = std::pow(3.0 * 1e-18, -1.0 / 8.0) *
               max3(std::abs(A - x), std::abs(A - y), std::abs(A - z));
    double pow4 = 1.0;
    for (int n = 0; n < 80 && Q * pow4 > std::abs(A); ++n) {
        Complex sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        Complex lam = sx * sy + sy * sz + sz * sx;
        A = (A + lam) * 0.25;
        x = (x + lam) * 0.25;
        y = (y + lam) * 0.25;
        z = (z + lam) * 0.25;
        pow4 *= 0.25;
    }
    Complex X = (A0 - x0) * pow4 / A;
    Complex Y = (A0 - y0) * pow4 / A;
    Complex Z = -X - Y;
    Complex E2 = X * Y - Z * Z;
    Complex E3 = X * Y * Z;
    return (1.0 - E2 / 10.0 + E3 / 14.0 + E2 * E2 / 24.0 - 3.0 * E2 * E3 / 44.0) / std::sqrt(A);
}

Lattice::Theta Lattice::theta1(Complex v) const {
    // theta1(v) = 2 sum (-1)^n q^{(n+1/2)^2} sin((2n+1)v), derivatives in v
    Complex t0 = 0, t1 = 0, t2 = 0, t3 = 0;
    const Complex ipt = kI * kPi * tau_;
    double peak = 0.0;
    for (int n = 0; n < 96; ++n) {
        double m = n + 0.5;
        Complex qf = std::exp(ipt * (m * m));
        double k = 2.0 * n + 1.0;
        Complex s = std::sin(k * v), c = std::cos(k * v);
        double sgnn = (n % 2 == 0) ? 1.0 : -1.0;
        Complex a = 2.0 * sgnn * qf;
        t0 += a * s;
        t1 += a * k * c;
        t2 -= a * k * k * s;
        t3 -= a * k * k * k * c;
        double mag = std::abs(a) * (std::abs(s) + std::abs(c) + 1e-300) * k * k * k;
        peak = std::max(peak, mag);
        if (n > 2 && mag < 1e-19 * peak) break;
    }
    return {t0, t1, t2, t3};
}

EllipticPoint Lattice::reduce(Complex z) const {
    // solve z = 2u omega1 + 2t omega3 over the reals
    double a = omega1.real() * 2, b = omega3.real() * 2;
    double c = omega1.imag() * 2, d = omega3.imag() * 2;
    double det = a * d - b * c;
    double u = (z.real() * d - z.imag() * b) / det;
    double t = (z.imag() * a - z.real() * c) / det;
    EllipticPoint p;
    p.z = z;
    p.m = std::lround(u);
    p.n = std::lround(t);
    p.reduced = z - 2.0 * static_cast<double>(p.m) * omega1 - 2.0 * static_cast<double>(p.n) * omega3;
    return p;
}

double Lattice::scale() const {
    return max3(std::abs(e[0]), std::abs(e[1]), std::abs(e[2])) + 1.0;
}

Complex Lattice::wp_raw(Complex z) const {
    Complex v = kPi * z / (2.0 * omega1);
    Theta th = theta1(v);
    Complex r = th.t1 / th.t0;
    Complex f = kPi / (2.0 * omega1);
    return -eta[0] / omega1 - f * f * (th.t2 / th.t0 - r * r);
}

Complex Lattice::wp_prime_raw(Complex z) const {
    Complex v = kPi * z / (2.0 * omega1);
    Theta th = theta1(v);
    Complex r = th.t1 / th.t0;
    Complex f = kPi / (2.0 * omega1);
    return -f * f * f * (th.t3 / th.t0 - 3.0 * (th.t2 / th.t0) * r + 2.0 * r * r * r);
}

Complex Lattice::zeta_raw(Complex z) const {
    Complex v = kPi * z / (2.0 * omega1);
    Theta th = theta1(v);
    return eta[0] * z / omega1 + kPi / (2.0 * omega1) * th.t1 / th.t0;
}

Complex Lattice::sigma_raw(Complex z) const {
    Complex v = kPi * z / (2.0 * omega1);
    Theta th = theta1(v);
    Theta th0 = theta1(Complex(0.0, 0.0));
    return 2.0 * omega1 / kPi * std::exp(eta[0] * z * z / (2.0 * omega1)) * th.t0 / th0.t1;
}

Complex Lattice::wp(Complex z) const {
    EllipticPoint p = reduce(z);
    if (std::abs(p.reduced) < 1e-11 * std::abs(omega1))
        throw PoleAtArgument("wp at lattice point");
    return wp_raw(p.reduced);
}

Complex Lattice::wp_prime(Complex z) const {
    EllipticPoint p = reduce(z);
    if (std::abs(p.reduced) < 1e-11 * std::abs(omega1))
        throw PoleAtArgument("wp' at lattice point");
    return wp_prime_raw(p.reduced);
}

Complex Lattice::zeta(Complex z) const {
    EllipticPoint p = reduce(z);
    if (std::abs(p.reduced) < 1e-11 * std::abs(omega1))
        throw PoleAtArgument("zeta at lattice point");
    return zeta_raw(p.reduced) + 2.0 * static_cast<double>(p.m) * eta[0] +
           2.0 * static_cast<double>(p.n) * eta[2];
}

Complex Lattice::sigma(Complex z) const {
    EllipticPoint p = reduce(z);
    double sg = ((p.m + p.n + p.m * p.n) % 2 == 0) ? 1.0 : -1.0;
    Complex etaShift = 2.0 * static_cast<double>(p.m) * eta[0] + 2.0 * static_cast<double>(p.n) * eta[2];
    Complex mid = p.reduced + static_cast<double>(p.m) * omega1 + static_cast<double>(p.n) * omega3;
    return sg * sigma_raw(p.reduced) * std::exp(etaShift * mid);
}

Complex Lattice::co_sigma(int k, Complex z) const {
    if (k < 1 || k > 3) throw Error("co_sigma: k in 1..3");
    const Complex& wk = (k == 1) ? omega1 : (k == 2) ? omega2 : omega3;
    const Complex& ek = eta[static_cast<size_t>(k - 1)];
    return std::exp(-ek * z) * sigma(z + wk) / sigma(wk);
}

Complex Lattice::co_wp(int k, Complex z) const { return co_sigma(k, z) / sigma(z); }

Complex Lattice::wp_inverse(Complex v, Complex v_prime) const {
    double sc = std::pow(std::abs(v) + scale(), 3);
    Complex curve = v_prime * v_prime - (4.0 * v * v * v - g2 * v - g3);
    if (std::abs(curve) > 1e4 * tol * sc) throw NotOnCurve("wp_inverse: point off curve");

    const std::array<Complex, 3> omegas = {omega1, omega2, omega3};
    for (int k = 0; k < 3; ++k) {
        if (std::abs(v - e[static_cast<size_t>(k)]) < 1e3 * tol * scale() &&
            std::abs(v_prime) < 1e3 * tol * sc)
            return omegas[static_cast<size_t>(k)];
    }

    Complex t = carlson_rf(v - e[0], v - e[1], v - e[2]);
    auto newton = [&](Complex t0) -> std::optional<Complex> {
        Complex tc = t0;
        for (int it = 0; it < 60; ++it) {
            EllipticPoint p = reduce(tc);
            if (std::abs(p.reduced) < 1e-9 * std::abs(omega1)) return std::nullopt;
            Complex f = wp_raw(p.reduced) - v;
            Complex d = wp_prime_raw(p.reduced);
            if (std::abs(d) < 1e-14) return std::nullopt;
            Complex step = f / d;
            tc = p.reduced - step;
            if (std::abs(step) < 1e-15 * (std::abs(tc) + 1.0)) return tc;
        }
        return std::nullopt;
    };

    std::optional<Complex> best = newton(t);
    if (!best || std::abs(wp_raw(reduce(*best).reduced) - v) > 1e-7 * (std::abs(v) + scale())) {
        // grid fallback over the fundamental cell
        double bestErr = 1e300;
        Complex bestT = t;
        for (int iu = 1; iu < 20; ++iu)
            for (int it2 = 1; it2 < 20; ++it2) {
                Complex cand = (iu / 20.0 - 0.5) * 2.0 * omega1 + (it2 / 20.0 - 0.5) * 2.0 * omega3;
                if (std::abs(cand) < 0.02 * std::abs(omega1)) continue;
                double err = std::abs(wp_raw(cand) - v);
                if (err < bestErr) {
                    bestErr = err;
                    bestT = cand;
                }
            }
        best = newton(bestT);
        if (!best) throw NotOnCurve("wp_inverse: iteration failed");
    }
    Complex tt = *best;
    Complex wpp = wp_prime_raw(reduce(tt).reduced);
    if (std::abs(wpp - v_prime) > std::abs(wpp + v_prime)) tt = -tt;
    tt = reduce(tt).reduced;
    if (std::abs(wp_raw(tt) - v) > 1e-6 * (std::abs(v) + scale()))
        throw NotOnCurve("wp_inverse: verification failed");
    return tt;
}

Lattice lattice_from_half_periods(Complex omega1, Complex omega3, double tol) {
    if (tol <= 0) throw Error("tol must be positive");
    Complex tau = omega3 / omega1;
    if (!(tau.imag() > 0)) throw DegenerateLattice("Im(omega3/omega1) must be positive");
    Lattice L;
    L.omega1 = omega1;
    L.omega3 = omega3;
    L.omega2 = -omega1 - omega3;
    L.tol = tol;
    L.tau_ = tau;
    L.q_ = std::exp(kI * kPi * tau);

    Lattice::Theta t00 = L.theta1(Complex(0.0, 0.0));
    L.eta[0] = -kPi * kPi / (12.0 * omega1) * (t00.t3 / t00.t1);
    // eta_3 straight from the series, eta_2 from the sum rule
    {
        Complex v3 = kPi * omega3 / (2.0 * omega1);
        Lattice::Theta th = L.theta1(v3);
        L.eta[2] = L.eta[0] * omega3 / omega1 + kPi / (2.0 * omega1) * th.t1 / th.t0;
    }
    L.eta[1] = -L.eta[0] - L.eta[2];

    L.e[0] = L.wp_raw(omega1);
    L.e[1] = L.wp_raw(L.omega2);
    L.e[2] = L.wp_raw(omega3);
    L.g2 = -4.0 * (L.e[0] * L.e[1] + L.e[1] * L.e[2] + L.e[2] * L.e[0]);
    L.g3 = 4.0 * L.e[0] * L.e[1] * L.e[2];

    double sc = L.scale();
    if (std::abs(L.e[0] + L.e[1] + L.e[2]) > 1e3 * tol * sc)
        throw DegenerateLattice("branch points do not sum to zero");
    Complex legendre = L.eta[0] * omega3 - L.eta[2] * omega1 - kI * kPi / 2.0;
    if (std::abs(legendre) > 1e3 * tol * (std::abs(L.eta[0] * omega3) + 1.0))
        throw DegenerateLattice("Legendre relation violated");
    Complex disc = L.g2 * L.g2 * L.g2 - 27.0 * L.g3 * L.g3;
    if (std::abs(disc) < tol * std::pow(sc, 6))
        throw DegenerateLattice("vanishing discriminant");
    return L;
}

Lattice lattice_from_branch_points(const Rational& e1, const Rational& e2, const Rational& e3,
                                   double tol) {
    if (e1 == e2 || e2 == e3 || e1 == e3) throw DegenerateLattice("repeated branch point");
    if (!is_zero(Rational(e1 + e2 + e3))) throw DegenerateLattice("branch points must sum to zero");

    std::array<Rational, 3> given = {e1, e2, e3};
    std::array<int, 3> idx = {0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return given[static_cast<size_t>(a)] > given[static_cast<size_t>(b)]; });
    double a1 = given[static_cast<size_t>(idx[0])].get_d();
    double a2 = given[static_cast<size_t>(idx[1])].get_d();
    double a3 = given[static_cast<size_t>(idx[2])].get_d();

    Complex wI = carlson_rf(Complex(0), Complex(a1 - a2), Complex(a1 - a3));
    Complex wIII = kI * carlson_rf(Complex(0), Complex(a1 - a3), Complex(a2 - a3));
    std::array<Complex, 3> half;           // half-period for sorted slot 0,1,2
    half[0] = wI;
    half[2] = wIII;
    half[1] = -wI - wIII;

    std::array<Complex, 3> assigned;  // assigned[k] belongs to given e_{k+1}
    for (int s = 0; s < 3; ++s) assigned[static_cast<size_t>(idx[static_cast<size_t>(s)])] = half[static_cast<size_t>(s)];
    Complex w1 = assigned[0], w3 = assigned[2];
    if (!((w3 / w1).imag() > 0)) w3 = -w3;

    Lattice L = lattice_from_half_periods(w1, w3, tol);
    for (int k = 0; k < 3; ++k) {
        if (std::abs(L.e[static_cast<size_t>(k)] - Complex(given[static_cast<size_t>(k)].get_d(), 0.0)) >
            1e5 * tol * L.scale())
            throw DegenerateLattice("constructed lattice does not reproduce branch points");
    }
    L.has_exact = true;
    L.e_exact = given;
    return L;
}

}  // namespace heun
