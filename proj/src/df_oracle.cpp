#include "fusion_forge/df_oracle.hpp"

#include "fusion_forge/path_ode.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fusion_forge {

namespace {

constexpr double kPi = std::numbers::pi;
const cd I(0.0, 1.0);

cd s(cd x) { return std::sin(kPi * x); }
cd c(cd x) { return std::cos(kPi * x); }

cd nonzero(cd v, const char* label) {
    if (std::abs(v) < 1e-14) throw std::domain_error(std::string("vanishing factor ") + label);
    return v;
}

cd gamma_named(cd z, const std::string& label) {
    try {
        return complex_gamma(z);
    } catch (const PoleError&) {
        throw PoleError("pole of " + label);
    }
}

cd half_sum(cd g) { return 0.5 * (1.0 + std::exp(I * kPi * g)); }

// x(x-1)...(x-k+1)
cd falling(cd x, int k) {
    cd r = 1.0;
    for (int i = 0; i < k; ++i) r *= x - static_cast<double>(i);
    return r;
}

// Coefficients of z^0, z^1, z^2 in the polynomial multiplying w^(k) once the equation
// is cleared by z^2 (z-1)^2.
using Poly = std::array<std::array<cd, 3>, 4>;

Poly clear_denominators(const DFCoefficients& C) {
    const cd S = C.K1 + C.K2;
    Poly r;
    r[3] = {1.0, -2.0, 1.0};
    r[2] = {C.K2, -S - C.K2, S};
    r[1] = {C.L2, -2.0 * C.L2 - C.L3, C.L1 + C.L2 + C.L3};
    r[0] = {0.0, -C.M2, C.M1 + C.M2};
    return r;
}

cd P(const Poly& r, int j, cd x) {
    cd acc = 0.0;
    for (int k = 0; k < 4; ++k) acc += r[k][j] * falling(x, k);
    return acc;
}

}  // namespace

DFParams fitting(int n, int k, cd kappa) {
    if (std::abs(kappa) == 0.0) throw std::invalid_argument("kappa must be nonzero");
    return {static_cast<double>(2 * (n - 1) + k) / kappa, -(kappa + 1.0) / kappa, -static_cast<double>(k) / kappa,
            -2.0 * (n - 2) / kappa};
}

bool good_range(const DFParams& p) {
    const double a = p.a.real(), b = p.b.real(), cc = p.c.real(), g = p.g.real();
    return a > -1 && b > -1 && cc > -1 && g > -1 && 2 * a + g > -2 && 2 * b + g > -2 && 2 * cc + g > -2 &&
           a + b + cc + g < -1 && 2 * a + 2 * b + 2 * cc + g < -2;
}

bool kappa_range(int n, int k, cd kappa) {
    const double h = 0.5 * (2 * (n - 1) + k);
    return kappa.real() < 0 && std::norm(kappa + h) > h * h;
}

bool selberg_range0(cd alpha, cd beta, cd gamma) {
    const double a = alpha.real(), b = beta.real(), g = gamma.real();
    return a > -1 && b > -1 && g > -1 && 2 * a + g > -2 && 2 * b + g > -2;
}

DFCoefficients df_coefficients(const DFParams& p) {
    const cd a = p.a, b = p.b, cc = p.c, g = p.g;
    DFCoefficients C;
    C.K1 = -(g + 3.0 * b + 3.0 * cc);
    C.K2 = -(g + 3.0 * a + 3.0 * cc);
    C.L1 = (b + cc) * (2.0 * b + 2.0 * cc + g + 1.0);
    C.L2 = (a + cc) * (2.0 * a + 2.0 * cc + g + 1.0);
    C.L3 = (b + cc) * (2.0 * a + 2.0 * cc + g + 1.0) + (a + cc) * (2.0 * b + 2.0 * cc + g + 1.0) +
           (cc - 1.0) * (a + b + cc) + (3.0 * cc + g) * (a + b + cc + g + 1.0);
    C.M1 = -cc * (2.0 * b + 2.0 * cc + g + 1.0) * (2.0 * a + 2.0 * b + 2.0 * cc + g + 2.0);
    C.M2 = -cc * (2.0 * a + 2.0 * cc + g + 1.0) * (2.0 * a + 2.0 * b + 2.0 * cc + g + 2.0);
    return C;
}

DFCoefficients kz_reduction_coefficients(int n, int k, cd kappa) {
    const double nd = n, kd = k;
    const cd K = kappa, K2 = kappa * kappa, K3 = K2 * kappa;
    DFCoefficients C;
    C.K1 = (2 * nd + 3.0 * (kd + K) - 1.0) / K;
    C.K2 = -2.0 * (2 * nd - 1) / K;
    C.L1 = (1.0 + kd + K) * (K + 2 * (nd + kd - 1)) / K2;
    C.L2 = 2.0 * (nd - 1) * (2 * nd + K) / K2;
    C.L3 = -2.0 * (2 * nd * nd + 4 * kd * nd + 3.0 * nd * K - 2.0 * (nd + kd + K)) / K2;
    C.M1 = -2.0 * kd * (nd - 1) * (K + 2 * (nd + kd - 1)) / K3;
    C.M2 = 2.0 * kd * (nd - 1) * (2 * nd + K) / K3;
    return C;
}

cd selberg_J2(cd alpha, cd beta, cd gamma) {
    cd out = 1.0;
    for (int j = 1; j <= 2; ++j) {
        const cd h = static_cast<double>(j - 1) * gamma / 2.0;
        const std::string js = std::to_string(j);
        const cd num = gamma_named(static_cast<double>(j) * gamma / 2.0 + 1.0, "Gamma(" + js + " gamma/2 + 1)") *
                       gamma_named(alpha + h + 1.0, "Gamma(alpha + " + std::to_string(j - 1) + " gamma/2 + 1)") *
                       gamma_named(beta + h + 1.0, "Gamma(beta + " + std::to_string(j - 1) + " gamma/2 + 1)");
        const cd den = gamma_named(gamma / 2.0 + 1.0, "Gamma(gamma/2 + 1)") *
                       gamma_named(alpha + beta + static_cast<double>(j) * gamma / 2.0 + 2.0,
                                   "Gamma(alpha + beta + " + js + " gamma/2 + 2)");
        out *= num / den;
    }
    return out;
}

QuadratureResult quadrature_oracle_J2(cd alpha, cd beta, cd gamma) {
    if (!selberg_range0(alpha, beta, gamma)) throw std::domain_error("J2 integral does not converge at these parameters");
    if (!(gamma.real() > 0)) throw std::domain_error("quadrature oracle needs Re gamma > 0");
    // By symmetry J2 = 2 int_{t2 < t1}; with t2 = t1 u the diagonal becomes the edge u = 1:
    // 2 int t^{2 alpha + gamma + 1} (1-t)^beta int u^alpha (1 - t u)^beta (1-u)^gamma du dt.
    // The two-argument (x, complement) form keeps the endpoint distances exact; it only
    // takes real integrands, so real and imaginary parts are integrated separately.
    boost::math::quadrature::tanh_sinh<double> outer_q, inner_q;
    const bool real_params = alpha.imag() == 0 && beta.imag() == 0 && gamma.imag() == 0;
    double inner_err_max = 0.0;
    auto split = [](double x, double xc) {
        // distance to the left and right endpoints of [0, 1]
        return xc < 0 ? std::pair{-xc, 1.0 - x} : std::pair{x, xc};
    };
    auto inner_value = [&](double t0, double t1) -> cd {
        auto f = [&](double u, double uc) -> cd {
            const auto [u0, u1] = split(u, uc);
            const double one_minus_tu = t1 + t0 * u1;
            return std::pow(cd(u0), alpha) * std::pow(cd(one_minus_tu), beta) * std::pow(cd(u1), gamma);
        };
        double e_re = 0.0, e_im = 0.0;
        const double re = inner_q.integrate([&](double u, double uc) { return f(u, uc).real(); }, 0.0, 1.0, 1e-13, &e_re);
        const double im = real_params ? 0.0
                                       : inner_q.integrate([&](double u, double uc) { return f(u, uc).imag(); }, 0.0, 1.0,
                                                           1e-13, &e_im);
        inner_err_max = std::max({inner_err_max, e_re, e_im});
        return {re, im};
    };
    auto outer = [&](double t, double tc) -> cd {
        const auto [t0, t1] = split(t, tc);
        return std::pow(cd(t0), 2.0 * alpha + gamma + 1.0) * std::pow(cd(t1), beta) * inner_value(t0, t1);
    };
    double e_re = 0.0, e_im = 0.0;
    const double re = outer_q.integrate([&](double t, double tc) { return outer(t, tc).real(); }, 0.0, 1.0, 1e-12, &e_re);
    const double im = real_params ? 0.0
                                   : outer_q.integrate([&](double t, double tc) { return outer(t, tc).imag(); }, 0.0, 1.0,
                                                       1e-12, &e_im);
    const cd v = 2.0 * cd(re, im);
    const double err = e_re + e_im;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::domain_error("J2 quadrature did not converge");
    return {v, 2.0 * (err + inner_err_max)};
}

std::string to_string(RhoInf2 v) {
    switch (v) {
        case RhoInf2::statement: return "statement";
        case RhoInf2::proof: return "proof";
        case RhoInf2::transport: return "transport";
    }
    return "?";
}

RhoCoefficients rho_coefficients(const DFParams& p, RhoInf2 variant) {
    const cd a = p.a, b = p.b, cc = p.c, g = p.g;
    const cd h = half_sum(g);
    const cd far = -(2.0 + a + b + cc + g);
    RhoCoefficients r;
    r.r01 = h * selberg_J2(far, b, g);
    r.r02 = complex_beta(a + 1.0, cc + 1.0, "B(a+1,c+1)") * complex_beta(-(1.0 + a + b + cc), b + 1.0, "B(-(1+a+b+c),b+1)");
    r.r03 = h * selberg_J2(a, cc, g);
    r.ri1 = h * selberg_J2(a, b, g);
    const cd bab = complex_beta(a + 1.0, b + 1.0, "B(a+1,b+1)");
    switch (variant) {
        case RhoInf2::statement: r.ri2 = bab * complex_beta(-(1.0 + a + b + cc), cc + 1.0, "B(-(1+a+b+c),c+1)"); break;
        case RhoInf2::proof:
        case RhoInf2::transport:
            r.ri2 = bab * complex_beta(-(1.0 + a + b + cc + g), cc + 1.0, "B(-(1+a+b+c+g),c+1)");
            // The proof drops a sign and the phase of (t-1)^b on this contour.
            if (variant == RhoInf2::transport) r.ri2 *= -std::exp(I * kPi * (a + cc + g));
            break;
    }
    r.ri3 = h * selberg_J2(far, cc, g);
    return r;
}

std::array<cd, 3> connection_identity(const DFParams& p, Coef3Form form) {
    const cd a = p.a, b = p.b, cc = p.c, g = p.g;
    const cd sab = nonzero(s(a + b), "sin(pi(a+b))");
    const cd sabh = nonzero(s(a + b + g / 2.0), "sin(pi(a+b+g/2))");
    const cd sabg = nonzero(s(a + b + g), "sin(pi(a+b+g))");
    std::array<cd, 3> out;
    out[0] = s(a) * s(a + g / 2.0) / (sabh * sabg);
    out[1] = 2.0 * std::exp(-I * kPi * (a + cc + g / 2.0)) * c(g / 2.0) * s(a) * s(cc) / (sab * sabg);
    out[2] = form == Coef3Form::printed ? s(cc) * s(cc + g / 2.0) / (sabh * sabh) : s(cc) * s(cc + g / 2.0) / (sab * sabh);
    return out;
}

std::array<cd, 3> df_exponents_zero(const DFParams& p) {
    return {0.0, 1.0 + p.a + p.c, 2.0 + 2.0 * p.a + 2.0 * p.c + p.g};
}

std::array<cd, 3> df_exponents_infinity(const DFParams& p) {
    return {2.0 * p.c, 1.0 + p.a + p.b + 2.0 * p.c + p.g, 2.0 + 2.0 * (p.a + p.b + p.c) + p.g};
}

std::vector<cd> df_series_zero(const DFCoefficients& C, cd s0, int order) {
    const Poly r = clear_denominators(C);
    std::vector<cd> a{1.0};
    for (int N = 1; N <= order; ++N) {
        cd tot = 0.0;
        for (int j = 1; j <= 2 && N - j >= 0; ++j) tot += P(r, j, static_cast<double>(N - j) + s0) * a[N - j];
        const cd d = P(r, 0, static_cast<double>(N) + s0);
        if (std::abs(d) < 1e-12) throw std::domain_error("resonant exponent at 0");
        a.push_back(-tot / d);
    }
    return a;
}

std::vector<cd> df_series_infinity(const DFCoefficients& C, cd sigma, int order) {
    const Poly r = clear_denominators(C);
    std::vector<cd> b{1.0};
    for (int N = 1; N <= order; ++N) {
        cd tot = P(r, 1, sigma - static_cast<double>(N) + 1.0) * b[N - 1];
        if (N >= 2) tot += P(r, 0, sigma - static_cast<double>(N) + 2.0) * b[N - 2];
        const cd d = P(r, 2, sigma - static_cast<double>(N));
        if (std::abs(d) < 1e-12) throw std::domain_error("resonant exponent at infinity");
        b.push_back(-tot / d);
    }
    return b;
}

DFTransport df_transport(const DFParams& p, RhoInf2 variant, Coef3Form form, double delta, int order) {
    const DFCoefficients C = df_coefficients(p);
    auto field = [&](cd z, const CVec& y, CVec& dy) {
        const cd zm = z - 1.0, z2 = z * z * zm * zm;
        const cd Pz = (C.K1 * z + C.K2 * zm) / (z * zm);
        const cd Q = (C.L1 * z * z + C.L2 * zm * zm + C.L3 * z * zm) / z2;
        const cd R = (C.M1 * z + C.M2 * zm) / z2;
        dy.resize(3);
        dy[0] = y[1];
        dy[1] = y[2];
        dy[2] = -(Pz * y[2] + Q * y[1] + R * y[0]);
    };

    // exponent-0 solution at 0: integer powers only
    const std::vector<cd> a0 = df_series_zero(C, 0.0, order);
    const cd z0(-delta, 0.0);
    CVec y0(3, 0.0);
    for (int m = static_cast<int>(a0.size()) - 1; m >= 0; --m) {
        const double md = m;
        const cd t = a0[m] * std::pow(z0, m);
        y0[0] += t;
        y0[1] += md * t / z0;
        y0[2] += md * (md - 1) * t / (z0 * z0);
    }

    PathStats stats;
    const cd z1(-1.0 / delta, 0.0);
    const CVec y1 = integrate_path(field, segment(z0, z1), y0, Tolerances{1e-12, 1e-14}, &stats);

    Eigen::Matrix3cd G;
    const auto sig = df_exponents_infinity(p);
    const double lz = std::log(1.0 / delta);  // log(-z), real on the negative axis
    for (int j = 0; j < 3; ++j) {
        const std::vector<cd> b = df_series_infinity(C, sig[j], order);
        cd f = 0.0, fp = 0.0, fpp = 0.0;
        const cd lead = std::exp(sig[j] * lz);
        for (int m = static_cast<int>(b.size()) - 1; m >= 0; --m) {
            const cd e = sig[j] - static_cast<double>(m);
            const cd t = b[m] * lead * std::pow(z1, -m);
            f += t;
            fp += e * t / z1;
            fpp += e * (e - 1.0) * t / (z1 * z1);
        }
        G(0, j) = f;
        G(1, j) = fp;
        G(2, j) = fpp;
    }
    Eigen::Vector3cd rhs(y1[0], y1[1], y1[2]);
    const Eigen::Vector3cd lam = G.partialPivLu().solve(rhs);
    const Eigen::JacobiSVD<Eigen::Matrix3cd> svd(G);
    const auto sv = svd.singularValues();

    const RhoCoefficients rho = rho_coefficients(p, variant);
    const auto co = connection_identity(p, form);
    const std::array<cd, 3> ri{rho.ri1, rho.ri2, rho.ri3};

    DFTransport out;
    out.condition = sv(0) / sv(2);
    out.steps = stats.steps;
    for (int j = 0; j < 3; ++j) {
        out.odetransport[j] = rho.r01 * lam(j);
        out.closed[j] = ri[j] * co[j];
        out.rel_residual[j] = std::abs(out.odetransport[j] - out.closed[j]) / std::abs(out.closed[j]);
    }
    return out;
}

}  // namespace fusion_forge
