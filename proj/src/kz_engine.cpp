#include "fusion_forge/kz_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>

namespace fusion_forge {

namespace {

constexpr double kPi = std::numbers::pi;
const cd I(0.0, 1.0);

CMat3 to_complex(const RMat3& m) {
    CMat3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out(i, j) = boost::rational_cast<double>(m[i][j]);
    return out;
}

RMat3 diag(Rational a, Rational b, Rational c) {
    RMat3 m{};
    m[0][0] = a;
    m[1][1] = b;
    m[2][2] = c;
    return m;
}

bool spectrum_is(const RMat3& m, const std::array<Rational, 3>& roots) {
    const auto& [r1, r2, r3] = roots;
    const std::array<Rational, 3> expect{-r1 * r2 * r3, r1 * r2 + r1 * r3 + r2 * r3, -(r1 + r2 + r3)};
    return char_poly(m) == expect;
}

std::array<Rational, 3> spectrum23(int n, int k) { return {Rational(k), Rational(-1), Rational(-2 * (n - 1) - k)}; }

// Smallest max-distance matching of computed and expected eigenvalues.
double match_eigenvalues(const CMat3& m, const std::array<cd, 3>& expected) {
    const Eigen::ComplexEigenSolver<CMat3> es(m);
    const Vec3 ev = es.eigenvalues();
    std::array<int, 3> p{0, 1, 2};
    double best = INFINITY;
    do {
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(ev(p[i]) - expected[i]));
        best = std::min(best, worst);
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

std::array<cd, 3> solve3(const CMat3& G, const Vec3& rhs, PathMeta* meta) {
    const Vec3 x = G.fullPivLu().solve(rhs);
    if (meta) {
        const Eigen::JacobiSVD<CMat3> svd(G);
        const auto sv = svd.singularValues();
        meta->condition = sv(0) / sv(2);
        meta->ill_conditioned = meta->condition > 1e8;
    }
    return {x(0), x(1), x(2)};
}

CVec to_cvec(const Vec3& v) { return {v(0), v(1), v(2)}; }
Vec3 to_vec3(const CVec& v) { return Vec3(v[0], v[1], v[2]); }

Field kz_field(const KZSystem& sys) {
    const CMat3 A = sys.A(), B = sys.B();
    return [A, B](cd z, const CVec& y, CVec& dy) {
        const Vec3 f(y[0], y[1], y[2]);
        const Vec3 r = (A / z + B / (z - 1.0)) * f;
        dy.assign({r(0), r(1), r(2)});
    };
}

// Columns of a fundamental matrix, stacked.
Field kz_matrix_field(const KZSystem& sys) {
    const CMat3 A = sys.A(), B = sys.B();
    return [A, B](cd z, const CVec& y, CVec& dy) {
        const CMat3 M = A / z + B / (z - 1.0);
        dy.resize(9);
        for (int c = 0; c < 3; ++c) {
            const Vec3 col(y[3 * c], y[3 * c + 1], y[3 * c + 2]);
            const Vec3 r = M * col;
            for (int i = 0; i < 3; ++i) dy[3 * c + i] = r(i);
        }
    };
}

CMat3 run_loop(const Field& f, const std::vector<Path>& paths, Tolerances tol) {
    CVec y(9, 0.0);
    y[0] = y[4] = y[8] = 1.0;
    y = integrate_chain(f, paths, y, tol);
    CMat3 M;
    for (int c = 0; c < 3; ++c)
        for (int i = 0; i < 3; ++i) M(i, c) = y[3 * c + i];
    return M;
}

std::optional<int> physical_level(int n, cd kappa) {
    if (kappa.imag() != 0.0) return std::nullopt;
    const double l = kappa.real() - 2.0 * (n - 1);
    if (l >= 1 && l == std::round(l)) return static_cast<int>(l);
    return std::nullopt;
}

void fill_residuals(ConnectionResult& r) {
    for (int j = 0; j < 3; ++j) {
        r.rel_residual[j] = std::abs(r.lambdas[j] - r.closed_form[j]) / std::abs(r.closed_form[j]);
        const cd rn = r.lambdas[j] / r.lambdas[2], rc = r.closed_form[j] / r.closed_form[2];
        r.ratio_residual[j] = std::abs(rn - rc) / std::abs(rc);
    }
}

}  // namespace

CMat3 KZSystem::A() const {
    RMat3 m = Omega12;
    for (int i = 0; i < 3; ++i) m[i][i] -= delta0;
    return to_complex(m) / kappa;
}
CMat3 KZSystem::B() const { return to_complex(Omega23) / kappa; }
CMat3 KZSystem::C() const { return to_complex(Omega13) / kappa; }

RMat3 rational_product(const RMat3& x, const RMat3& y) {
    RMat3 out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l) out[i][j] += x[i][l] * y[l][j];
    return out;
}

std::array<Rational, 3> char_poly(const RMat3& m) {
    const Rational tr = m[0][0] + m[1][1] + m[2][2];
    const Rational minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) + (m[0][0] * m[2][2] - m[0][2] * m[2][0]) +
                            (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    const Rational det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    return {-det, minors, -tr};
}

KZInvariants check_invariants(const KZSystem& sys) {
    const int n = sys.n, k = sys.k;
    KZInvariants inv;
    inv.spectrum12 = spectrum_is(sys.Omega12, {Rational(1), Rational(-1), Rational(1 - 2 * n)});
    inv.spectrum23 = spectrum_is(sys.Omega23, spectrum23(n, k));
    inv.spectrum13 = spectrum_is(sys.Omega13, spectrum23(n, k));
    inv.trace = true;
    inv.infinity_residue = true;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Rational s = sys.Omega12[i][j] + sys.Omega23[i][j] + sys.Omega13[i][j];
            inv.trace = inv.trace && s == (i == j ? Rational(1 - 2 * n) : Rational(0));
            const Rational res = -(sys.Omega12[i][j] - (i == j ? sys.delta0 : Rational(0)) + sys.Omega23[i][j]);
            inv.infinity_residue = inv.infinity_residue && res == sys.Omega13[i][j];
        }
    const RMat3 F = diag(1, -1, 1);
    inv.similarity = rational_product(rational_product(F, sys.Omega23), F) == sys.Omega13;
    return inv;
}

KZSystem build_system(int n, int k, cd kappa) {
    if (n < 3) throw std::invalid_argument("build_system: rank must be at least 3");
    if (k < 1) throw std::invalid_argument("build_system: k must be at least 1");
    if (std::abs(kappa) == 0.0) throw std::invalid_argument("build_system: kappa must be nonzero");
    KZSystem sys;
    sys.n = n;
    sys.k = k;
    sys.kappa = kappa;
    sys.delta0 = Rational(1 - 2 * n);
    const Rational xx = Rational(n - 1, n) * Rational(k * k + 2 * k * (n - 1) + n * (n - 2));
    const Rational yy = Rational(k, n) * Rational(k + 2 * (n - 1));
    sys.Omega12 = diag(1, -1, 1 - 2 * n);
    sys.Omega23 = {{{Rational(-n), xx, Rational(0)}, {Rational(1), Rational(1 - n), yy}, {Rational(0), Rational(1), Rational(0)}}};
    sys.Omega13 = rational_product(rational_product(diag(1, -1, 1), sys.Omega23), diag(1, -1, 1));
    const KZInvariants inv = check_invariants(sys);
    if (!inv.spectrum12) throw KZInvariantError("Omega12 spectrum");
    if (!inv.spectrum23) throw KZInvariantError("Omega23 spectrum");
    if (!inv.spectrum13) throw KZInvariantError("Omega13 spectrum");
    if (!inv.trace) throw KZInvariantError("Omega12 + Omega23 + Omega13 != (1-2n) Id");
    if (!inv.infinity_residue) throw KZInvariantError("residue at infinity != Omega13");
    return sys;
}

Vec3 kz_rhs(const KZSystem& sys, cd z, const Vec3& F) {
    if (std::abs(z) < 1e-300 || std::abs(z - 1.0) < 1e-300)
        throw std::domain_error("kz_rhs: z is a singular point");
    return (sys.A() / z + sys.B() / (z - 1.0)) * F;
}

Vec3 LocalBasis::evaluate(int j, cd x, cd log_x) const {
    const auto& a = series[static_cast<std::size_t>(j)];
    Vec3 acc = Vec3::Zero();
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
    return std::exp(exponents[static_cast<std::size_t>(j)] * log_x) * acc;
}

CMat3 LocalBasis::matrix(cd x, cd log_x) const {
    CMat3 G;
    for (int j = 0; j < 3; ++j) G.col(j) = evaluate(j, x, log_x);
    return G;
}

LocalBasis frobenius_basis(const KZSystem& sys, Point point, int order) {
    if (order < 0) throw std::invalid_argument("frobenius_basis: negative order");
    const int n = sys.n, k = sys.k;
    const cd kappa = sys.kappa;
    LocalBasis lb;
    lb.point = point;
    std::array<Vec3, 3> lead;
    CMat3 R;
    if (point == Point::zero) {
        R = sys.A();
        lb.exponents = {2.0 * n / kappa, (2.0 * n - 2.0) / kappa, 0.0};
        lb.reduced_exponents = lb.exponents;
        lb.labels = {"2theta1", "theta1+theta2", "0"};
        for (int j = 0; j < 3; ++j) lead[j] = Vec3::Unit(j);
    } else {
        R = sys.C();
        const auto d = spectrum23(n, k);
        // Exact eigenvectors of Omega13 with last entry 1.
        const Rational X = -sys.Omega13[0][1];
        for (int j = 0; j < 3; ++j) {
            const Rational v2 = -d[j];
            const Rational v1 = X * d[j] / (Rational(n) + d[j]);
            const std::array<Rational, 3> v{v1, v2, Rational(1)};
            for (int i = 0; i < 3; ++i) {
                Rational row = -d[j] * v[i];
                for (int l = 0; l < 3; ++l) row += sys.Omega13[i][l] * v[l];
                if (row != Rational(0)) throw KZInvariantError("eigenvector of Omega13");
            }
            lead[j] = Vec3(boost::rational_cast<double>(v1), boost::rational_cast<double>(v2), 1.0);
            lb.exponents[j] = boost::rational_cast<double>(d[j]) / kappa;
            lb.reduced_exponents[j] = lb.exponents[j] + static_cast<double>(k) / kappa;
        }
        lb.labels = {"(k+1)theta1", "k theta1+theta2", "(k-1)theta1"};
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            const cd d = lb.exponents[i] - lb.exponents[j];
            const double m = std::round(d.real());
            if (m != 0.0 && std::abs(d - m) < 1e-9)
                throw ResonanceError(std::string("exponents at ") + (point == Point::zero ? "0" : "infinity") +
                                     " differ by an integer; use the deformed-kappa path");
        }
    const CMat3 B = sys.B();
    double tail = 0.0;
    for (int j = 0; j < 3; ++j) {
        auto& a = lb.series[j];
        a.assign(1, lead[j]);
        Vec3 partial = lead[j];
        for (int m = 1; m <= order; ++m) {
            const CMat3 L = R - (lb.exponents[j] + static_cast<double>(m)) * CMat3::Identity();
            a.push_back(L.fullPivLu().solve(B * partial));
            partial += a.back();
        }
        tail = std::max(tail, a.back().cwiseAbs().maxCoeff());
    }
    lb.radius = (order == 0 || tail == 0.0) ? 0.5 : std::min(0.5, std::pow(1e-16 / tail, 1.0 / order));
    return lb;
}

std::array<cd, 3> transport(const KZSystem& sys, const LocalBasis& at0, const LocalBasis& atinf,
                            const TransportOptions& opt, PathMeta* meta) {
    if (at0.point != Point::zero || atinf.point != Point::infinity) throw std::invalid_argument("transport: charts swapped");
    if (opt.delta > at0.radius || opt.delta_prime > atinf.radius)
        throw std::domain_error("transport: hand-off point outside the validated series disc");
    const cd z0(-opt.delta, 0.0), z1(-1.0 / opt.delta_prime, 0.0);
    PathStats stats;
    const Vec3 f0 = at0.evaluate(2, z0, cd(std::log(opt.delta), kPi));
    const CVec y1 = integrate_path(kz_field(sys), segment(z0, z1), to_cvec(f0), opt.tol, &stats);
    const CMat3 G = atinf.matrix(cd(-opt.delta_prime, 0.0), cd(std::log(opt.delta_prime), -kPi));
    PathMeta local;
    auto lam = solve3(G, to_vec3(y1), &local);
    local.delta = opt.delta;
    local.delta_prime = opt.delta_prime;
    local.order = static_cast<int>(at0.series[0].size()) - 1;
    local.rtol = opt.tol.rtol;
    local.atol = opt.tol.atol;
    local.steps = stats.steps;
    if (meta) *meta = local;
    return lam;
}

std::array<cd, 3> transport_back(const KZSystem& sys, const LocalBasis& at0, const LocalBasis& atinf,
                                 const std::array<cd, 3>& coeffs, const TransportOptions& opt, PathMeta* meta) {
    const cd z0(-opt.delta, 0.0), z1(-1.0 / opt.delta_prime, 0.0);
    const CMat3 G = atinf.matrix(cd(-opt.delta_prime, 0.0), cd(std::log(opt.delta_prime), -kPi));
    const Vec3 start = G * Vec3(coeffs[0], coeffs[1], coeffs[2]);
    PathStats stats;
    const CVec y = integrate_path(kz_field(sys), segment(z1, z0), to_cvec(start), opt.tol, &stats);
    const CMat3 H = at0.matrix(z0, cd(std::log(opt.delta), kPi));
    auto c = solve3(H, to_vec3(y), meta);
    if (meta) meta->steps = stats.steps;
    return c;
}

std::array<cd, 3> closed_form_lambdas(int n, int k, cd kappa, const ClosedFormOptions& opt) {
    if (n < 3) throw std::invalid_argument("closed_form_lambdas: rank must be at least 3");
    const DFParams p = fitting(n, k, kappa);
    const RhoCoefficients rho = rho_coefficients(p, opt.rho_variant);
    const auto co = connection_identity(p, opt.coef3);
    if (std::abs(rho.r01) == 0.0) throw std::domain_error("closed_form_lambdas: rho01 vanishes");
    const std::array<cd, 3> ri{rho.ri1, rho.ri2, rho.ri3};
    const std::array<cd, 3> e{2.0 * k / kappa, (k - 1.0) / kappa, -2.0 * (n - 1) / kappa};
    const cd pre = std::exp(-I * kPi * static_cast<double>(k) / kappa) / rho.r01;
    std::array<cd, 3> out;
    for (int j = 0; j < 3; ++j) out[j] = pre * ri[j] * co[j] * std::exp(I * kPi * e[j]);
    return out;
}

double ConnectionResult::max_residual() const {
    double m = 0.0;
    for (int j = 0; j < 3; ++j)
        if (admissible[j]) m = std::max(m, rel_residual[j]);
    return m;
}
double ConnectionResult::max_ratio_residual() const {
    double m = 0.0;
    for (int j = 0; j < 3; ++j)
        if (admissible[j]) m = std::max(m, ratio_residual[j]);
    return m;
}
double ConnectionResult::min_abs_lambda() const {
    double m = INFINITY;
    for (int j = 0; j < 3; ++j)
        if (admissible[j]) m = std::min(m, std::abs(lambdas[j]));
    return m;
}

ConnectionResult connect(int n, int k, cd kappa, const TransportOptions& opt) {
    const KZSystem sys = build_system(n, k, kappa);
    const LocalBasis at0 = frobenius_basis(sys, Point::zero, opt.order);
    const LocalBasis atinf = frobenius_basis(sys, Point::infinity, opt.order);
    ConnectionResult r;
    r.n = n;
    r.k = k;
    r.kappa = kappa;
    r.level = physical_level(n, kappa).value_or(0);
    r.lambdas = transport(sys, at0, atinf, opt, &r.meta);
    r.closed_form = closed_form_lambdas(n, k, kappa);
    fill_residuals(r);
    return r;
}

bool is_resonant(int k, int level) { return level == 2 || level == 2 * k; }

ConnectionResult resonant_lambdas(int n, int k, int level, const TransportOptions& opt) {
    if (!is_resonant(k, level))
        throw std::invalid_argument("resonant_lambdas: level " + std::to_string(level) + " with k = " +
                                    std::to_string(k) + " is not resonant; use connect");
    const double kappa0 = level + 2.0 * (n - 1);
    const std::array<double, 3> etas{1e-2, 5e-3, 2.5e-3};
    std::array<std::array<cd, 3>, 3> lam, cl;
    ConnectionResult r;
    std::size_t steps = 0;
    for (int i = 0; i < 3; ++i) {
        const ConnectionResult c = connect(n, k, kappa0 * cd(1.0, etas[i]), opt);
        lam[i] = c.lambdas;
        cl[i] = c.closed_form;
        steps += c.meta.steps;
        r.meta = c.meta;
    }
    // L(eta) = L0 + c1 eta + c2 eta^2 + ...
    auto extrapolate = [](const std::array<std::array<cd, 3>, 3>& v, std::array<cd, 3>& first) {
        std::array<cd, 3> out;
        for (int j = 0; j < 3; ++j) {
            const cd r1a = 2.0 * v[1][j] - v[0][j];
            const cd r1b = 2.0 * v[2][j] - v[1][j];
            first[j] = r1b;
            out[j] = (4.0 * r1b - r1a) / 3.0;
        }
        return out;
    };
    std::array<cd, 3> first_lam, first_cl;
    r.n = n;
    r.k = k;
    r.level = level;
    r.kappa = kappa0;
    r.resonant = true;
    r.lambdas = extrapolate(lam, first_lam);
    r.closed_form = extrapolate(cl, first_cl);
    r.meta.steps = steps;
    r.admissible = {k < level, k < level, true};
    double scale = 0.0, spread = 0.0;
    for (int j = 0; j < 3; ++j) {
        if (!r.admissible[j]) continue;
        scale = std::max(scale, std::abs(r.lambdas[j]));
        spread = std::max(spread, std::abs(r.lambdas[j] - first_lam[j]));
    }
    r.spread = spread / scale;
    fill_residuals(r);
    if (!(r.spread <= 1e-3)) throw std::runtime_error("resonance too strong: extrapolation spread " + std::to_string(r.spread));
    return r;
}

ConnectionResult connect_level(int n, int k, int level, const TransportOptions& opt) {
    if (level < 1) throw std::invalid_argument("level must be at least 1");
    if (k < 1 || k > level) throw std::invalid_argument("k must lie in 1..level");
    if (is_resonant(k, level)) return resonant_lambdas(n, k, level, opt);
    ConnectionResult r = connect(n, k, cd(level + 2.0 * (n - 1), 0.0), opt);
    r.level = level;
    r.admissible = {k < level, k < level, true};
    return r;
}

double ScalarReduction::max_residual() const {
    return df_residual.empty() ? 0.0 : *std::max_element(df_residual.begin(), df_residual.end());
}
double ScalarReduction::max_reconstruction_error() const {
    return reconstruction_error.empty() ? 0.0 : *std::max_element(reconstruction_error.begin(), reconstruction_error.end());
}

ScalarReduction scalar_reduce(const KZSystem& sys, const std::vector<cd>& z, const std::vector<Vec3>& f, double stencil,
                              Tolerances tol) {
    if (z.size() != f.size()) throw std::invalid_argument("scalar_reduce: sample size mismatch");
    const int N = 24;
    const cd kappa = sys.kappa;
    const double n = sys.n, k = sys.k;
    const cd e = -k / kappa;  // R = f3 (z-1)^e
    const DFCoefficients C = df_coefficients(fitting(sys.n, sys.k, kappa));
    const Field field = kz_field(sys);

    ScalarReduction out;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const cd zi = z[i];
        const cd log_zm1 = std::log(zi - 1.0);
        const cd phi = std::exp(e * log_zm1);
        const double r = stencil * std::min(std::abs(zi), std::abs(zi - 1.0));

        // w on a circle about zi, continuing log(z-1) from zi.
        const CVec start = integrate_path(field, segment(zi, zi + r), to_cvec(f[i]), tol);
        std::vector<double> ts(N);
        for (int m = 0; m < N; ++m) ts[m] = static_cast<double>(m) / N;
        const auto ring = integrate_path_sampled(field, arc(zi, r, 0.0, 2.0 * kPi), start, ts, tol);
        std::array<cd, 4> d{};  // w, w', w'', w'''
        for (int m = 0; m < N; ++m) {
            const double th = 2.0 * kPi * m / N;
            const cd zeta = zi + std::polar(r, th);
            const cd w = ring[m][2] * std::exp(e * (log_zm1 + std::log(1.0 + (zeta - zi) / (zi - 1.0))));
            for (int p = 0; p < 4; ++p) d[p] += w * std::polar(1.0, -p * th);
        }
        for (int p = 0; p < 4; ++p) d[p] *= std::tgamma(p + 1.0) / (N * std::pow(r, p));
        const cd w0 = f[i](2) * phi;

        const cd zm = zi - 1.0, z2 = zi * zi * zm * zm;
        const cd P = (C.K1 * zi + C.K2 * zm) / (zi * zm);
        const cd Q = (C.L1 * zi * zi + C.L2 * zm * zm + C.L3 * zi * zm) / z2;
        const cd R = (C.M1 * zi + C.M2 * zm) / z2;
        const cd res = d[3] + P * d[2] + Q * d[1] + R * w0;
        const double scale = std::abs(d[3]) + std::abs(P * d[2]) + std::abs(Q * d[1]) + std::abs(R * w0);

        const cd u = k * (n - 1) / zi * (2.0 - (n - k + 2) / n * zi) * w0 +
                     kappa * zm / zi * (2.0 * (n - 1) + (kappa - n + 2 * k + 1.0) * zi) * d[1] + kappa * kappa * zm * zm * d[2];
        const cd v = k * w0 + kappa * zm * d[1];
        const Vec3 g = phi * f[i];
        const double rec = std::max(std::abs(u - g(0)), std::abs(v - g(1))) / g.cwiseAbs().maxCoeff();

        out.z.push_back(zi);
        out.w.push_back(w0);
        out.df_residual.push_back(std::abs(res) / scale);
        out.reconstruction_error.push_back(rec);
    }
    return out;
}

std::vector<Vec3> sample_f0(const KZSystem& sys, const LocalBasis& at0, const std::vector<double>& t,
                            const TransportOptions& opt) {
    const double t0 = opt.delta, t1 = 1.0 / opt.delta_prime;
    const cd z0(-t0, 0.0), z1(-t1, 0.0);
    std::vector<double> ts;
    for (double x : t) ts.push_back((x - t0) / (t1 - t0));
    const Vec3 f0 = at0.evaluate(2, z0, cd(std::log(opt.delta), kPi));
    const auto ys = integrate_path_sampled(kz_field(sys), segment(z0, z1), to_cvec(f0), ts, opt.tol);
    std::vector<Vec3> out;
    for (const CVec& y : ys) out.push_back(to_vec3(y));
    return out;
}

MonodromyReport monodromy(const KZSystem& sys, Tolerances tol) {
    const Field f = kz_matrix_field(sys);
    const cd base(0.5, 0.0), low(0.5, -2.0);
    MonodromyReport rep;
    rep.M0 = run_loop(f, {arc(0.0, 0.5, 0.0, 2.0 * kPi)}, tol);
    rep.M1 = run_loop(f, {arc(1.0, 0.5, kPi, 3.0 * kPi)}, tol);
    rep.Mbig = run_loop(f, {segment(base, low), arc(base, 2.0, -kPi / 2.0, 1.5 * kPi), segment(low, base)}, tol);

    const auto d = spectrum23(sys.n, sys.k);
    std::array<cd, 3> e0, e1, einf;
    const std::array<cd, 3> s0{2.0 * sys.n / sys.kappa, (2.0 * sys.n - 2.0) / sys.kappa, 0.0};
    for (int j = 0; j < 3; ++j) {
        const cd dj = boost::rational_cast<double>(d[j]) / sys.kappa;
        e0[j] = std::exp(2.0 * kPi * I * s0[j]);
        e1[j] = std::exp(2.0 * kPi * I * dj);
        einf[j] = std::exp(-2.0 * kPi * I * dj);
    }
    rep.eig0_error = match_eigenvalues(rep.M0, e0);
    rep.eig1_error = match_eigenvalues(rep.M1, e1);
    rep.eig_inf_error = match_eigenvalues(rep.Mbig, einf);
    // The big loop is homotopic to the loop about 1 followed by the loop about 0.
    rep.product_error = (rep.Mbig - rep.M0 * rep.M1).cwiseAbs().maxCoeff();
    return rep;
}

double holomorphy_residual(int n, int k, cd kappa, double eta, const TransportOptions& opt) {
    Eigen::Matrix<cd, 5, 3> V;
    Eigen::Matrix<cd, 5, 3> L;
    for (int m = -2; m <= 2; ++m) {
        const double x = m;
        V.row(m + 2) << 1.0, x, x * x;
        const KZSystem sys = build_system(n, k, kappa + cd(0.0, m * eta));
        const auto lam = transport(sys, frobenius_basis(sys, Point::zero, opt.order),
                                   frobenius_basis(sys, Point::infinity, opt.order), opt);
        for (int j = 0; j < 3; ++j) L(m + 2, j) = lam[j];
    }
    const Eigen::Matrix<cd, 3, 3> coef = V.colPivHouseholderQr().solve(L);
    const Eigen::Matrix<cd, 5, 3> resid = L - V * coef;
    return resid.cwiseAbs().maxCoeff() / L.cwiseAbs().maxCoeff();
}

}  // namespace fusion_forge
