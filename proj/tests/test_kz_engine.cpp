#include <doctest.h>

#include "fusion_forge/kz_engine.hpp"

#include <cmath>

using namespace fusion_forge;

namespace {

const double kPi = std::acos(-1.0);
const cd I(0.0, 1.0);

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

RMat3 rsum(const RMat3& x, const RMat3& y) {
    RMat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = x[i][j] + y[i][j];
    return r;
}

}  // namespace

TEST_CASE("system matrices") {
    const KZSystem s = build_system(3, 1, 6.0);
    CHECK(s.Omega23[0][1] == Rational(16, 3));
    CHECK(s.Omega23[1][2] == Rational(5, 3));
    CHECK(s.Omega23[1][0] == Rational(1));
    CHECK(s.Omega23[2][1] == Rational(1));
    CHECK(s.delta0 == Rational(-5));
    CHECK(s.Omega12[2][2] == Rational(-5));

    // {1, -1, -5}: (t-1)(t+1)(t+5) = t^3 + 5t^2 - t - 5
    const auto cp = char_poly(s.Omega23);
    CHECK(cp[0] == Rational(-5));
    CHECK(cp[1] == Rational(-1));
    CHECK(cp[2] == Rational(5));
    CHECK(char_poly(s.Omega13) == cp);

    const RMat3 tot = rsum(rsum(s.Omega12, s.Omega23), s.Omega13);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(tot[i][j] == (i == j ? Rational(-5) : Rational(0)));

    for (int n = 3; n <= 6; ++n)
        for (int k = 1; k <= 5; ++k) {
            const KZSystem t = build_system(n, k, cd(k + 2.0 * (n - 1) + 1.0, 0.0));
            CHECK(check_invariants(t).all());
            const Rational x = Rational(n - 1, n) * Rational(k * k + 2 * k * (n - 1) + n * (n - 2));
            CHECK(t.Omega23[0][1] == x);
            CHECK(t.Omega23[1][2] == Rational(k, n) * Rational(k + 2 * (n - 1)));
        }
    CHECK_THROWS(build_system(2, 1, 5.0));
    CHECK_THROWS(build_system(3, 0, 5.0));
    CHECK_THROWS(build_system(3, 1, 0.0));
}

TEST_CASE("right-hand side") {
    const KZSystem s = build_system(3, 1, {-6, 4});
    const Vec3 e0(0, 0, 1);
    // (Omega12 - delta0) e0 = 0, so only the pole at 1 contributes
    const cd z(0.3, 0.2);
    const Vec3 f = kz_rhs(s, z, e0);
    CHECK((f - s.B() * e0 / (z - 1.0)).norm() < 1e-15);
    const Vec3 v(cd(1, 2), cd(-0.5, 0.1), cd(0.2, -0.7));
    CHECK((kz_rhs(s, z, 3.0 * v) - 3.0 * kz_rhs(s, z, v)).norm() < 1e-13);
    CHECK(((s.A() + s.B()) + s.C()).norm() < 1e-15);
    CHECK_THROWS(kz_rhs(s, 0.0, v));
    CHECK_THROWS(kz_rhs(s, 1.0, v));
}

TEST_CASE("local bases") {
    const cd kappa(-6, 4);
    const int n = 3, k = 1;
    const KZSystem s = build_system(n, k, kappa);
    const LocalBasis b0 = frobenius_basis(s, Point::zero);
    CHECK(std::abs(b0.exponents[0] - 2.0 * n / kappa) < 1e-15);
    CHECK(std::abs(b0.exponents[1] - (2.0 * n - 2) / kappa) < 1e-15);
    CHECK(std::abs(b0.exponents[2]) < 1e-15);
    CHECK(b0.radius <= 0.5);
    CHECK(b0.radius > 0.3);

    const LocalBasis bi = frobenius_basis(s, Point::infinity);
    CHECK(std::abs(bi.reduced_exponents[0] - 2.0 * k / kappa) < 1e-15);
    CHECK(std::abs(bi.reduced_exponents[1] - (k - 1.0) / kappa) < 1e-15);
    CHECK(std::abs(bi.reduced_exponents[2] + 2.0 * (n - 1) / kappa) < 1e-15);
    CHECK(bi.radius > 0.3);

    for (Point p : {Point::zero, Point::infinity}) {
        const LocalBasis b = frobenius_basis(s, p, 0);
        const CMat3 R = p == Point::zero ? s.A() : s.C();
        for (int j = 0; j < 3; ++j) {
            REQUIRE(b.series[j].size() == 1);
            CHECK((R * b.series[j][0] - b.exponents[j] * b.series[j][0]).norm() < 1e-13);
        }
    }
    CHECK(bi.labels[0] == "(k+1)theta1");

    // each series solves the system: compare a numerical derivative
    for (int j = 0; j < 3; ++j) {
        const cd z(-0.2, 0.0), h(1e-5, 0.0);
        auto val = [&](cd x) { return b0.evaluate(j, x, std::log(-x) + I * kPi); };
        const Vec3 d = (val(z + h) - val(z - h)) / (2.0 * h);
        CHECK((d - kz_rhs(s, z, val(z))).norm() < 1e-6 * val(z).norm());
    }

    // R(f0) = f_3 (z-1)^{-k/kappa} starts at e^{-i pi k/kappa}
    const cd z(-1e-7, 0.0);
    const Vec3 f0 = b0.evaluate(2, z, std::log(-z) + I * kPi);
    const cd r = f0(2) * std::exp(-static_cast<double>(k) / kappa * (std::log(1.0 - z.real()) + I * kPi));
    CHECK(std::abs(r - std::exp(-I * kPi * static_cast<double>(k) / kappa)) < 1e-6);

    CHECK_THROWS_AS(frobenius_basis(build_system(3, 1, 6.0), Point::zero), ResonanceError);
    CHECK_THROWS_AS(frobenius_basis(build_system(3, 2, 8.0), Point::infinity), ResonanceError);
    CHECK_NOTHROW(frobenius_basis(build_system(3, 2, 8.0), Point::zero));
}

TEST_CASE("transport against the closed form") {
    const ConnectionResult c = connect(3, 1, {-6, 4});
    CHECK(c.max_residual() < 1e-5);
    CHECK(c.max_ratio_residual() < 1e-5);
    CHECK(c.min_abs_lambda() > 1e-6);
    CHECK_FALSE(c.meta.ill_conditioned);
    CHECK(c.meta.steps > 0);

    for (int k = 1; k <= 4; ++k) {
        const ConnectionResult r = connect_level(3, k, 5);
        CHECK_FALSE(r.resonant);
        CHECK(r.level == 5);
        CHECK(r.max_residual() < 1e-5);
        CHECK(r.max_ratio_residual() < 1e-5);
        CHECK(r.min_abs_lambda() > 1e-6);
    }
}

TEST_CASE("round trip and tolerance stability") {
    const KZSystem s = build_system(3, 2, {-7, 3});
    const LocalBasis b0 = frobenius_basis(s, Point::zero);
    const LocalBasis bi = frobenius_basis(s, Point::infinity);
    const auto lam = transport(s, b0, bi);
    const auto back = transport_back(s, b0, bi, lam);
    CHECK(std::abs(back[0]) < 1e-8);
    CHECK(std::abs(back[1]) < 1e-8);
    CHECK(std::abs(back[2] - 1.0) < 1e-8);

    TransportOptions tight;
    tight.tol = {0.5e-11, 0.5e-14};
    const auto lam2 = transport(s, b0, bi, tight);
    TransportOptions moved;
    moved.delta = 0.25;
    moved.delta_prime = 0.25;
    const auto lam3 = transport(s, b0, bi, moved);
    for (int j = 0; j < 3; ++j) {
        CHECK(rel(lam2[j], lam[j]) < 1e-7);
        CHECK(rel(lam3[j], lam[j]) < 1e-7);
    }
}

TEST_CASE("resonant levels") {
    CHECK(is_resonant(1, 2));
    CHECK(is_resonant(2, 4));
    CHECK(is_resonant(3, 2));
    CHECK_FALSE(is_resonant(1, 3));
    CHECK_FALSE(is_resonant(2, 5));

    const ConnectionResult r = resonant_lambdas(3, 1, 2);
    CHECK(r.resonant);
    CHECK(r.spread < 1e-3);
    CHECK(r.max_residual() < 1e-5);
    for (cd l : r.lambdas) CHECK(std::isfinite(std::abs(l)));

    const ConnectionResult r4 = connect_level(3, 2, 4);
    CHECK(r4.resonant);
    CHECK(r4.spread < 1e-3);

    // at k = level only (k-1)theta1 is admissible
    const ConnectionResult r22 = connect_level(3, 2, 2);
    CHECK(r22.admissible == std::array<bool, 3>{false, false, true});
    CHECK(r22.spread < 1e-3);

    CHECK_THROWS_AS(resonant_lambdas(3, 1, 3), std::invalid_argument);
}

TEST_CASE("monodromy") {
    for (cd kappa : {cd(-6, 4), cd(7, 0)}) {
        const MonodromyReport m = monodromy(build_system(3, 2, kappa));
        CHECK(m.eig0_error < 1e-8);
        CHECK(m.eig1_error < 1e-8);
        CHECK(m.eig_inf_error < 1e-8);
        CHECK(m.product_error < 1e-7);
    }
}

TEST_CASE("scalar reduction") {
    const KZSystem s = build_system(3, 1, {-6, 4});
    const LocalBasis b0 = frobenius_basis(s, Point::zero);
    const std::vector<double> t{0.4, 0.7, 1.0, 1.5, 2.2, 3.0};
    const auto f = sample_f0(s, b0, t);
    std::vector<cd> z;
    for (double x : t) z.push_back(-x);
    const ScalarReduction r = scalar_reduce(s, z, f);
    CHECK(r.w.size() == t.size());
    CHECK(r.max_residual() < 1e-6);
    CHECK(r.max_reconstruction_error() < 1e-7);
}

TEST_CASE("holomorphy in kappa") {
    CHECK(holomorphy_residual(3, 1, {-6, 4}) < 1e-6);
    CHECK(holomorphy_residual(3, 2, 9.0) < 1e-6);
}
