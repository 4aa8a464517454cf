#include "fusion_forge/braid_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fusion_forge {

namespace {
constexpr double kPi = std::numbers::pi;
const cd I(0.0, 1.0);
}  // namespace

double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

BraidParams BraidParams::make(int n, int level) {
    if (n < 3) throw std::invalid_argument("rank must be at least 3");
    if (level < 1) throw std::invalid_argument("level must be at least 1");
    BraidParams p;
    p.n = n;
    p.level = level;
    p.kappa = level + 2.0 * (n - 1);
    p.q = std::exp(-I * kPi / p.kappa);
    p.r = std::exp(-I * kPi * static_cast<double>(2 * n - 1) / p.kappa);
    return p;
}

Rational conformal_weight(const Weight& lambda, int level) {
    if (!admissible(lambda, level))
        throw std::invalid_argument("conformal_weight: " + lambda.str() + " not admissible");
    const std::int64_t kappa = level + 2 * (lambda.rank() - 1);
    return casimir(lambda) / Rational(2 * kappa);
}

std::array<cd, 3> braiding_eigenvalues(const BraidParams& p) {
    if (p.level < 2) throw std::invalid_argument("decomposition unavailable below level 2");
    return {p.q, -1.0 / p.q, 1.0 / p.r};
}

cd abelian_phase(const Rational& C2, const Rational& C3, const Rational& C4, int sigma, double kappa) {
    const double beta = boost::rational_cast<double>(C4 - C2 - C3) / (2.0 * kappa);
    return static_cast<double>(sigma) * std::exp(-I * kPi * beta);
}

cd epsilon_j(const BraidParams& p, BoxChannel j) {
    const int n = p.n;
    const Rational cbox = casimir(Weight::theta(n, 1));
    Rational cj;
    int sigma = 1;
    switch (j) {
        case BoxChannel::sym: cj = casimir(Weight::theta(n, 1, 2)); break;
        case BoxChannel::alt:
            cj = casimir(Weight::theta(n, 1) + Weight::theta(n, 2));
            sigma = -1;
            break;
        case BoxChannel::trivial: cj = 0; break;
    }
    return abelian_phase(cbox, cbox, cj, sigma, p.kappa);
}

WenzlResiduals wenzl_residuals(const BraidParams& p, const WenzlRep& w) {
    const cd q = p.q, qi = 1.0 / p.q, ri = 1.0 / p.r, d = q - qi;
    const Mat3 Id = Mat3::Identity();
    WenzlResiduals res;
    res.braid = max_abs(w.g1 * w.g2 * w.g1 - w.g2 * w.g1 * w.g2);
    const Mat3 e1 = w.e1(), e2 = w.e2();
    const cd den = (ri - q) * (ri + qi);
    for (const auto& [g, e] : {std::pair{w.g1, e1}, std::pair{w.g2, e2}}) {
        res.cubic = std::max(res.cubic, max_abs((g - ri * Id) * (g + qi * Id) * (g - q * Id)));
        res.idempotent = std::max(res.idempotent, max_abs(e * e - e));
        res.spectral = std::max(res.spectral, max_abs((g - q * Id) * (g + qi * Id) / den - e));
        res.quadratic = std::max(res.quadratic, max_abs(g * g - (Id + d * g - w.z * ri * d * e)));
    }
    res.jones = std::max(max_abs(e1 * e2 * e1 - w.tau * e1), max_abs(e2 * e1 * e2 - w.tau * e2));
    res.c_identity = max_abs(w.c1 * w.c2 * w.c1 - w.c1);
    return res;
}

WenzlRep wenzl_rep(const BraidParams& p, double tol) {
    const cd q = p.q, qi = 1.0 / p.q, r = p.r, ri = 1.0 / p.r, d = q - qi;
    if (std::abs(d) < 1e-14) throw std::invalid_argument("q - q^-1 vanishes");
    WenzlRep w;
    w.z = 1.0 + (r - ri) / d;
    w.tau = 1.0 / (w.z * w.z);
    // basis c2, g1 c2, c1 c2
    w.g1 << 0, 1, 0,
            1, d, 0,
            0, -ri * d, ri;
    w.g2 << ri, 0, -d,
            0, 0, 1,
            0, 1, d;
    w.c1 << 0, 0, 0,
            0, 0, 0,
            1, ri, w.z;
    w.c2 << w.z, r, 1,
            0, 0, 0,
            0, 0, 0;
    const WenzlResiduals res = wenzl_residuals(p, w);
    auto check = [&](double v, const char* name) {
        if (!(v < tol)) throw std::runtime_error(std::string("Wenzl relation failed: ") + name + " residual " + std::to_string(v));
    };
    check(res.braid, "g1 g2 g1 = g2 g1 g2");
    check(res.cubic, "cubic relation");
    check(res.jones, "e1 e2 e1 = tau e1");
    check(res.c_identity, "c1 c2 c1 = c1");
    check(res.idempotent, "e_i^2 = e_i");
    return w;
}

double qdim_from_jones(const BraidParams& p) {
    if (p.level < 2) throw std::invalid_argument("decomposition unavailable below level 2");
    const cd d = p.q - 1.0 / p.q;
    return (1.0 + (p.r - 1.0 / p.r) / d).real();
}

}  // namespace fusion_forge
