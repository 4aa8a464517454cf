#pragma once

#include "fusion_forge/df_oracle.hpp"
#include "fusion_forge/path_ode.hpp"
#include "fusion_forge/weyl_lattice.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace fusion_forge {

using Vec3 = Eigen::Vector3cd;
using CMat3 = Eigen::Matrix3cd;
using RMat3 = std::array<std::array<Rational, 3>, 3>;

struct KZSystem {
    int n = 0;
    int k = 0;
    cd kappa;
    RMat3 Omega12, Omega23, Omega13;
    Rational delta0;

    CMat3 A() const;  // (Omega12 - delta0) / kappa, residue at 0
    CMat3 B() const;  // Omega23 / kappa, residue at 1
    CMat3 C() const;  // Omega13 / kappa, residue at infinity in w = 1/z
};

struct KZInvariantError : std::logic_error {
    explicit KZInvariantError(const std::string& what) : std::logic_error(what) {}
};

// Off-diagonal entries split as x = x x~, x~ = 1 and y = y y~, y~ = 1.
// Every structural identity is verified exactly; failures throw KZInvariantError.
KZSystem build_system(int n, int k, cd kappa);

struct KZInvariants {
    bool spectrum12 = false;  // {1, -1, 1-2n}
    bool spectrum23 = false;  // {k, -1, -2(n-1)-k}
    bool spectrum13 = false;
    bool trace = false;       // Omega12 + Omega23 + Omega13 = (1-2n) Id
    bool similarity = false;  // Omega13 = F Omega23 F, F = diag(1,-1,1)
    bool infinity_residue = false;  // -(Omega12 - delta0 + Omega23) = Omega13
    bool all() const { return spectrum12 && spectrum23 && spectrum13 && trace && similarity && infinity_residue; }
};

KZInvariants check_invariants(const KZSystem& sys);
RMat3 rational_product(const RMat3& x, const RMat3& y);
// Coefficients (c0, c1, c2) of t^3 + c2 t^2 + c1 t + c0.
std::array<Rational, 3> char_poly(const RMat3& m);

Vec3 kz_rhs(const KZSystem& sys, cd z, const Vec3& F);

enum class Point { zero, infinity };

struct ResonanceError : std::domain_error {
    explicit ResonanceError(const std::string& what) : std::domain_error(what) {}
};

struct LocalBasis {
    Point point = Point::zero;
    std::array<cd, 3> exponents;          // of the vector solutions in the local coordinate
    std::array<cd, 3> reduced_exponents;  // of R(solution): in z at 0, in 1/z at infinity
    std::array<std::vector<Vec3>, 3> series;
    std::array<std::string, 3> labels;
    double radius = 0.0;  // where the truncated tail drops below 1e-16

    // x^s sum a_m x^m with log x supplied by the caller (branch bookkeeping stays with the caller).
    Vec3 evaluate(int j, cd x, cd log_x) const;
    CMat3 matrix(cd x, cd log_x) const;
};

// Solves (R - (s+m)) a_m = B sum_{j<m} a_j with R the local residue; throws ResonanceError
// when two local exponents differ by a nonzero integer.
LocalBasis frobenius_basis(const KZSystem& sys, Point point, int order = 48);

struct TransportOptions {
    double delta = 0.3;        // hand-off |z| at 0
    double delta_prime = 0.3;  // hand-off |w| at infinity
    int order = 48;
    Tolerances tol{1e-11, 1e-14};
};

struct PathMeta {
    double delta = 0.0;
    double delta_prime = 0.0;
    int order = 0;
    double rtol = 0.0;
    double atol = 0.0;
    std::size_t steps = 0;
    double condition = 0.0;
    bool ill_conditioned = false;  // matching matrix condition > 1e8
};

// Coefficients of f0 (exponent 0 at z = 0, leading vector e0) in the basis at infinity.
// Path z = -t; arg z = +pi near 0 and arg w = -pi near infinity.
std::array<cd, 3> transport(const KZSystem& sys, const LocalBasis& at0, const LocalBasis& atinf,
                            const TransportOptions& opt = {}, PathMeta* meta = nullptr);
// Inverse direction: combination of the infinity basis carried back and expanded at 0.
std::array<cd, 3> transport_back(const KZSystem& sys, const LocalBasis& at0, const LocalBasis& atinf,
                                 const std::array<cd, 3>& coeffs, const TransportOptions& opt = {},
                                 PathMeta* meta = nullptr);

struct ClosedFormOptions {
    RhoInf2 rho_variant = RhoInf2::transport;
    Coef3Form coef3 = Coef3Form::expanded;
};

// e^{-i pi k/kappa} rho01^{-1} rho_inf_j coef_j, times e^{i pi e_j} to move from the real branch
// of (-z)^sigma used by the scalar basis to arg w = -pi (e_j the reduced exponents at infinity).
std::array<cd, 3> closed_form_lambdas(int n, int k, cd kappa, const ClosedFormOptions& opt = {});

struct ConnectionResult {
    int n = 0;
    int k = 0;
    int level = 0;  // 0 when kappa is not a physical value
    cd kappa;
    std::array<cd, 3> lambdas;
    std::array<cd, 3> closed_form;
    std::array<double, 3> rel_residual{};    // |lambda - closed| / |closed|
    std::array<double, 3> ratio_residual{};  // on lambda_j / lambda_3
    // Channels whose highest weight lies in the alcove; at k = level only (k-1)theta1 survives.
    std::array<bool, 3> admissible{true, true, true};
    bool resonant = false;
    double spread = 0.0;  // Richardson error bar on the resonant path, over admissible channels
    PathMeta meta;

    // Over admissible channels; ratios are taken against the last channel, which always is.
    double max_residual() const;
    double max_ratio_residual() const;
    double min_abs_lambda() const;
};

ConnectionResult connect(int n, int k, cd kappa, const TransportOptions& opt = {});

bool is_resonant(int k, int level);
// kappa (1 + i eta), eta in {1e-2, 5e-3, 2.5e-3}, Richardson extrapolated to eta = 0.
ConnectionResult resonant_lambdas(int n, int k, int level, const TransportOptions& opt = {});
// Physical kappa = level + 2(n-1); routes to the deformed path when resonant.
ConnectionResult connect_level(int n, int k, int level, const TransportOptions& opt = {});

struct ScalarReduction {
    std::vector<cd> z;
    std::vector<cd> w;                 // R(f) = f_3 (z-1)^{-k/kappa}
    std::vector<double> df_residual;   // relative residual of the scalar equation
    std::vector<double> reconstruction_error;  // |(u,v) from w - (g1, g2)| / |g|
    double max_residual() const;
    double max_reconstruction_error() const;
};

// Derivatives of R(f) come from a 24-point discrete Cauchy stencil of radius `stencil`
// times the distance to the nearest singular point; stencil values are integrated from the sample.
ScalarReduction scalar_reduce(const KZSystem& sys, const std::vector<cd>& z, const std::vector<Vec3>& f,
                              double stencil = 0.25, Tolerances tol = {1e-12, 1e-15});

// Samples of f0 along z = -t at the given t in [delta, 1/delta'].
std::vector<Vec3> sample_f0(const KZSystem& sys, const LocalBasis& at0, const std::vector<double>& t,
                            const TransportOptions& opt = {});

struct MonodromyReport {
    CMat3 M0, M1, Mbig;  // loops about 0, 1 and both, based at z = 1/2
    double eig0_error = 0.0;
    double eig1_error = 0.0;
    double eig_inf_error = 0.0;
    double product_error = 0.0;  // |Mbig - M0 M1|
};

MonodromyReport monodromy(const KZSystem& sys, Tolerances tol = {1e-11, 1e-14});

// Max deviation of lambdas at kappa + i m eta (m = -2..2) from their least-squares quadratic in eta,
// relative to the largest |lambda|.
double holomorphy_residual(int n, int k, cd kappa, double eta = 1e-3, const TransportOptions& opt = {});

}  // namespace fusion_forge
