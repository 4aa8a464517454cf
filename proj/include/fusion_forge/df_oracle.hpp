#pragma once

#include "fusion_forge/special.hpp"

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace fusion_forge {

struct DFParams {
    cd a, b, c, g;
};

// Parameters of the scalar equation obeyed by R(f) for the box / k-th symmetric power four-point function.
DFParams fitting(int n, int k, cd kappa);
bool good_range(const DFParams& p);
bool kappa_range(int n, int k, cd kappa);
// Absolute convergence of the J2 double integral.
bool selberg_range0(cd alpha, cd beta, cd gamma);

struct DFCoefficients {
    cd K1, K2, L1, L2, L3, M1, M2;
};

DFCoefficients df_coefficients(const DFParams& p);
// The same seven numbers written directly in n, k, kappa (reduction of the KZ system).
DFCoefficients kz_reduction_coefficients(int n, int k, cd kappa);

cd selberg_J2(cd alpha, cd beta, cd gamma);

struct QuadratureResult {
    cd value;
    double error = 0.0;  // absolute error estimate
};

QuadratureResult quadrature_oracle_J2(cd alpha, cd beta, cd gamma);

// rho_inf2 has two printed forms that disagree; `transport` is the one the ODE agrees with.
enum class RhoInf2 { statement, proof, transport };
std::string to_string(RhoInf2 v);

struct RhoCoefficients {
    cd r01, r02, r03;
    cd ri1, ri2, ri3;
    std::array<cd, 6> all() const { return {r01, r02, r03, ri1, ri2, ri3}; }
};

RhoCoefficients rho_coefficients(const DFParams& p, RhoInf2 variant = RhoInf2::transport);

// coef3 as printed, s(c)s(c+g/2)/s(a+b+g/2)^2, versus the product it is derived from,
// s(c)s(c+g/2)/(s(a+b)s(a+b+g/2)); only the latter survives the ODE test.
enum class Coef3Form { printed, expanded };
std::array<cd, 3> connection_identity(const DFParams& p, Coef3Form form = Coef3Form::expanded);

// Exponents at 0 (0, 1+a+c, 2+2a+2c+g) and the powers sigma_j of z at infinity.
std::array<cd, 3> df_exponents_zero(const DFParams& p);
std::array<cd, 3> df_exponents_infinity(const DFParams& p);

// Series for z^s sum a_m z^m at 0 and for (-z)^sigma sum b_m z^-m at infinity.
std::vector<cd> df_series_zero(const DFCoefficients& C, cd s, int order);
std::vector<cd> df_series_infinity(const DFCoefficients& C, cd sigma, int order);

struct DFTransport {
    std::array<cd, 3> odetransport;  // rho01 * coefficient of the j-th normalised basis solution at infinity
    std::array<cd, 3> closed;        // rho_inf_j * coef_j
    std::array<double, 3> rel_residual{};
    double condition = 0.0;
    std::size_t steps = 0;
};

// Continues the exponent-0 solution from z = -delta to z = -1/delta along the negative axis.
// The basis at infinity uses the real branch of (-z)^sigma there.
DFTransport df_transport(const DFParams& p, RhoInf2 variant = RhoInf2::transport, Coef3Form form = Coef3Form::expanded,
                         double delta = 0.3, int order = 60);

}  // namespace fusion_forge
