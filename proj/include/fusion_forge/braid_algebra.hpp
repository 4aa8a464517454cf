#pragma once

#include "fusion_forge/weyl_lattice.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace fusion_forge {

using cd = std::complex<double>;
using Mat3 = Eigen::Matrix3cd;

struct BraidParams {
    int n = 0;
    int level = 0;
    double kappa = 0.0;
    cd q;  // e^{-i pi / kappa}
    cd r;  // q^{2n-1}

    static BraidParams make(int n, int level);
};

// Delta = C / (2 kappa), exact.
Rational conformal_weight(const Weight& lambda, int level);

// (q, -q^{-1}, r^{-1}) on the sym, alt and trivial summands of box (x) box.
std::array<cd, 3> braiding_eigenvalues(const BraidParams& p);

cd abelian_phase(const Rational& C2, const Rational& C3, const Rational& C4, int sigma, double kappa);

enum class BoxChannel { sym, alt, trivial };
// sigma_j e^{i pi (2 Delta_box - Delta_j)}
cd epsilon_j(const BraidParams& p, BoxChannel j);

struct WenzlRep {
    Mat3 g1, g2, c1, c2;
    cd z;
    cd tau;

    Mat3 e1() const { return c1 / z; }
    Mat3 e2() const { return c2 / z; }
};

struct WenzlResiduals {
    double braid = 0.0;      // |g1 g2 g1 - g2 g1 g2|
    double cubic = 0.0;      // max over i of |(g-r^-1)(g+q^-1)(g-q)|
    double jones = 0.0;      // max of |e1 e2 e1 - tau e1|, |e2 e1 e2 - tau e2|
    double c_identity = 0.0; // |c1 c2 c1 - c1|
    double idempotent = 0.0; // |e_i^2 - e_i|
    double spectral = 0.0;   // projection formula for e from g
    double quadratic = 0.0;  // g^2 = 1 + (q-q^-1) g - z r^-1 (q-q^-1) e
};

WenzlResiduals wenzl_residuals(const BraidParams& p, const WenzlRep& w);
// Builds the representation and checks its relations (throws past `tol`).
WenzlRep wenzl_rep(const BraidParams& p, double tol = 1e-12);

double qdim_from_jones(const BraidParams& p);

double max_abs(const Mat3& m);

}  // namespace fusion_forge
