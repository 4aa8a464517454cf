#pragma once

#include "fusion_forge/weyl_lattice.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace fusion_forge {

using cd = std::complex<double>;

double kappa_of(int n, int level);

std::vector<Weight> tensor_with_minimal(const Weight& mu, const Weight& lambda_min);

struct FusionMatrix {
    AlcoveIndex alcove;
    Weight generator;
    // N[nu][mu] = N_{lambda mu}^nu
    std::vector<std::vector<std::int64_t>> N;

    std::size_t size() const { return N.size(); }
    std::vector<std::int64_t> column(std::size_t mu) const;
};

FusionMatrix fusion_matrix(const Weight& lambda_min, const AlcoveIndex& alc);

// chi_nu(exp(2 pi i t)) for t = (mu + rho)/kappa; alternating sum over W.
cd weyl_character(const Weight& nu, const Weight& mu, double kappa);

struct CharacterVector {
    Weight mu;
    std::vector<cd> values;  // indexed by the alcove
};

CharacterVector character_vector(const Weight& mu, const AlcoveIndex& alc);

// Character of a minimal module at exp(2 pi i rho/kappa) as an orbit sum.
cd minimal_character_at_rho(const Weight& lambda_min, double kappa);

double quantum_dim(const Weight& lambda, int n, int level);
double box_qdim_closed(int n, int level);

Weight conjugate(const Weight& lambda);

struct LevelOneRing {
    int n = 0;
    std::vector<Weight> labels;             // 0, v, s+, s-
    std::vector<std::vector<int>> product;  // product[i][j] = index into labels
    bool cyclic = false;                    // Z4 when true, Z2 x Z2 otherwise
};

LevelOneRing level1_ring(int n);

// Simultaneous diagonalisation of the fusion ring on one alcove.
class VerlindeTable {
public:
    explicit VerlindeTable(const AlcoveIndex& alc);

    const AlcoveIndex& alcove() const { return alc_; }
    // N_lambda e_mu, rounded; throws on non-integral entries.
    std::vector<std::int64_t> product(const Weight& lambda, const Weight& mu) const;
    Eigen::MatrixXcd fusion(const Weight& lambda) const;
    double max_rounding_error() const { return max_err_; }

private:
    AlcoveIndex alc_;
    Eigen::MatrixXcd P_;
    Eigen::MatrixXcd Pinv_;
    mutable double max_err_ = 0.0;
};

std::vector<std::int64_t> verlinde_product(const Weight& lambda, const Weight& mu, const AlcoveIndex& alc);

struct PerronFrobeniusReport {
    int n = 0;
    int level = 0;
    std::size_t block_size = 0;
    bool strongly_connected = false;
    bool positive = false;
    double eigen_residual = 0.0;    // |N q - d q|_inf
    double power_eigenvalue = 0.0;  // from power iteration
    double d_box = 0.0;
};

PerronFrobeniusReport perron_frobenius_check(int n, int level);

}  // namespace fusion_forge
