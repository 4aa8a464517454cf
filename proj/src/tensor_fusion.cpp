#include "fusion_forge/tensor_fusion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace fusion_forge {

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<WeylElement>& cached_weyl_group(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<WeylElement>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, weyl_group(n)).first;
    return it->second;
}

// A_beta(exp(2 pi i t)) with t = tau2 / (4 kappa) in doubled coordinates.
cd alternating_sum(const Weight& beta, const Weight& tau, double kappa) {
    const int n = beta.rank();
    cd acc = 0.0;
    for (const WeylElement& w : cached_weyl_group(n)) {
        long long s = 0;
        for (int i = 0; i < n; ++i) s += static_cast<long long>(w.signs[w.perm[i]]) * beta.c[i] * tau.c[w.perm[i]];
        const double phase = 2.0 * kPi * static_cast<double>(s) / (4.0 * kappa);
        acc += static_cast<double>(w.det()) * std::polar(1.0, phase);
    }
    return acc;
}

void require_minimal_dominant(const Weight& lambda_min) {
    if (!lambda_min.dominant() || !is_minimal(lambda_min))
        throw std::invalid_argument("generator " + lambda_min.str() + " is not a minimal dominant weight");
}

}  // namespace

double kappa_of(int n, int level) { return level + 2.0 * (n - 1); }

std::vector<Weight> tensor_with_minimal(const Weight& mu, const Weight& lambda_min) {
    require_minimal_dominant(lambda_min);
    if (!mu.dominant()) throw std::invalid_argument("tensor_with_minimal: " + mu.str() + " is not dominant");
    std::vector<Weight> out;
    for (const Weight& nu : weyl_orbit(lambda_min)) {
        Weight s = mu + nu;
        if (s.dominant()) out.push_back(s);
    }
    return out;
}

std::vector<std::int64_t> FusionMatrix::column(std::size_t mu) const {
    std::vector<std::int64_t> col(N.size());
    for (std::size_t i = 0; i < N.size(); ++i) col[i] = N[i][mu];
    return col;
}

FusionMatrix fusion_matrix(const Weight& lambda_min, const AlcoveIndex& alc) {
    require_minimal_dominant(lambda_min);
    if (!admissible(lambda_min, alc.level()))
        throw std::invalid_argument("generator " + lambda_min.str() + " is not admissible at this level");
    const std::size_t m = alc.size();
    FusionMatrix F{alc, lambda_min, std::vector<std::vector<std::int64_t>>(m, std::vector<std::int64_t>(m, 0))};
    for (std::size_t j = 0; j < m; ++j)
        for (const Weight& nu : tensor_with_minimal(alc[j], lambda_min))
            if (alc.contains(nu)) F.N[alc.index_of(nu)][j] += 1;
    return F;
}

cd weyl_character(const Weight& nu, const Weight& mu, double kappa) {
    const Weight r = rho(nu.rank());
    const Weight t = mu + r;
    const cd den = alternating_sum(r, t, kappa);
    if (std::abs(den) < 1e-300) throw std::domain_error("A_rho vanishes at S_" + mu.str());
    return alternating_sum(nu + r, t, kappa) / den;
}

CharacterVector character_vector(const Weight& mu, const AlcoveIndex& alc) {
    if (!alc.contains(mu)) throw std::invalid_argument("character_vector: " + mu.str() + " not in alcove");
    const double kappa = kappa_of(alc.rank(), alc.level());
    const Weight r = rho(alc.rank());
    const Weight t = mu + r;
    const cd den = alternating_sum(r, t, kappa);
    if (std::abs(den) < 1e-12) throw std::domain_error("A_rho vanishes at S_" + mu.str());
    CharacterVector out{mu, {}};
    out.values.reserve(alc.size());
    for (const Weight& nu : alc.weights()) out.values.push_back(alternating_sum(nu + r, t, kappa) / den);
    return out;
}

cd minimal_character_at_rho(const Weight& lambda_min, double kappa) {
    const Weight r = rho(lambda_min.rank());
    cd acc = 0.0;
    for (const Weight& nu : weyl_orbit(lambda_min)) {
        const double p = boost::rational_cast<double>(inner(nu, r));
        acc += std::polar(1.0, 2.0 * kPi * p / kappa);
    }
    return acc;
}

double quantum_dim(const Weight& lambda, int n, int level) {
    if (!admissible(lambda, level)) throw std::invalid_argument("quantum_dim: " + lambda.str() + " not admissible");
    const double kappa = kappa_of(n, level);
    const Weight r = rho(n);
    const Weight lr = lambda + r;
    double d = 1.0;
    for (const Weight& a : positive_roots(n)) {
        const double num = boost::rational_cast<double>(inner(lr, a));
        const double den = boost::rational_cast<double>(inner(r, a));
        d *= std::sin(kPi * num / kappa) / std::sin(kPi * den / kappa);
    }
    return d;
}

double box_qdim_closed(int n, int level) {
    const double kappa = kappa_of(n, level);
    return 1.0 + std::sin((2 * n - 1) * kPi / kappa) / std::sin(kPi / kappa);
}

Weight conjugate(const Weight& lambda) {
    Weight r = lambda;
    if (lambda.rank() % 2) r.c.back() = -r.c.back();
    return r;
}

LevelOneRing level1_ring(int n) {
    const AlcoveIndex alc = alcove(n, 1);
    LevelOneRing ring;
    ring.n = n;
    ring.labels = {Weight::zero(n), Weight::theta(n, 1), Weight::spin_plus(n), Weight::spin_minus(n)};
    ring.product.assign(4, std::vector<int>(4, -1));
    for (int i = 0; i < 4; ++i) {
        const FusionMatrix F = fusion_matrix(ring.labels[i], alc);
        for (int j = 0; j < 4; ++j) {
            const auto col = F.column(alc.index_of(ring.labels[j]));
            int hit = -1, count = 0;
            for (std::size_t k = 0; k < col.size(); ++k) {
                if (col[k] == 0) continue;
                count += static_cast<int>(col[k]);
                for (int l = 0; l < 4; ++l)
                    if (alc[k] == ring.labels[l]) hit = l;
            }
            if (count != 1 || hit < 0) throw std::logic_error("level-1 product is not a single simple object");
            ring.product[i][j] = hit;
        }
    }
    for (int i = 1; i < 4; ++i)
        if (ring.product[i][i] != 0) ring.cyclic = true;
    return ring;
}

VerlindeTable::VerlindeTable(const AlcoveIndex& alc) : alc_(alc) {
    const std::size_t m = alc.size();
    P_.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t d = 0; d < m; ++d) {
        const CharacterVector phi = character_vector(alc[d], alc);
        for (std::size_t v = 0; v < m; ++v) P_(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(d)) = phi.values[v];
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(P_);
    const double rc = lu.rcond();
    if (!(rc > 1e-13)) throw std::domain_error("character matrix is singular");
    Pinv_ = lu.inverse();
}

Eigen::MatrixXcd VerlindeTable::fusion(const Weight& lambda) const {
    const Eigen::Index l = static_cast<Eigen::Index>(alc_.index_of(lambda));
    // P diag(chi_lambda) P^-1 is N_lambda^T, since phi_d(lambda) phi_d(mu) = sum_nu N^nu_{lambda mu} phi_d(nu).
    return (P_ * P_.row(l).transpose().asDiagonal() * Pinv_).transpose();
}

std::vector<std::int64_t> VerlindeTable::product(const Weight& lambda, const Weight& mu) const {
    const Eigen::Index l = static_cast<Eigen::Index>(alc_.index_of(lambda));
    const Eigen::Index j = static_cast<Eigen::Index>(alc_.index_of(mu));
    const Eigen::VectorXcd v = Pinv_.transpose() * P_.row(l).transpose().cwiseProduct(P_.row(j).transpose());
    std::vector<std::int64_t> out(alc_.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = std::round(v(i).real());
        const double err = std::abs(v(i) - cd(re, 0.0));
        max_err_ = std::max(max_err_, err);
        if (err > 1e-6 || re < 0)
            throw std::domain_error("diagonalization inconsistency at " + alc_[static_cast<std::size_t>(i)].str() +
                                    ": " + std::to_string(v(i).real()) + "+" + std::to_string(v(i).imag()) + "i");
        out[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(re);
    }
    return out;
}

std::vector<std::int64_t> verlinde_product(const Weight& lambda, const Weight& mu, const AlcoveIndex& alc) {
    return VerlindeTable(alc).product(lambda, mu);
}

PerronFrobeniusReport perron_frobenius_check(int n, int level) {
    const AlcoveIndex alc = alcove(n, level);
    const FusionMatrix F = fusion_matrix(Weight::theta(n, 1), alc);
    std::vector<std::size_t> block;
    for (std::size_t i = 0; i < alc.size(); ++i)
        if (alc[i].single_valued()) block.push_back(i);
    const std::size_t m = block.size();

    PerronFrobeniusReport rep;
    rep.n = n;
    rep.level = level;
    rep.block_size = m;
    rep.d_box = quantum_dim(Weight::theta(n, 1), n, level);

    Eigen::MatrixXd N(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            N(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = static_cast<double>(F.N[block[a]][block[b]]);

    auto reach_all = [&](bool transpose) {
        std::vector<bool> seen(m, false);
        std::queue<std::size_t> q;
        q.push(0);
        seen[0] = true;
        while (!q.empty()) {
            const std::size_t u = q.front();
            q.pop();
            for (std::size_t v = 0; v < m; ++v) {
                const double e = transpose ? N(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v))
                                           : N(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u));
                if (e != 0.0 && !seen[v]) {
                    seen[v] = true;
                    q.push(v);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
    };
    rep.strongly_connected = reach_all(false) && reach_all(true);

    Eigen::VectorXd qd(static_cast<Eigen::Index>(m));
    for (std::size_t a = 0; a < m; ++a) qd(static_cast<Eigen::Index>(a)) = quantum_dim(alc[block[a]], n, level);
    rep.positive = (qd.array() > 0.0).all();
    rep.eigen_residual = (N * qd - rep.d_box * qd).cwiseAbs().maxCoeff();

    // Shift by the identity: the block can be bipartite, and N + 1 is primitive.
    Eigen::VectorXd x = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m));
    double lam = 0.0;
    for (int it = 0; it < 200000; ++it) {
        Eigen::VectorXd y = N * x + x;
        const double nl = y.norm() / x.norm();
        y /= y.norm();
        const bool done = std::abs(nl - lam) < 1e-15 * nl && (y - x).norm() < 1e-13;
        x = y;
        lam = nl;
        if (done) break;
    }
    rep.power_eigenvalue = lam - 1.0;
    return rep;
}

}  // namespace fusion_forge
