#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fusion_forge {

using Rational = boost::rational<std::int64_t>;

// D_n weight in doubled orthogonal coordinates: c[i] = 2 * lambda_i.
struct Weight {
    std::vector<int> c;

    Weight() = default;
    explicit Weight(std::vector<int> coords2) : c(std::move(coords2)) {}

    int rank() const { return static_cast<int>(c.size()); }
    bool dominant() const;
    bool single_valued() const;  // all coordinates even
    bool same_parity() const;
    bool is_zero() const;

    // <lambda, theta> with theta = theta_1 + theta_2, doubled
    int theta_pairing2() const { return c.size() >= 2 ? c[0] + c[1] : 0; }

    static Weight zero(int n);
    static Weight theta(int n, int i, int mult = 1);  // mult * theta_i, i is 1-based
    static Weight spin_plus(int n);
    static Weight spin_minus(int n);
    static Weight sym_power(int n, int k);  // k * theta_1

    Weight operator+(const Weight& o) const;
    Weight operator-(const Weight& o) const;
    Weight operator-() const;
    bool operator==(const Weight& o) const = default;
    auto operator<=>(const Weight& o) const = default;

    std::string str() const;
};

Rational inner(const Weight& a, const Weight& b);

struct WeylElement {
    std::vector<int> perm;   // image of position i is perm[i]
    std::vector<int> signs;  // +1/-1, even number of -1

    Weight apply(const Weight& w) const;
    int det() const;  // sign of the permutation
};

std::vector<WeylElement> weyl_group(int n);
std::uint64_t weyl_group_order(int n);

std::vector<Weight> weyl_orbit(const Weight& lambda);
std::vector<Weight> positive_roots(int n);
std::vector<Weight> roots(int n);
Weight rho(int n);

bool is_minimal(const Weight& lambda);
bool admissible(const Weight& lambda, int level);

class AlcoveIndex {
public:
    AlcoveIndex(int n, int level, std::vector<Weight> weights);

    int rank() const { return n_; }
    int level() const { return level_; }
    std::size_t size() const { return weights_.size(); }
    const std::vector<Weight>& weights() const { return weights_; }
    const Weight& operator[](std::size_t i) const { return weights_[i]; }
    bool contains(const Weight& w) const { return pos_.count(w) != 0; }
    std::size_t index_of(const Weight& w) const;

private:
    int n_;
    int level_;
    std::vector<Weight> weights_;
    std::map<Weight, std::size_t> pos_;
};

AlcoveIndex alcove(int n, int level);

enum class CenterTag { identity, v, s_plus, s_minus };

std::string to_string(CenterTag t);
CenterTag center_mul(CenterTag a, CenterTag b, int n);
CenterTag center_inverse(CenterTag a, int n);
int center_order(CenterTag a, int n);
// Minimal weight attached to a centre element (0, theta_1, s+, s-).
Weight center_weight(CenterTag t, int n);

Weight center_act(CenterTag z, const Weight& lambda, int level);

Rational casimir(const Weight& lambda);

class LatticeCocycle {
public:
    explicit LatticeCocycle(std::vector<Weight> basis);

    const std::vector<Weight>& basis() const { return basis_; }
    // gram2[i][j] = 2 <b_i, b_j>
    const std::vector<std::vector<std::int64_t>>& gram2() const { return gram2_; }

    std::vector<std::int64_t> coordinates(const Weight& lambda) const;
    bool in_lattice(const Weight& lambda) const;
    int operator()(const Weight& alpha, const Weight& beta) const;

private:
    int raw(const std::vector<std::int64_t>& m, const std::vector<std::int64_t>& k) const;
    int coboundary(const std::vector<std::int64_t>& m) const;

    std::vector<Weight> basis_;
    std::vector<std::vector<std::int64_t>> gram2_;
    std::vector<std::vector<Rational>> solve_;  // left inverse on the span
    std::vector<int> pivots_;
};

LatticeCocycle build_cocycle(const std::vector<Weight>& basis);
std::vector<Weight> simple_roots(int n);

bool extension_property(int n, const std::vector<CenterTag>& generators);

}  // namespace fusion_forge
