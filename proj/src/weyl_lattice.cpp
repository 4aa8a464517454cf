#include "fusion_forge/weyl_lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fusion_forge {

namespace {

void require_same_rank(const Weight& a, const Weight& b) {
    if (a.rank() != b.rank())
        throw std::invalid_argument("weight rank mismatch: " + a.str() + " vs " + b.str());
}

int perm_sign(const std::vector<int>& p) {
    int s = 1;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) s = -s;
    }
    return s;
}

}  // namespace

bool Weight::dominant() const {
    const int n = rank();
    for (int i = 0; i + 1 < n - 1; ++i)
        if (c[i] < c[i + 1]) return false;
    if (n >= 2 && c[n - 2] < std::abs(c[n - 1])) return false;
    return true;
}

bool Weight::same_parity() const {
    return std::all_of(c.begin(), c.end(), [&](int x) { return (x - c[0]) % 2 == 0; });
}

bool Weight::single_valued() const {
    return std::all_of(c.begin(), c.end(), [](int x) { return x % 2 == 0; });
}

bool Weight::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
}

Weight Weight::zero(int n) { return Weight(std::vector<int>(n, 0)); }

Weight Weight::theta(int n, int i, int mult) {
    if (i < 1 || i > n) throw std::out_of_range("theta index out of range");
    Weight w = zero(n);
    w.c[i - 1] = 2 * mult;
    return w;
}

Weight Weight::spin_plus(int n) { return Weight(std::vector<int>(n, 1)); }

Weight Weight::spin_minus(int n) {
    Weight w = spin_plus(n);
    w.c[n - 1] = -1;
    return w;
}

Weight Weight::sym_power(int n, int k) { return theta(n, 1, k); }

Weight Weight::operator+(const Weight& o) const {
    require_same_rank(*this, o);
    Weight r = *this;
    for (int i = 0; i < rank(); ++i) r.c[i] += o.c[i];
    return r;
}

Weight Weight::operator-(const Weight& o) const { return *this + (-o); }

Weight Weight::operator-() const {
    Weight r = *this;
    for (int& x : r.c) x = -x;
    return r;
}

std::string Weight::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << ']';
    return os.str();
}

Rational inner(const Weight& a, const Weight& b) {
    require_same_rank(a, b);
    std::int64_t s = 0;
    for (int i = 0; i < a.rank(); ++i) s += static_cast<std::int64_t>(a.c[i]) * b.c[i];
    return Rational(s, 4);
}

Weight WeylElement::apply(const Weight& w) const {
    Weight r = Weight::zero(w.rank());
    for (int i = 0; i < w.rank(); ++i) r.c[perm[i]] = signs[perm[i]] * w.c[i];
    return r;
}

int WeylElement::det() const { return perm_sign(perm); }

std::uint64_t weyl_group_order(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f << (n - 1);
}

std::vector<WeylElement> weyl_group(int n) {
    std::vector<WeylElement> out;
    out.reserve(weyl_group_order(n));
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (std::popcount(mask) % 2) continue;
            WeylElement w{p, std::vector<int>(n, 1)};
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) w.signs[i] = -1;
            out.push_back(std::move(w));
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<Weight> weyl_orbit(const Weight& lambda) {
    // Signed permutations with an even number of flips; dedupe via set.
    const int n = lambda.rank();
    std::set<Weight> seen;
    std::vector<int> v = lambda.c;
    std::sort(v.begin(), v.end());
    do {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (std::popcount(mask) % 2) continue;
            Weight w(v);
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) w.c[i] = -w.c[i];
            seen.insert(std::move(w));
        }
    } while (std::next_permutation(v.begin(), v.end()));
    return {seen.begin(), seen.end()};
}

std::vector<Weight> positive_roots(int n) {
    std::vector<Weight> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Weight a = Weight::zero(n), b = Weight::zero(n);
            a.c[i] = 2;
            a.c[j] = -2;
            b.c[i] = 2;
            b.c[j] = 2;
            out.push_back(a);
            out.push_back(b);
        }
    return out;
}

std::vector<Weight> roots(int n) {
    std::vector<Weight> out = positive_roots(n);
    const std::size_t m = out.size();
    for (std::size_t i = 0; i < m; ++i) out.push_back(-out[i]);
    return out;
}

Weight rho(int n) {
    Weight r = Weight::zero(n);
    for (int j = 0; j < n; ++j) r.c[j] = 2 * (n - 1 - j);
    return r;
}

bool is_minimal(const Weight& lambda) {
    for (const Weight& a : positive_roots(lambda.rank())) {
        Rational p = inner(lambda, a);
        if (p > 1 || p < -1) return false;
    }
    return true;
}

bool admissible(const Weight& lambda, int level) {
    return lambda.same_parity() && lambda.dominant() && lambda.theta_pairing2() <= 2 * level;
}

AlcoveIndex::AlcoveIndex(int n, int level, std::vector<Weight> weights)
    : n_(n), level_(level), weights_(std::move(weights)) {
    std::sort(weights_.begin(), weights_.end());
    for (std::size_t i = 0; i < weights_.size(); ++i) pos_[weights_[i]] = i;
}

std::size_t AlcoveIndex::index_of(const Weight& w) const {
    auto it = pos_.find(w);
    if (it == pos_.end())
        throw std::out_of_range("weight " + w.str() + " not in alcove at level " + std::to_string(level_));
    return it->second;
}

namespace {

// Fill c[i..n) with a non-increasing tail bounded by `cap`, last entry may be negative.
void enumerate_tail(std::vector<int>& c, int i, int cap, int parity, std::vector<Weight>& out) {
    const int n = static_cast<int>(c.size());
    if (i == n - 1) {
        for (int x = -cap; x <= cap; ++x) {
            if ((x - parity) % 2) continue;
            c[i] = x;
            out.emplace_back(c);
        }
        return;
    }
    for (int x = parity; x <= cap; x += 2) {
        c[i] = x;
        enumerate_tail(c, i + 1, x, parity, out);
    }
}

}  // namespace

AlcoveIndex alcove(int n, int level) {
    if (n < 3) throw std::invalid_argument("rank must be at least 3");
    if (level < 1) throw std::invalid_argument("level must be at least 1");
    std::vector<Weight> out;
    for (int parity = 0; parity <= 1; ++parity) {
        std::vector<int> c(n, 0);
        for (int c1 = parity; c1 <= 2 * level; c1 += 2) {
            c[0] = c1;
            const int cap = std::min(c1, 2 * level - c1);
            if (cap < parity) continue;
            enumerate_tail(c, 1, cap, parity, out);
        }
    }
    return AlcoveIndex(n, level, std::move(out));
}

std::string to_string(CenterTag t) {
    switch (t) {
        case CenterTag::identity: return "1";
        case CenterTag::v: return "v";
        case CenterTag::s_plus: return "s+";
        case CenterTag::s_minus: return "s-";
    }
    return "?";
}

namespace {

// n odd: Z4 with s+ = 1, v = 2, s- = 3.  n even: Z2 x Z2 with v = (1,0), s+ = (0,1), s- = (1,1).
int encode(CenterTag t, int n) {
    if (n % 2) {
        switch (t) {
            case CenterTag::identity: return 0;
            case CenterTag::s_plus: return 1;
            case CenterTag::v: return 2;
            case CenterTag::s_minus: return 3;
        }
    }
    switch (t) {
        case CenterTag::identity: return 0;
        case CenterTag::v: return 1;
        case CenterTag::s_plus: return 2;
        case CenterTag::s_minus: return 3;
    }
    return 0;
}

CenterTag decode(int x, int n) {
    static const CenterTag odd[] = {CenterTag::identity, CenterTag::s_plus, CenterTag::v, CenterTag::s_minus};
    static const CenterTag even[] = {CenterTag::identity, CenterTag::v, CenterTag::s_plus, CenterTag::s_minus};
    return n % 2 ? odd[x] : even[x];
}

}  // namespace

CenterTag center_mul(CenterTag a, CenterTag b, int n) {
    const int x = encode(a, n), y = encode(b, n);
    return decode(n % 2 ? (x + y) % 4 : (x ^ y), n);
}

CenterTag center_inverse(CenterTag a, int n) {
    const int x = encode(a, n);
    return decode(n % 2 ? (4 - x) % 4 : x, n);
}

int center_order(CenterTag a, int n) {
    int k = 1;
    for (CenterTag p = a; p != CenterTag::identity; p = center_mul(p, a, n)) ++k;
    return k;
}

Weight center_weight(CenterTag t, int n) {
    switch (t) {
        case CenterTag::identity: return Weight::zero(n);
        case CenterTag::v: return Weight::theta(n, 1);
        case CenterTag::s_plus: return Weight::spin_plus(n);
        case CenterTag::s_minus: return Weight::spin_minus(n);
    }
    return Weight::zero(n);
}

Weight center_act(CenterTag z, const Weight& lambda, int level) {
    if (!admissible(lambda, level))
        throw std::invalid_argument("center_act: " + lambda.str() + " is not admissible at level " +
                                    std::to_string(level));
    const int n = lambda.rank();
    const int L = level;  // l/2 doubled
    const auto& m = lambda.c;
    Weight r = Weight::zero(n);
    switch (z) {
        case CenterTag::identity:
            return lambda;
        case CenterTag::v:
            r = lambda;
            r.c[0] = 2 * L - m[0];
            r.c[n - 1] = -m[n - 1];
            return r;
        case CenterTag::s_minus:
            // l/2 -/+ mu_n first, then l/2 - mu_{n-1} ... l/2 - mu_2, -l/2 + mu_1
            r.c[0] = (n % 2 == 0) ? L + m[n - 1] : L - m[n - 1];
            for (int j = 1; j < n - 1; ++j) r.c[j] = L - m[n - 1 - j];
            r.c[n - 1] = -L + m[0];
            return r;
        case CenterTag::s_plus:
            r.c[0] = (n % 2 == 0) ? L - m[n - 1] : L + m[n - 1];
            for (int j = 1; j < n; ++j) r.c[j] = L - m[n - 1 - j];
            return r;
    }
    return r;
}

Rational casimir(const Weight& lambda) {
    if (!lambda.dominant()) throw std::invalid_argument("casimir: " + lambda.str() + " is not dominant");
    const Weight r = rho(lambda.rank());
    return inner(lambda, lambda + r + r);
}

std::vector<Weight> simple_roots(int n) {
    std::vector<Weight> out;
    for (int i = 0; i + 1 < n; ++i) {
        Weight a = Weight::zero(n);
        a.c[i] = 2;
        a.c[i + 1] = -2;
        out.push_back(a);
    }
    Weight a = Weight::zero(n);
    a.c[n - 2] = 2;
    a.c[n - 1] = 2;
    out.push_back(a);
    return out;
}

LatticeCocycle::LatticeCocycle(std::vector<Weight> basis) : basis_(std::move(basis)) {
    if (basis_.empty()) throw std::invalid_argument("cocycle basis is empty");
    const int n = basis_[0].rank();
    const std::size_t r = basis_.size();
    for (const Weight& b : basis_) require_same_rank(b, basis_[0]);

    gram2_.assign(r, std::vector<std::int64_t>(r, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            Rational g = inner(basis_[i], basis_[j]);
            if (g.denominator() != 1)
                throw std::invalid_argument("cocycle basis has non-integral inner product");
            gram2_[i][j] = 2 * g.numerator();
        }
    for (std::size_t i = 0; i < r; ++i)
        if ((gram2_[i][i] / 2) % 2 != 0)
            throw std::invalid_argument("cocycle basis vector " + basis_[i].str() + " has odd norm");

    // Gaussian elimination on the n x r coordinate matrix to pick r independent rows.
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(r));
    for (int row = 0; row < n; ++row)
        for (std::size_t col = 0; col < r; ++col) a[row][col] = Rational(basis_[col].c[row], 2);
    std::vector<int> rows(n);
    std::iota(rows.begin(), rows.end(), 0);
    std::vector<std::vector<Rational>> work = a;
    std::vector<bool> used(n, false);
    for (std::size_t col = 0; col < r; ++col) {
        int piv = -1;
        for (int row = 0; row < n; ++row)
            if (!used[row] && work[row][col] != Rational(0)) {
                piv = row;
                break;
            }
        if (piv < 0) throw std::invalid_argument("cocycle basis is linearly dependent");
        used[piv] = true;
        pivots_.push_back(piv);
        for (int row = 0; row < n; ++row) {
            if (row == piv || work[row][col] == Rational(0)) continue;
            Rational f = work[row][col] / work[piv][col];
            for (std::size_t k = 0; k < r; ++k) work[row][k] -= f * work[piv][k];
        }
    }
    // Invert the r x r submatrix on the pivot rows.
    std::vector<std::vector<Rational>> s(r, std::vector<Rational>(2 * r));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) s[i][j] = a[pivots_[i]][j];
        s[i][r + i] = 1;
    }
    for (std::size_t col = 0; col < r; ++col) {
        std::size_t piv = col;
        while (s[piv][col] == Rational(0)) ++piv;
        std::swap(s[piv], s[col]);
        const Rational d = s[col][col];
        for (auto& x : s[col]) x /= d;
        for (std::size_t i = 0; i < r; ++i) {
            if (i == col || s[i][col] == Rational(0)) continue;
            const Rational f = s[i][col];
            for (std::size_t k = 0; k < 2 * r; ++k) s[i][k] -= f * s[col][k];
        }
    }
    solve_.assign(r, std::vector<Rational>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) solve_[i][j] = s[i][r + j];
}

std::vector<std::int64_t> LatticeCocycle::coordinates(const Weight& lambda) const {
    require_same_rank(lambda, basis_[0]);
    const std::size_t r = basis_.size();
    std::vector<std::int64_t> m(r);
    for (std::size_t i = 0; i < r; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < r; ++j) s += solve_[i][j] * Rational(lambda.c[pivots_[j]], 2);
        if (s.denominator() != 1) throw std::invalid_argument(lambda.str() + " is not in the lattice");
        m[i] = s.numerator();
    }
    Weight back = Weight::zero(lambda.rank());
    for (std::size_t i = 0; i < r; ++i)
        for (int k = 0; k < lambda.rank(); ++k) back.c[k] += static_cast<int>(m[i]) * basis_[i].c[k];
    if (back != lambda) throw std::invalid_argument(lambda.str() + " is not in the span of the basis");
    return m;
}

bool LatticeCocycle::in_lattice(const Weight& lambda) const {
    try {
        coordinates(lambda);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

int LatticeCocycle::raw(const std::vector<std::int64_t>& m, const std::vector<std::int64_t>& k) const {
    std::int64_t e = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) e += m[i] * k[j] * (gram2_[i][j] / 2);
    return (e % 2 == 0) ? 1 : -1;
}

int LatticeCocycle::coboundary(const std::vector<std::int64_t>& m) const {
    auto first = std::find_if(m.begin(), m.end(), [](std::int64_t x) { return x != 0; });
    if (first == m.end() || *first < 0) return 1;
    return raw(m, m);
}

int LatticeCocycle::operator()(const Weight& alpha, const Weight& beta) const {
    const auto m = coordinates(alpha);
    const auto k = coordinates(beta);
    std::vector<std::int64_t> s(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) s[i] = m[i] + k[i];
    return raw(m, k) * coboundary(m) * coboundary(k) * coboundary(s);
}

LatticeCocycle build_cocycle(const std::vector<Weight>& basis) { return LatticeCocycle(basis); }

bool extension_property(int n, const std::vector<CenterTag>& generators) {
    if (n < 3) throw std::invalid_argument("rank must be at least 3");
    std::set<CenterTag> group{CenterTag::identity};
    bool grew = true;
    while (grew) {
        grew = false;
        for (CenterTag a : std::vector<CenterTag>(group.begin(), group.end()))
            for (CenterTag g : generators)
                grew |= group.insert(center_mul(a, g, n)).second;
    }
    // Every cyclic subgroup must satisfy k<lambda,lambda> in 2Z; for the Klein group
    // the explicit extension exists exactly when this holds for all three elements.
    for (CenterTag z : group) {
        const Rational crit = Rational(center_order(z, n)) * inner(center_weight(z, n), center_weight(z, n));
        if (crit.denominator() != 1 || crit.numerator() % 2 != 0) return false;
    }
    return true;
}

}  // namespace fusion_forge
