#include <doctest.h>

#include "fusion_forge/weyl_lattice.hpp"

#include <algorithm>
#include <set>

using namespace fusion_forge;

namespace {

const CenterTag kTags[] = {CenterTag::identity, CenterTag::v, CenterTag::s_plus, CenterTag::s_minus};

// Every weight with doubled coordinates in [-2l, 2l], filtered by admissibility.
std::vector<Weight> brute_force_alcove(int n, int level) {
    std::vector<Weight> out;
    std::vector<int> c(n, -2 * level);
    for (;;) {
        Weight w(c);
        if (admissible(w, level)) out.push_back(w);
        int i = 0;
        while (i < n && ++c[i] > 2 * level) c[i++] = -2 * level;
        if (i == n) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("inner products in doubled coordinates") {
    const Weight t1 = Weight::theta(3, 1);
    CHECK(inner(t1, t1 + Weight::theta(3, 2)) == Rational(1));
    CHECK(inner(Weight::spin_plus(4), Weight::spin_plus(4)) == Rational(1));
    CHECK(inner(Weight::spin_plus(3), Weight::spin_plus(3)) == Rational(3, 4));
    CHECK(Weight::spin_plus(3).c == std::vector<int>{1, 1, 1});
    CHECK(Weight::spin_minus(3).c == std::vector<int>{1, 1, -1});
    CHECK(t1.c == std::vector<int>{2, 0, 0});
}

TEST_CASE("Weyl group and orbits") {
    CHECK(weyl_group_order(3) == 24);
    CHECK(weyl_group_order(4) == 192);
    CHECK(weyl_group(4).size() == 192);
    CHECK(weyl_orbit(Weight::theta(4, 1)).size() == 8);
    CHECK(weyl_orbit(Weight::spin_plus(4)).size() == 8);
    CHECK(weyl_orbit(Weight::zero(5)).size() == 1);
    CHECK(positive_roots(4).size() == 12);
    CHECK(roots(3).size() == 12);
    CHECK(rho(3).c == std::vector<int>{4, 2, 0});
}

TEST_CASE("minimal weights") {
    for (int n = 3; n <= 6; ++n) {
        CHECK(is_minimal(Weight::zero(n)));
        CHECK(is_minimal(Weight::theta(n, 1)));
        CHECK(is_minimal(Weight::spin_plus(n)));
        CHECK(is_minimal(Weight::spin_minus(n)));
        CHECK_FALSE(is_minimal(Weight::sym_power(n, 2)));
        CHECK_FALSE(is_minimal(Weight::theta(n, 1) + Weight::theta(n, 2)));
    }
    // whole orbit stays within |<., alpha>| <= 1
    for (int n = 3; n <= 5; ++n)
        for (const Weight& w : weyl_orbit(Weight::spin_minus(n)))
            for (const Weight& a : roots(n)) {
                const Rational p = inner(w, a);
                CHECK((p <= Rational(1) && p >= Rational(-1)));
            }
}

TEST_CASE("alcove enumeration") {
    const AlcoveIndex a1 = alcove(3, 1);
    REQUIRE(a1.size() == 4);
    CHECK(a1.contains(Weight::zero(3)));
    CHECK(a1.contains(Weight::theta(3, 1)));
    CHECK(a1.contains(Weight::spin_plus(3)));
    CHECK(a1.contains(Weight::spin_minus(3)));
    CHECK(alcove(3, 2).size() == 10);
    for (int n = 3; n <= 5; ++n)
        for (int l = 1; l <= 3; ++l) {
            const AlcoveIndex a = alcove(n, l);
            CHECK(a.weights() == brute_force_alcove(n, l));
            CHECK(a.contains(Weight::zero(n)));
        }
    // level 1 is exactly the minimal weights
    for (int n = 3; n <= 6; ++n) {
        const AlcoveIndex a = alcove(n, 1);
        for (const Weight& w : a.weights()) CHECK(is_minimal(w));
    }
}

TEST_CASE("centre action") {
    CHECK(center_act(CenterTag::v, Weight::zero(3), 2) == Weight::sym_power(3, 2));
    CHECK(center_act(CenterTag::identity, Weight::theta(3, 1), 2) == Weight::theta(3, 1));

    Weight w = Weight::zero(3);
    std::vector<Weight> cycle;
    for (int i = 0; i < 4; ++i) {
        w = center_act(CenterTag::s_plus, w, 1);
        cycle.push_back(w);
    }
    CHECK(cycle == std::vector<Weight>{Weight::spin_plus(3), Weight::theta(3, 1), Weight::spin_minus(3), Weight::zero(3)});

    for (int n = 3; n <= 5; ++n)
        for (int l = 1; l <= 3; ++l) {
            const AlcoveIndex alc = alcove(n, l);
            for (CenterTag a : kTags) {
                std::set<Weight> image;
                for (const Weight& mu : alc.weights()) {
                    const Weight am = center_act(a, mu, l);
                    CHECK(alc.contains(am));
                    image.insert(am);
                    for (CenterTag b : kTags)
                        CHECK(center_act(a, center_act(b, mu, l), l) == center_act(center_mul(a, b, n), mu, l));
                }
                CHECK(image.size() == alc.size());
            }
            if (l == 1) {
                for (CenterTag a : kTags) CHECK(center_act(a, Weight::zero(n), 1) == center_weight(a, n));
                for (const Weight& mu : alc.weights()) {
                    std::set<Weight> orbit;
                    for (CenterTag a : kTags) orbit.insert(center_act(a, mu, 1));
                    CHECK(orbit.size() == 4);
                }
            }
        }
    CHECK_THROWS_AS(center_act(CenterTag::v, Weight::sym_power(3, 2), 1), std::invalid_argument);
}

TEST_CASE("centre group structure") {
    CHECK(center_order(CenterTag::s_plus, 3) == 4);
    CHECK(center_order(CenterTag::s_plus, 4) == 2);
    CHECK(center_mul(CenterTag::s_plus, CenterTag::s_plus, 3) == CenterTag::v);
    CHECK(center_mul(CenterTag::s_plus, CenterTag::s_plus, 4) == CenterTag::identity);
    CHECK(center_mul(CenterTag::s_plus, CenterTag::s_minus, 4) == CenterTag::v);
    for (int n = 3; n <= 6; ++n)
        for (CenterTag a : kTags) CHECK(center_mul(a, center_inverse(a, n), n) == CenterTag::identity);
}

TEST_CASE("Casimir values") {
    for (int n = 3; n <= 7; ++n) {
        CHECK(casimir(Weight::zero(n)) == Rational(0));
        CHECK(casimir(Weight::theta(n, 1)) == Rational(2 * n - 1));
        CHECK(casimir(Weight::sym_power(n, 2)) == Rational(4 * n));
        CHECK(casimir(Weight::theta(n, 1) + Weight::theta(n, 2)) == Rational(4 * (n - 1)));
        const AlcoveIndex a = alcove(n, 2);
        for (const Weight& w : a.weights())
            if (!w.is_zero()) CHECK(casimir(w) > Rational(0));
    }
    CHECK_THROWS_AS(casimir(Weight({0, 2, 0})), std::invalid_argument);
}

TEST_CASE("lattice cocycle") {
    const int n = 3;
    const auto basis = simple_roots(n);
    const LatticeCocycle eps = build_cocycle(basis);
    const Weight alpha = Weight::theta(n, 1) - Weight::theta(n, 2);
    const Weight beta = Weight::theta(n, 2) - Weight::theta(n, 3);
    CHECK(eps(alpha, beta) * eps(beta, alpha) == -1);
    CHECK(eps(alpha, Weight::zero(n)) == 1);
    CHECK(eps(Weight::zero(n), beta) == 1);

    // root lattice points with doubled coordinates in [-4, 4]
    std::vector<Weight> box;
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
            for (int c = -2; c <= 2; ++c)
                if ((a + b + c) % 2 == 0) box.push_back(Weight({2 * a, 2 * b, 2 * c}));
    REQUIRE(box.size() == 63);
    for (const Weight& x : box) CHECK(eps.in_lattice(x));
    CHECK_FALSE(eps.in_lattice(Weight::theta(n, 1)));

    int bad_commutator = 0, bad_cocycle = 0;
    for (const Weight& x : box)
        for (const Weight& y : box) {
            const int ip = boost::rational_cast<int>(inner(x, y));
            if (eps(x, y) * eps(y, x) != (ip % 2 == 0 ? 1 : -1)) ++bad_commutator;
            for (const Weight& z : box)
                if (eps(x, y) * eps(x + y, z) != eps(x, y + z) * eps(y, z)) ++bad_cocycle;
        }
    CHECK(bad_commutator == 0);
    CHECK(bad_cocycle == 0);

    CHECK_THROWS(build_cocycle({alpha, beta, alpha + beta}));
}

TEST_CASE("extension property") {
    for (int n = 3; n <= 8; ++n) {
        CHECK(extension_property(n, {}));
        CHECK(extension_property(n, {CenterTag::v}));
        if (n % 2 == 0) {
            CHECK(extension_property(n, {CenterTag::s_plus}) == (n % 4 == 0));
            CHECK(extension_property(n, {CenterTag::s_minus}) == (n % 4 == 0));
        }
    }
}
