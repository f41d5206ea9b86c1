#include "doctest.h"

#include "wedge/poly.hpp"

#include <random>

using namespace wedge;

namespace {

QPoly qpoly(std::initializer_list<long> coeffs) {
    std::vector<QuadElt> c;
    for (long v : coeffs) c.emplace_back(v, 0L);
    return QPoly(std::move(c));
}

QPoly from_roots(const std::vector<QuadElt>& roots) {
    QPoly p = QPoly::constant(QuadElt::one());
    for (const auto& r : roots) p = p * QPoly(std::vector<QuadElt>{-r, QuadElt::one()});
    return p;
}

} // namespace

TEST_CASE("division and gcd over k") {
    const QPoly p = from_roots({QuadElt(1, 0), QuadElt(0, 1), QuadElt(2, -1)});
    const QPoly d = QPoly(std::vector<QuadElt>{-QuadElt(0, 1), QuadElt::one()});
    auto [q, r] = p.divmod(d);
    CHECK(r.is_zero());
    CHECK(q * d == p);

    const QPoly a = from_roots({QuadElt(1, 0), QuadElt(1, 0), QuadElt(3, 2)});
    const QPoly b = from_roots({QuadElt(1, 0), QuadElt(5, -1)});
    const QPoly g = poly_gcd(a, b);
    CHECK(g == from_roots({QuadElt(1, 0)}));
}

TEST_CASE("squarefree decomposition") {
    const QuadElt r1(1, 0), r2(0, 1);
    const QPoly p = from_roots({r1, r1, r1, r2});
    auto sf = squarefree_decomposition(p);
    REQUIRE(sf.size() == 2);
    CHECK(sf[0].first == from_roots({r2}));
    CHECK(sf[0].second == 1);
    CHECK(sf[1].first == from_roots({r1}));
    CHECK(sf[1].second == 3);
}

TEST_CASE("rational roots with big-ish content") {
    // 6 t^3 - t^2 - 31 t - 10 = (t + 2)(2 t - ... ) check: roots -2, 5/2, -1/3
    RatPoly p(std::vector<Rat>{Rat(-10), Rat(-31), Rat(-1), Rat(6)});
    auto roots = rational_roots(p);
    REQUIRE(roots.size() == 3);
    std::vector<Rat> vals;
    for (auto& [r, m] : roots) {
        CHECK(m == 1);
        vals.push_back(r);
    }
    std::sort(vals.begin(), vals.end());
    CHECK(vals[0] == Rat(-2));
    CHECK(vals[1] == Rat(-1, 3));
    CHECK(vals[2] == Rat(5, 2));

    // Multiplicity and zero roots.
    RatPoly q(std::vector<Rat>{Rat(0), Rat(0), Rat(4), Rat(4), Rat(1)}); // t^2 (t + 2)^2
    auto qr = rational_roots(q);
    REQUIRE(qr.size() == 2);
    for (auto& [r, m] : qr) CHECK(m == 2);
}

TEST_CASE("square roots in k") {
    CHECK(sqrt_rat(Rat(49, 4)) == Rat(7, 2));
    CHECK(!sqrt_rat(Rat(2)).has_value());

    auto s = sqrt_in_k(QuadElt(5, 0));
    REQUIRE(s.has_value());
    CHECK(*s * *s == QuadElt(5, 0));

    // (2 - X)^2 = 5 - 3X ... check: (2-X)^2 = 4 - 4X + X^2 = 5 - 3X.
    auto t = sqrt_in_k(QuadElt(5, -3));
    REQUIRE(t.has_value());
    CHECK(*t * *t == QuadElt(5, -3));

    CHECK(!sqrt_in_k(QuadElt(0, 1)).has_value());   // X is not a square (norm -1)
    CHECK(!sqrt_in_k(QuadElt(3, 0)).has_value());
    CHECK(sqrt_in_k(QuadElt::zero()) == QuadElt::zero());

    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coef(-20, 20);
    for (int i = 0; i < 400; ++i) {
        const QuadElt x(coef(rng), coef(rng));
        auto r = sqrt_in_k(x * x);
        REQUIRE(r.has_value());
        CHECK(*r * *r == x * x);
    }
}

TEST_CASE("k-rational roots of cubics and quartics") {
    const QuadElt phi(0, 1), r2(3, -2), r3(Rat(1, 2), Rat(0));
    const QPoly p = from_roots({phi, r2, r3});
    auto kr = k_roots(p);
    REQUIRE(kr.roots.size() == 3);
    CHECK(kr.irreducible.empty());
    for (auto& [r, m] : kr.roots) {
        CHECK(m == 1);
        CHECK((r == phi || r == r2 || r == r3));
    }

    // Cubic with one k-root and one k-irreducible quadratic factor:
    // (t - X)(t^2 - 2) with sqrt(2) not in k.
    const QPoly q = from_roots({phi}) * qpoly({-2, 0, 1});
    auto kq = k_roots(q);
    REQUIRE(kq.roots.size() == 1);
    CHECK(kq.roots[0].first == phi);
    REQUIRE(kq.irreducible.size() == 1);
    CHECK(kq.irreducible[0].first.degree() == 2);

    // Quartic with a double k-root and an irreducible quadratic.
    const QPoly s = from_roots({r2, r2}) * qpoly({1, 1, 1});
    auto ks = k_roots(s);
    REQUIRE(ks.roots.size() == 1);
    CHECK(ks.roots[0].first == r2);
    CHECK(ks.roots[0].second == 2);
    REQUIRE(ks.irreducible.size() == 1);
    CHECK(ks.irreducible[0].second == 1);

    // Quartic that splits into two k-irreducible quadratics.
    const QPoly u = qpoly({-2, 0, 1}) * qpoly({-3, 0, 1});
    auto ku = k_roots(u);
    CHECK(ku.roots.empty());

    // t^2 - 5 has the k-rational roots +-(2X - 1).
    auto kv = k_roots(qpoly({-5, 0, 1}));
    REQUIRE(kv.roots.size() == 2);
    CHECK(kv.roots[0].first * kv.roots[0].first == QuadElt(5, 0));
}

TEST_CASE("random k-root reconstruction") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coef(-6, 6);
    for (int i = 0; i < 120; ++i) {
        std::vector<QuadElt> roots;
        const int deg = 3 + static_cast<int>(i % 2);
        for (int j = 0; j < deg; ++j) roots.emplace_back(coef(rng), coef(rng));
        const QPoly p = from_roots(roots);
        auto kr = k_roots(p);
        int total = 0;
        for (auto& [r, m] : kr.roots) {
            total += m;
            CHECK(coeff_is_zero(p.eval(r)));
        }
        CHECK(total == deg);
        CHECK(kr.irreducible.empty());
    }
}
