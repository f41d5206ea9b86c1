#include "doctest.h"

#include "wedge/qfield.hpp"

#include <random>

using namespace wedge;

namespace {

// Independent multiplication oracle: multiply as polynomials in X, then reduce
// the X^2 coefficient through X^2 = X + 1.
QuadElt mul_oracle(const QuadElt& x, const QuadElt& y) {
    Rat c0 = x.a() * y.a();
    Rat c1 = x.a() * y.b() + x.b() * y.a();
    Rat c2 = x.b() * y.b();
    return QuadElt(c0 + c2, c1 + c2);
}

Rat random_rat(std::mt19937& rng, int num_bound, int den_bound) {
    std::uniform_int_distribution<int> num(-num_bound, num_bound);
    std::uniform_int_distribution<int> den(1, den_bound);
    Rat r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

QuadElt random_elt(std::mt19937& rng, int num_bound = 50, int den_bound = 12) {
    return QuadElt(random_rat(rng, num_bound, den_bound), random_rat(rng, num_bound, den_bound));
}

// High-precision floating evaluation used only as a test oracle for sign_at.
int sign_oracle(const QuadElt& x, Place place) {
    const int prec = 512;
    mpf_class sqrt5(0, prec);
    mpf_sqrt_ui(sqrt5.get_mpf_t(), 5);
    mpf_class phi = (1 + (place == Place::First ? sqrt5 : -sqrt5)) / 2;
    mpf_class v = mpf_class(x.a(), prec) + mpf_class(x.b(), prec) * phi;
    // Values in these tests are either zero exactly or far above the oracle's
    // rounding error.
    mpf_class tol(1, prec);
    tol >>= 300;
    if (v > tol) return 1;
    if (v < -tol) return -1;
    return 0;
}

} // namespace

TEST_CASE("defining relation and golden-ratio products") {
    const QuadElt X = QuadElt::X();
    CHECK(X * X == QuadElt(1, 1));

    const QuadElt r(1, -2); // 1 - 2X
    CHECK(r * r == QuadElt(5, 0));

    // (2 + 3X)(6 - 2X) = 6 + 8X, the degree-40 multiplier check.
    const QuadElt lhs = QuadElt(2, 3) * QuadElt(6, -2);
    CHECK(lhs == QuadElt(6, 8));
    CHECK(lhs == mul_oracle(QuadElt(2, 3), QuadElt(6, -2)));
}

TEST_CASE("inverses") {
    const QuadElt X = QuadElt::X();
    CHECK(X.inv() == QuadElt(-1, 1)); // X^-1 = X - 1
    CHECK(QuadElt::one().inv() == QuadElt::one());

    const QuadElt u(2, -1); // 2 - X: norm 1, inverse 1 + X
    CHECK(u.inv() == QuadElt(1, 1));
    CHECK(u * u.inv() == QuadElt::one());

    CHECK_THROWS_AS(QuadElt::zero().inv(), std::domain_error);
}

TEST_CASE("galois, norm, trace") {
    const QuadElt X = QuadElt::X();
    CHECK(X.galois() == QuadElt(1, -1));
    CHECK(QuadElt(1, -2).norm() == Rat(-5));
    CHECK(X.trace() == Rat(1));
    CHECK(QuadElt(3, 2).norm() == (QuadElt(3, 2) * QuadElt(3, 2).galois()).a());
}

TEST_CASE("exact signs at the two places") {
    const QuadElt X = QuadElt::X();
    CHECK(X.sign_at(Place::First) == 1);
    CHECK(X.sign_at(Place::Second) == -1);
    CHECK(QuadElt(2, -1).sign_at(Place::First) == 1);
    CHECK(QuadElt(2, -1).sign_at(Place::Second) == 1);
    CHECK(QuadElt::zero().sign_at(Place::First) == 0);

    CHECK(QuadElt(2, 0).is_totally_positive());
    CHECK_FALSE(X.is_totally_positive());
    CHECK(QuadElt(4, -2).is_totally_positive());
}

TEST_CASE("sign_at agrees with the high-precision oracle") {
    std::mt19937 rng(20260401);
    for (int i = 0; i < 10000; ++i) {
        const QuadElt x = random_elt(rng, 1000, 60);
        CHECK(x.sign_at(Place::First) == sign_oracle(x, Place::First));
        CHECK(x.sign_at(Place::Second) == sign_oracle(x, Place::Second));
    }
}

TEST_CASE("field properties on random elements") {
    std::mt19937 rng(7);
    for (int i = 0; i < 1000; ++i) {
        const QuadElt x = random_elt(rng), y = random_elt(rng);
        CHECK(x * y == mul_oracle(x, y));
        CHECK((x * y).galois() == x.galois() * y.galois());
        CHECK((x * y).norm() == x.norm() * y.norm());
        if (!x.is_zero()) CHECK(x * x.inv() == QuadElt::one());
        CHECK(x.pow(3) == x * x * x);
    }
    CHECK(QuadElt::X().pow(-4) == QuadElt(5, -3));
    CHECK(QuadElt::X().pow(12) == QuadElt(89, 144));
}

TEST_CASE("rendering round trip") {
    std::mt19937 rng(11);
    for (int i = 0; i < 500; ++i) {
        const QuadElt x = random_elt(rng);
        CHECK(QuadElt::parse(x.str()) == x);
        CHECK(QuadElt::parse(x.str()).str() == x.str());
    }
    CHECK(QuadElt::parse("5 - 3*X") == QuadElt(5, -3));
    CHECK(QuadElt::parse("X") == QuadElt::X());
    CHECK(QuadElt::parse("-X") == -QuadElt::X());
    CHECK(QuadElt::parse("1/2 + 3/4*X") == QuadElt(Rat(1, 2), Rat(3, 4)));
    CHECK(QuadElt(0, 0).str() == "0");
    CHECK_THROWS(QuadElt::parse("1 + + X"));
    CHECK_THROWS(QuadElt::parse("Y"));
}

TEST_CASE("reduction to the named residue rings") {
    const QuadElt X = QuadElt::X();
    CHECK(reduce(X, ResidueRing::modp5()).code == 3);
    CHECK(reduce(QuadElt(1, -2), ResidueRing::modp5()).code == 0);
    CHECK(reduce(QuadElt(0, 2), ResidueRing::mod2()).code == 0);
    CHECK(reduce(QuadElt(1, 1), ResidueRing::mod2()).code == 3); // 1 + X in F4

    CHECK_THROWS_AS(reduce(QuadElt(Rat(1, 2), Rat(0)), ResidueRing::mod2()), std::domain_error);

    // CRT pair splits componentwise.
    const ResidueElt z = reduce(QuadElt(7, 3), ResidueRing::mod4p5());
    CHECK(crt_mod4(z) == reduce(QuadElt(7, 3), ResidueRing::mod4()));
    CHECK(crt_p5(z) == reduce(QuadElt(7, 3), ResidueRing::modp5()));

    CHECK(ResidueRing::mod2().size() == 4);
    CHECK(ResidueRing::modp5().size() == 5);
    CHECK(ResidueRing::mod4().size() == 16);
    CHECK(ResidueRing::mod4p5().size() == 80);
}

TEST_CASE("reduce is a ring homomorphism (exhaustive small window)") {
    const ResidueRing rings[] = {ResidueRing::mod2(), ResidueRing::mod4(),
                                 ResidueRing::modp5(), ResidueRing::mod4p5(),
                                 ResidueRing::modn(6)};
    for (const auto& ring : rings) {
        for (int a1 = -4; a1 <= 4; ++a1)
            for (int b1 = -4; b1 <= 4; ++b1)
                for (int a2 = -2; a2 <= 2; ++a2)
                    for (int b2 = -2; b2 <= 2; ++b2) {
                        const QuadElt x(a1, b1), y(a2, b2);
                        CHECK(reduce(x + y, ring) == ring_add(reduce(x, ring), reduce(y, ring)));
                        CHECK(reduce(x * y, ring) == ring_mul(reduce(x, ring), reduce(y, ring)));
                        CHECK(reduce(-x, ring) == ring_neg(reduce(x, ring)));
                    }
    }
}

TEST_CASE("O_o is the pullback of F2 inside F4") {
    for (int a = -6; a <= 6; ++a)
        for (int b = -6; b <= 6; ++b) {
            const QuadElt x(a, b);
            CHECK(x.is_in_Oo() == in_prime_subfield(reduce(x, ResidueRing::mod2())));
        }
    CHECK_FALSE(QuadElt::X().is_in_Oo());
    CHECK(QuadElt(1, 2).is_in_Oo());
    CHECK_FALSE(QuadElt(Rat(1, 2), Rat(2)).is_in_Oo());
}
