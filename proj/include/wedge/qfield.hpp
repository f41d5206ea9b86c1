#pragma once

// Exact arithmetic in k = Q(X), X^2 = X + 1 (the real quadratic field Q(sqrt5),
// via (1 - 2X)^2 = 5), together with the subrings O = Z[X], O_o = Z[1, 2X] and
// the residue rings used by the finite-quotient computations.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wedge {

using Rat = mpq_class;
using Int = mpz_class;

enum class Place { First, Second };

/// Sign of p + q*sqrt(5) for rational p, q, decided by rational comparisons only.
inline int sign_p_plus_q_sqrt5(const Rat& p, const Rat& q) {
    const int sp = sgn(p), sq = sgn(q);
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp > 0 && sq > 0) return 1;
    if (sp < 0 && sq < 0) return -1;
    // Opposite signs: compare p^2 with 5 q^2. Equality is impossible since
    // sqrt(5) is irrational and p, q != 0.
    const Rat lhs = p * p, rhs = 5 * q * q;
    const int c = cmp(lhs, rhs);
    if (c == 0) throw std::logic_error("sign_p_plus_q_sqrt5: p^2 == 5 q^2 with p,q != 0");
    return sp > 0 ? c : -c;
}

/// An element a + b*X of k = Q(X) with X^2 = X + 1.
class QuadElt {
public:
    QuadElt() : a_(0), b_(0) {}
    QuadElt(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)) {}
    QuadElt(long a, long b) : a_(a), b_(b) {}
    explicit QuadElt(long n) : a_(n), b_(0) {}

    static QuadElt zero() { return QuadElt(); }
    static QuadElt one() { return QuadElt(1, 0); }
    static QuadElt X() { return QuadElt(0, 1); }
    static QuadElt from_rat(Rat r) { return QuadElt(std::move(r), Rat(0)); }

    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }

    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

    bool operator==(const QuadElt& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const QuadElt& o) const { return !(*this == o); }

    QuadElt operator+(const QuadElt& o) const { return QuadElt(a_ + o.a_, b_ + o.b_); }
    QuadElt operator-(const QuadElt& o) const { return QuadElt(a_ - o.a_, b_ - o.b_); }
    QuadElt operator-() const { return QuadElt(-a_, -b_); }

    // (a1 + b1 X)(a2 + b2 X) = a1 a2 + b1 b2 + (a1 b2 + a2 b1 + b1 b2) X.
    QuadElt operator*(const QuadElt& o) const {
        return QuadElt(a_ * o.a_ + b_ * o.b_, a_ * o.b_ + o.a_ * b_ + b_ * o.b_);
    }
    QuadElt operator*(const Rat& r) const { return QuadElt(a_ * r, b_ * r); }

    QuadElt& operator+=(const QuadElt& o) { return *this = *this + o; }
    QuadElt& operator-=(const QuadElt& o) { return *this = *this - o; }
    QuadElt& operator*=(const QuadElt& o) { return *this = *this * o; }

    /// The nontrivial field automorphism X -> 1 - X.
    QuadElt galois() const { return QuadElt(a_ + b_, -b_); }

    Rat norm() const { return a_ * a_ + a_ * b_ - b_ * b_; }
    Rat trace() const { return 2 * a_ + b_; }

    QuadElt inv() const {
        if (is_zero()) throw std::domain_error("QuadElt::inv: zero element");
        const Rat n = norm();
        return QuadElt((a_ + b_) / n, -b_ / n);
    }

    QuadElt operator/(const QuadElt& o) const { return *this * o.inv(); }

    QuadElt pow(long e) const {
        if (e < 0) return inv().pow(-e);
        QuadElt r = one(), base = *this;
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    /// Exact sign of the image under the two real embeddings
    /// X -> (1 + sqrt5)/2 (First) and X -> (1 - sqrt5)/2 (Second).
    int sign_at(Place place) const {
        const Rat p = 2 * a_ + b_;
        const Rat q = place == Place::First ? b_ : -b_;
        return sign_p_plus_q_sqrt5(p / 2, q / 2);
    }

    bool is_totally_positive() const {
        return sign_at(Place::First) > 0 && sign_at(Place::Second) > 0;
    }

    /// Membership in O = Z[X].
    bool is_integral() const { return a_.get_den() == 1 && b_.get_den() == 1; }

    /// Membership in O_o = Z[1, 2X]: integral with even X-coordinate.
    bool is_in_Oo() const {
        return is_integral() && mpz_even_p(b_.get_num().get_mpz_t());
    }

    std::string str() const;
    static QuadElt parse(std::string_view text);

private:
    Rat a_, b_;
};

inline QuadElt operator*(const Rat& r, const QuadElt& x) { return x * r; }

inline QuadElt galois(const QuadElt& x) { return x.galois(); }
inline Rat norm(const QuadElt& x) { return x.norm(); }
inline Rat trace(const QuadElt& x) { return x.trace(); }

// ---------------------------------------------------------------------------
// Textual rendering "a + b*X" with exact rationals, and the matching parser.

namespace detail {
inline std::string rat_str(const Rat& r) { return r.get_str(); }
}

inline std::string QuadElt::str() const {
    if (sgn(b_) == 0) return detail::rat_str(a_);
    std::string xterm;
    const Rat babs = abs(b_);
    if (babs == 1) xterm = "X";
    else xterm = detail::rat_str(babs) + "*X";
    if (sgn(a_) == 0) return (sgn(b_) < 0 ? "-" : "") + xterm;
    return detail::rat_str(a_) + (sgn(b_) < 0 ? " - " : " + ") + xterm;
}

inline QuadElt QuadElt::parse(std::string_view text) {
    // Grammar: term (('+'|'-') term)* with term = rational | rational'*'X | X.
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("QuadElt::parse: empty input");

    Rat a(0), b(0);
    size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (!first && i == 0) throw std::invalid_argument("QuadElt::parse: bad sign");
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw std::invalid_argument("QuadElt::parse: expected '+' or '-' in \"" + s + "\"");
        }
        first = false;
        if (i >= s.size()) throw std::invalid_argument("QuadElt::parse: dangling sign");

        if (s[i] == 'X') {
            b += sign;
            ++i;
            continue;
        }
        size_t j = i;
        while (j < s.size() && (isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
        if (j == i) throw std::invalid_argument("QuadElt::parse: expected number in \"" + s + "\"");
        Rat val;
        if (val.set_str(s.substr(i, j - i), 10) != 0)
            throw std::invalid_argument("QuadElt::parse: bad rational \"" + s.substr(i, j - i) + "\"");
        val.canonicalize();
        i = j;
        if (i < s.size() && s[i] == '*') {
            ++i;
            if (i >= s.size() || s[i] != 'X')
                throw std::invalid_argument("QuadElt::parse: expected X after '*'");
            ++i;
            b += sign * val;
        } else {
            a += sign * val;
        }
    }
    return QuadElt(a, b);
}

// ---------------------------------------------------------------------------
// Residue rings.
//
// Mod2 and Mod4 are the coordinate rings (Z/n)[X]; ModP5 is O/p5 = F5 with
// X -> 3 forced by 1 - 2X = 0; Mod4P5 is the CRT pair of Mod4 and ModP5.
// ModN(n) is the generic coordinate ring, kept for testing only (n <= 16).

enum class RingKind : std::uint8_t { Mod2, Mod4, ModP5, Mod4P5, ModN };

struct ResidueRing {
    RingKind kind;
    std::uint16_t n; // coordinate modulus for polynomial-style rings

    static ResidueRing mod2() { return {RingKind::Mod2, 2}; }
    static ResidueRing mod4() { return {RingKind::Mod4, 4}; }
    static ResidueRing modp5() { return {RingKind::ModP5, 5}; }
    static ResidueRing mod4p5() { return {RingKind::Mod4P5, 0}; }
    static ResidueRing modn(unsigned n) {
        if (n < 2 || n > 16) throw std::domain_error("ResidueRing::modn: need 2 <= n <= 16");
        return {RingKind::ModN, static_cast<std::uint16_t>(n)};
    }

    bool operator==(const ResidueRing& o) const { return kind == o.kind && n == o.n; }
    bool operator!=(const ResidueRing& o) const { return !(*this == o); }

    bool polynomial_style() const {
        return kind == RingKind::Mod2 || kind == RingKind::Mod4 || kind == RingKind::ModN;
    }

    /// Number of ring elements: 4, 16, 5, 80, n^2.
    std::uint32_t size() const {
        switch (kind) {
            case RingKind::Mod2: return 4;
            case RingKind::Mod4: return 16;
            case RingKind::ModP5: return 5;
            case RingKind::Mod4P5: return 80;
            case RingKind::ModN: return static_cast<std::uint32_t>(n) * n;
        }
        throw std::logic_error("ResidueRing::size");
    }

    std::string str() const {
        switch (kind) {
            case RingKind::Mod2: return "Mod2";
            case RingKind::Mod4: return "Mod4";
            case RingKind::ModP5: return "ModP5";
            case RingKind::Mod4P5: return "Mod4P5";
            case RingKind::ModN: return "ModN(" + std::to_string(n) + ")";
        }
        return "?";
    }
};

/// Element of a residue ring, stored as a canonical small code:
/// polynomial rings: code = a + n*b with 0 <= a, b < n;
/// ModP5: code = residue mod 5; Mod4P5: code = mod4 + 16 * p5.
struct ResidueElt {
    ResidueRing ring;
    std::uint16_t code = 0;

    bool operator==(const ResidueElt& o) const { return ring == o.ring && code == o.code; }
    bool operator!=(const ResidueElt& o) const { return !(*this == o); }
};

namespace detail {

inline std::uint16_t poly_mul_code(std::uint16_t x, std::uint16_t y, unsigned n) {
    const unsigned a1 = x % n, b1 = x / n, a2 = y % n, b2 = y / n;
    const unsigned bb = b1 * b2;
    const unsigned a = (a1 * a2 + bb) % n;
    const unsigned b = (a1 * b2 + a2 * b1 + bb) % n;
    return static_cast<std::uint16_t>(a + n * b);
}
inline std::uint16_t poly_add_code(std::uint16_t x, std::uint16_t y, unsigned n) {
    const unsigned a = (x % n + y % n) % n;
    const unsigned b = (x / n + y / n) % n;
    return static_cast<std::uint16_t>(a + n * b);
}
inline std::uint16_t poly_neg_code(std::uint16_t x, unsigned n) {
    const unsigned a = (n - x % n) % n;
    const unsigned b = (n - x / n) % n;
    return static_cast<std::uint16_t>(a + n * b);
}

} // namespace detail

inline ResidueElt ring_zero(const ResidueRing& r) { return {r, 0}; }

inline ResidueElt ring_one(const ResidueRing& r) {
    switch (r.kind) {
        case RingKind::ModP5: return {r, 1};
        case RingKind::Mod4P5: return {r, 1 + 16 * 1};
        default: return {r, 1};
    }
}

inline ResidueElt ring_add(const ResidueElt& x, const ResidueElt& y) {
    if (x.ring != y.ring) throw std::domain_error("ring_add: ring mismatch");
    const ResidueRing& r = x.ring;
    switch (r.kind) {
        case RingKind::ModP5: return {r, static_cast<std::uint16_t>((x.code + y.code) % 5)};
        case RingKind::Mod4P5: {
            const std::uint16_t m4 = detail::poly_add_code(x.code % 16, y.code % 16, 4);
            const std::uint16_t p5 = static_cast<std::uint16_t>((x.code / 16 + y.code / 16) % 5);
            return {r, static_cast<std::uint16_t>(m4 + 16 * p5)};
        }
        default: return {r, detail::poly_add_code(x.code, y.code, r.n)};
    }
}

inline ResidueElt ring_mul(const ResidueElt& x, const ResidueElt& y) {
    if (x.ring != y.ring) throw std::domain_error("ring_mul: ring mismatch");
    const ResidueRing& r = x.ring;
    switch (r.kind) {
        case RingKind::ModP5: return {r, static_cast<std::uint16_t>((x.code * y.code) % 5)};
        case RingKind::Mod4P5: {
            const std::uint16_t m4 = detail::poly_mul_code(x.code % 16, y.code % 16, 4);
            const std::uint16_t p5 = static_cast<std::uint16_t>((x.code / 16) * (y.code / 16) % 5);
            return {r, static_cast<std::uint16_t>(m4 + 16 * p5)};
        }
        default: return {r, detail::poly_mul_code(x.code, y.code, r.n)};
    }
}

inline ResidueElt ring_neg(const ResidueElt& x) {
    const ResidueRing& r = x.ring;
    switch (r.kind) {
        case RingKind::ModP5: return {r, static_cast<std::uint16_t>((5 - x.code) % 5)};
        case RingKind::Mod4P5: {
            const std::uint16_t m4 = detail::poly_neg_code(x.code % 16, 4);
            const std::uint16_t p5 = static_cast<std::uint16_t>((5 - x.code / 16) % 5);
            return {r, static_cast<std::uint16_t>(m4 + 16 * p5)};
        }
        default: return {r, detail::poly_neg_code(x.code, r.n)};
    }
}

inline ResidueElt ring_sub(const ResidueElt& x, const ResidueElt& y) {
    return ring_add(x, ring_neg(y));
}

/// Reduction O -> O/J. Domain error on non-integral input.
inline ResidueElt reduce(const QuadElt& x, const ResidueRing& ring) {
    if (!x.is_integral()) throw std::domain_error("reduce: non-integral element");
    const Int& a = x.a().get_num();
    const Int& b = x.b().get_num();
    auto mod = [](const Int& v, unsigned long m) -> unsigned long {
        Int r;
        mpz_mod_ui(r.get_mpz_t(), v.get_mpz_t(), m);
        return r.get_ui();
    };
    switch (ring.kind) {
        case RingKind::ModP5:
            // X -> 3, the solution of 2x = 1 mod 5 forced by 1 - 2X in p5.
            return {ring, static_cast<std::uint16_t>((mod(a, 5) + 3 * mod(b, 5)) % 5)};
        case RingKind::Mod4P5: {
            const std::uint16_t m4 =
                static_cast<std::uint16_t>(mod(a, 4) + 4 * mod(b, 4));
            const std::uint16_t p5 = static_cast<std::uint16_t>((mod(a, 5) + 3 * mod(b, 5)) % 5);
            return {ring, static_cast<std::uint16_t>(m4 + 16 * p5)};
        }
        default:
            return {ring, static_cast<std::uint16_t>(mod(a, ring.n) + ring.n * mod(b, ring.n))};
    }
}

/// Projection of a Mod4P5 element to its Mod4 or ModP5 component.
inline ResidueElt crt_mod4(const ResidueElt& x) {
    if (x.ring.kind != RingKind::Mod4P5) throw std::domain_error("crt_mod4: wrong ring");
    return {ResidueRing::mod4(), static_cast<std::uint16_t>(x.code % 16)};
}
inline ResidueElt crt_p5(const ResidueElt& x) {
    if (x.ring.kind != RingKind::Mod4P5) throw std::domain_error("crt_p5: wrong ring");
    return {ResidueRing::modp5(), static_cast<std::uint16_t>(x.code / 16)};
}

/// Coordinate-wise reduction Mod4 -> Mod2.
inline ResidueElt mod4_to_mod2(const ResidueElt& x) {
    if (x.ring.kind != RingKind::Mod4) throw std::domain_error("mod4_to_mod2: wrong ring");
    return {ResidueRing::mod2(), static_cast<std::uint16_t>(x.code % 4 % 2 + 2 * (x.code / 4 % 2))};
}

/// Lies in the prime subfield F2 of F4 (X-coordinate zero)?
inline bool in_prime_subfield(const ResidueElt& x) {
    if (x.ring.kind != RingKind::Mod2) throw std::domain_error("in_prime_subfield: wrong ring");
    return x.code / 2 == 0;
}

} // namespace wedge
