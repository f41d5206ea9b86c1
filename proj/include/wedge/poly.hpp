#pragma once

// Univariate polynomial arithmetic over Q and over k = Q(X), with the exact
// root machinery used by the plane-geometry computations: square roots in k,
// rational root extraction via integer divisors, and k-rational root finding
// through bivariate resultant elimination (components of p(x + yX) = 0).

#include "wedge/qfield.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace wedge {

inline bool coeff_is_zero(const Rat& r) { return sgn(r) == 0; }
inline bool coeff_is_zero(const QuadElt& x) { return x.is_zero(); }

/// Dense univariate polynomial with field coefficients, index = degree.
template <typename T>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }
    static Poly constant(T v) { return Poly(std::vector<T>{std::move(v)}); }

    const std::vector<T>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const T& operator[](size_t i) const {
        static const T zero{};
        return i < c_.size() ? c_[i] : zero;
    }
    const T& lead() const {
        if (is_zero()) throw std::domain_error("Poly::lead: zero polynomial");
        return c_.back();
    }

    bool operator==(const Poly& o) const { return c_ == o.c_; }

    Poly operator+(const Poly& o) const {
        std::vector<T> r(std::max(c_.size(), o.c_.size()), T{});
        for (size_t i = 0; i < c_.size(); ++i) r[i] = r[i] + c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
        return Poly(std::move(r));
    }
    Poly operator-() const {
        std::vector<T> r = c_;
        for (auto& v : r) v = -v;
        return Poly(std::move(r));
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<T> r(c_.size() + o.c_.size() - 1, T{});
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
        return Poly(std::move(r));
    }
    Poly operator*(const T& s) const {
        std::vector<T> r = c_;
        for (auto& v : r) v = v * s;
        return Poly(std::move(r));
    }

    T eval(const T& x) const {
        T acc{};
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<T> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * T(static_cast<long>(i));
        return Poly(std::move(r));
    }

    /// Euclidean division; requires invertible leading coefficient (field).
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw std::domain_error("Poly::divmod: division by zero");
        std::vector<T> rem = c_;
        const int dd = d.degree();
        if (degree() < dd) return {Poly(), *this};
        std::vector<T> quo(degree() - dd + 1, T{});
        for (int i = degree(); i >= dd; --i) {
            if (coeff_is_zero(rem[i])) continue;
            T q = rem[i] / d.c_[dd];
            quo[i - dd] = q;
            for (int j = 0; j <= dd; ++j) rem[i - dd + j] = rem[i - dd + j] - q * d.c_[j];
        }
        return {Poly(std::move(quo)), Poly(std::move(rem))};
    }

    Poly monic() const {
        if (is_zero()) return *this;
        T inv = T(1) / lead();
        return *this * inv;
    }

private:
    void trim() {
        while (!c_.empty() && coeff_is_zero(c_.back())) c_.pop_back();
    }
    std::vector<T> c_;
};

using QPoly = Poly<QuadElt>;
using RatPoly = Poly<Rat>;

template <typename T>
Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = b;
        b = r;
    }
    return a.monic();
}

/// Squarefree decomposition by the gcd-with-derivative chain (characteristic 0).
template <typename T>
std::vector<std::pair<Poly<T>, int>> squarefree_decomposition(const Poly<T>& p) {
    std::vector<std::pair<Poly<T>, int>> out;
    if (p.degree() <= 0) return out;
    Poly<T> a = p.monic();
    Poly<T> g = poly_gcd(a, a.derivative());
    Poly<T> w = a.divmod(g).first; // product of distinct factors
    int mult = 1;
    while (w.degree() > 0) {
        Poly<T> y = poly_gcd(w, g);
        Poly<T> factor = w.divmod(y).first;
        if (factor.degree() > 0) out.emplace_back(factor.monic(), mult);
        w = y;
        g = g.divmod(y).first;
        ++mult;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Integer factorization (trial division + Pollard-Brent) and rational roots.

namespace detail {

inline Int mulmod(const Int& a, const Int& b, const Int& m) {
    Int r = a * b;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int pollard_brent(const Int& n, unsigned long seed) {
    Int x(seed % 1000 + 2), c(seed % 7 + 1), y = x, d(1);
    Int q(1), ys, diff;
    unsigned long r = 1, m = 64;
    while (d == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
        unsigned long k = 0;
        while (k < r && d == 1) {
            ys = y;
            const unsigned long lim = std::min(m, r - k);
            for (unsigned long i = 0; i < lim; ++i) {
                y = (mulmod(y, y, n) + c) % n;
                diff = x - y;
                mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
                q = mulmod(q, diff, n);
            }
            mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += lim;
        }
        r *= 2;
    }
    if (d == n) {
        // Backtrack one step at a time.
        do {
            ys = (mulmod(ys, ys, n) + c) % n;
            diff = x - ys;
            mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (d == 1);
    }
    return d;
}

inline void factor_into(Int n, std::map<Int, int>& out) {
    if (n < 0) n = -n;
    if (n <= 1) return;
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out[Int(static_cast<long>(p))] += 1;
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    unsigned long p = 17;
    while (n > 1 && p < 1000000ul && Int(p) * Int(p) <= n) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out[Int(static_cast<long>(p))] += 1;
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        } else {
            p += 2;
        }
    }
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
        out[n] += 1;
        return;
    }
    unsigned long seed = 1;
    Int d = pollard_brent(n, seed);
    while ((d == 1 || d == n) && seed < 64) d = pollard_brent(n, ++seed);
    if (d == 1 || d == n) throw std::runtime_error("factor_into: factorization failed");
    factor_into(d, out);
    factor_into(n / d, out);
}

inline std::vector<Int> divisors(const Int& n) {
    std::map<Int, int> f;
    factor_into(n, f);
    std::vector<Int> divs{Int(1)};
    for (const auto& [p, e] : f) {
        const size_t base = divs.size();
        Int pk(1);
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
        if (divs.size() > 2000000) throw std::runtime_error("divisors: too many divisors");
    }
    return divs;
}

} // namespace detail

/// All rational roots of a rational polynomial, with multiplicities.
inline std::vector<std::pair<Rat, int>> rational_roots(const RatPoly& p) {
    std::vector<std::pair<Rat, int>> out;
    if (p.degree() <= 0) return out;

    // Clear denominators to a primitive integer polynomial.
    Int lcm(1);
    for (const Rat& c : p.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Int> ic;
    ic.reserve(p.coeffs().size());
    for (const Rat& c : p.coeffs()) {
        Rat v = c * Rat(lcm);
        ic.push_back(v.get_num());
    }

    RatPoly work = p;
    // Root at zero.
    int zmult = 0;
    {
        size_t k = 0;
        while (k < ic.size() && ic[k] == 0) ++k;
        zmult = static_cast<int>(k);
    }
    if (zmult > 0) out.emplace_back(Rat(0), zmult);

    const Int a0 = ic[zmult];
    const Int an = ic.back();
    auto mult_of = [&](const Rat& r) {
        int m = 0;
        RatPoly q = work;
        const RatPoly lin(std::vector<Rat>{-r, Rat(1)});
        for (;;) {
            auto [quo, rem] = q.divmod(lin);
            if (!rem.is_zero()) break;
            ++m;
            q = quo;
        }
        return m;
    };
    for (const Int& num : detail::divisors(a0)) {
        for (const Int& den : detail::divisors(an)) {
            for (int s : {1, -1}) {
                Rat cand(s * num, den);
                cand.canonicalize();
                bool seen = false;
                for (auto& [r, m] : out)
                    if (r == cand) { seen = true; break; }
                if (seen) continue;
                if (coeff_is_zero(p.eval(cand))) out.emplace_back(cand, mult_of(cand));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact square roots.

/// Square root of a nonnegative rational, if it is a perfect square.
inline std::optional<Rat> sqrt_rat(const Rat& r) {
    if (sgn(r) < 0) return std::nullopt;
    const Int& num = r.get_num();
    const Int& den = r.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    Int sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    return Rat(sn, sd);
}

/// Square root in k = Q(X), if one exists. Every returned value satisfies
/// result^2 == d exactly; candidates are derived from trace/norm data and
/// verified by substitution.
inline std::optional<QuadElt> sqrt_in_k(const QuadElt& d) {
    if (d.is_zero()) return QuadElt::zero();
    auto check = [&](const QuadElt& cand) -> std::optional<QuadElt> {
        if (cand * cand == d) return cand;
        return std::nullopt;
    };
    const auto n2 = sqrt_rat(d.norm());
    if (!n2) return std::nullopt;
    for (int sign : {1, -1}) {
        const Rat eps = *n2 * sign;
        const auto s = sqrt_rat(d.trace() + 2 * eps);
        if (!s) continue;
        if (sgn(*s) != 0) {
            // delta = (d + eps) / tr(delta)
            const QuadElt cand = (d + QuadElt::from_rat(eps)) * (Rat(1) / *s);
            if (auto r = check(cand)) return r;
        } else {
            // Trace-zero square root: delta = c (1 - 2X) with 5 c^2 = d.
            if (sgn(d.b()) == 0) {
                if (auto c = sqrt_rat(d.a() / 5)) {
                    if (auto r = check(QuadElt(*c, -2 * *c))) return r;
                }
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Roots in k via elimination.

namespace detail {

/// Sylvester resultant of two rational polynomials (by their actual degrees),
/// computed as an exact determinant.
inline Rat resultant_rat(const RatPoly& f, const RatPoly& g) {
    const int m = f.degree(), n = g.degree();
    if (m < 0 || n < 0) return Rat(0);
    if (m == 0) {
        Rat r(1);
        for (int i = 0; i < n; ++i) r *= f[0];
        return r;
    }
    if (n == 0) {
        Rat r(1);
        for (int i = 0; i < m; ++i) r *= g[0];
        return r;
    }
    const int size = m + n;
    std::vector<std::vector<Rat>> a(size, std::vector<Rat>(size, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) a[i][i + j] = f[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) a[n + i][i + j] = g[n - j];
    // Gaussian elimination with exact rational arithmetic.
    Rat det(1);
    for (int col = 0; col < size; ++col) {
        int piv = -1;
        for (int r = col; r < size; ++r)
            if (sgn(a[r][col]) != 0) { piv = r; break; }
        if (piv < 0) return Rat(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        const Rat inv = Rat(1) / a[col][col];
        for (int r = col + 1; r < size; ++r) {
            if (sgn(a[r][col]) == 0) continue;
            const Rat factor = a[r][col] * inv;
            for (int c = col; c < size; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    return det;
}

/// Lagrange interpolation through (xs[i], ys[i]).
inline RatPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    RatPoly acc;
    for (size_t i = 0; i < xs.size(); ++i) {
        RatPoly term = RatPoly::constant(Rat(1));
        Rat denom(1);
        for (size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            term = term * RatPoly(std::vector<Rat>{-xs[j], Rat(1)});
            denom *= xs[i] - xs[j];
        }
        acc = acc + term * (ys[i] / denom);
    }
    return acc;
}

} // namespace detail

struct KRoots {
    std::vector<std::pair<QuadElt, int>> roots;      // k-rational roots, multiplicity
    std::vector<std::pair<QPoly, int>> irreducible;  // k-irreducible factors of degree >= 2
};

namespace detail {

/// All roots in k of a squarefree polynomial over k, via the component system
/// p(x + yX) = A(x,y) + B(x,y) X = 0 and Res_y(A, B).
inline std::vector<QuadElt> k_roots_squarefree(const QPoly& p) {
    std::vector<QuadElt> out;
    const int d = p.degree();
    if (d <= 0) return out;
    if (d == 1) {
        out.push_back(-(p[0] / p[1]));
        return out;
    }
    if (d == 2) {
        const QuadElt A = p[2], B = p[1], C = p[0];
        const QuadElt disc = B * B - QuadElt(4) * A * C;
        if (auto s = sqrt_in_k(disc)) {
            const QuadElt twoa = QuadElt(2) * A;
            out.push_back((-B + *s) / twoa);
            if (!s->is_zero()) out.push_back((-B - *s) / twoa);
        }
        return out;
    }

    // Components of p(x + yX) as polynomials in y with RatPoly-in-x coefficients.
    // Build by Horner: acc = acc * (x + yX) + c_i with acc a vector of
    // bivariate components.
    struct Biv {
        // coeff[i][j] = coefficient of x^i y^j
        std::vector<std::vector<Rat>> c;
        int dx, dy;
    };
    const int n = d;
    auto make = [&](int dx, int dy) {
        Biv b;
        b.dx = dx;
        b.dy = dy;
        b.c.assign(dx + 1, std::vector<Rat>(dy + 1, Rat(0)));
        return b;
    };
    Biv A = make(n, n), B = make(n, n);
    // Horner over t = x + yX: (A + BX)*(x + yX) = (A x + B y) + (A y + B x + B y) X.
    for (int i = d; i >= 0; --i) {
        Biv A2 = make(n, n), B2 = make(n, n);
        for (int ix = 0; ix <= n; ++ix)
            for (int iy = 0; iy <= n; ++iy) {
                const Rat& av = A.c[ix][iy];
                const Rat& bv = B.c[ix][iy];
                if (sgn(av) != 0) {
                    if (ix + 1 <= n) A2.c[ix + 1][iy] += av;        // A * x
                    if (iy + 1 <= n) B2.c[ix][iy + 1] += av;        // A * yX
                }
                if (sgn(bv) != 0) {
                    if (iy + 1 <= n) A2.c[ix][iy + 1] += bv;        // B * y (X^2 -> 1 part)
                    if (ix + 1 <= n) B2.c[ix + 1][iy] += bv;        // B * x
                    if (iy + 1 <= n) B2.c[ix][iy + 1] += bv;        // B * y (X^2 -> X part)
                }
            }
        A2.c[0][0] += p[i].a();
        B2.c[0][0] += p[i].b();
        A = std::move(A2);
        B = std::move(B2);
    }

    auto ydeg = [&](const Biv& v) {
        for (int iy = n; iy >= 0; --iy)
            for (int ix = 0; ix <= n; ++ix)
                if (sgn(v.c[ix][iy]) != 0) return iy;
        return -1;
    };
    const int dyA = ydeg(A), dyB = ydeg(B);
    if (dyA < 0 || dyB < 0) throw std::logic_error("k_roots: degenerate component system");

    // R(x) = Res_y(A, B) by evaluation/interpolation.
    auto eval_at_x = [&](const Biv& v, const Rat& x0, int dy) {
        std::vector<Rat> cs(dy + 1, Rat(0));
        for (int iy = 0; iy <= dy; ++iy) {
            Rat acc(0);
            for (int ix = n; ix >= 0; --ix) acc = acc * x0 + v.c[ix][iy];
            cs[iy] = acc;
        }
        return RatPoly(std::move(cs));
    };
    const int bound = dyA * n + dyB * n + 1;
    std::vector<Rat> xs, ys;
    int x0 = 0;
    while (static_cast<int>(xs.size()) < bound + 1) {
        const Rat xv(x0);
        x0 = x0 <= 0 ? -x0 + 1 : -x0;
        const RatPoly fa = eval_at_x(A, xv, dyA);
        const RatPoly fb = eval_at_x(B, xv, dyB);
        // Keep the Sylvester shape fixed: pad with declared degrees by using
        // resultant of the evaluated polynomials only when degrees match the
        // declared ones; otherwise compute det of the declared-degree matrix.
        const int m = dyA, nn = dyB;
        const int size = m + nn;
        std::vector<std::vector<Rat>> mat(size, std::vector<Rat>(size, Rat(0)));
        for (int i = 0; i < nn; ++i)
            for (int j = 0; j <= m; ++j) mat[i][i + j] = fa[m - j];
        for (int i = 0; i < m; ++i)
            for (int j = 0; j <= nn; ++j) mat[nn + i][i + j] = fb[nn - j];
        Rat det(1);
        bool zero = false;
        for (int col = 0; col < size && !zero; ++col) {
            int piv = -1;
            for (int r = col; r < size; ++r)
                if (sgn(mat[r][col]) != 0) { piv = r; break; }
            if (piv < 0) { zero = true; break; }
            if (piv != col) {
                std::swap(mat[piv], mat[col]);
                det = -det;
            }
            det *= mat[col][col];
            const Rat inv = Rat(1) / mat[col][col];
            for (int r = col + 1; r < size; ++r) {
                if (sgn(mat[r][col]) == 0) continue;
                const Rat factor = mat[r][col] * inv;
                for (int c = col; c < size; ++c) mat[r][c] -= factor * mat[col][c];
            }
        }
        xs.push_back(xv);
        ys.push_back(zero ? Rat(0) : det);
    }
    const RatPoly R = detail::interpolate(xs, ys);
    if (R.is_zero()) throw std::logic_error("k_roots: vanishing resultant for squarefree input");

    for (const auto& [xr, mult] : rational_roots(R)) {
        (void)mult;
        // Candidate y values: rational roots of the y-polynomial B(xr, y)
        // (or A if B degenerates), verified against p itself.
        RatPoly fb = eval_at_x(B, xr, dyB);
        if (fb.is_zero() || fb.degree() < 1) fb = eval_at_x(A, xr, dyA);
        std::vector<Rat> cands;
        if (fb.degree() >= 1)
            for (const auto& [yr, m2] : rational_roots(fb)) cands.push_back(yr);
        cands.push_back(Rat(0));
        for (const Rat& yr : cands) {
            const QuadElt cand(xr, yr);
            if (!coeff_is_zero(p.eval(cand))) continue;
            bool seen = false;
            for (const auto& r : out)
                if (r == cand) { seen = true; break; }
            if (!seen) out.push_back(cand);
        }
    }
    return out;
}

} // namespace detail

/// Complete factorization data of p over k: all k-rational roots with
/// multiplicity plus the k-irreducible factors of degree >= 2.
inline KRoots k_roots(const QPoly& p) {
    KRoots out;
    for (const auto& [factor, mult] : squarefree_decomposition(p)) {
        QPoly rest = factor;
        for (const QuadElt& r : detail::k_roots_squarefree(factor)) {
            out.roots.emplace_back(r, mult);
            rest = rest.divmod(QPoly(std::vector<QuadElt>{-r, QuadElt::one()})).first;
        }
        if (rest.degree() >= 1) out.irreducible.emplace_back(rest, mult);
    }
    return out;
}

} // namespace wedge
