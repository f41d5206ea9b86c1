#pragma once

// Exact projective geometry over k on the Klein plane: the icosahedron and
// dodecahedron point data, the fifteen lines, the S3 action, ternary cubics
// with their restrictions and singularity test, and linear condition solving
// on the anti-invariant cubic family.

#include "wedge/poly.hpp"
#include "wedge/qfield.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace wedge::plane {

// ---------------------------------------------------------------------------
// Points, lines, transforms.

struct ProjPoint {
    std::array<QuadElt, 3> z;

    ProjPoint() = default;
    ProjPoint(QuadElt a, QuadElt b, QuadElt c) : z{std::move(a), std::move(b), std::move(c)} { canonicalize(); }

    void canonicalize() {
        for (auto& v : z)
            if (!v.is_zero()) {
                const QuadElt inv = v.inv();
                for (auto& w : z) w = w * inv;
                return;
            }
        throw std::domain_error("ProjPoint: zero vector");
    }

    bool operator==(const ProjPoint& o) const { return z == o.z; }
    bool operator<(const ProjPoint& o) const {
        for (int i = 0; i < 3; ++i) {
            const QuadElt& a = z[static_cast<size_t>(i)];
            const QuadElt& b = o.z[static_cast<size_t>(i)];
            if (a.a() != b.a()) return a.a() < b.a();
            if (a.b() != b.b()) return a.b() < b.b();
        }
        return false;
    }
    std::string str() const { return "[" + z[0].str() + " : " + z[1].str() + " : " + z[2].str() + "]"; }
};

inline QuadElt det3(const std::array<QuadElt, 3>& r0, const std::array<QuadElt, 3>& r1,
                    const std::array<QuadElt, 3>& r2) {
    return r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0]) +
           r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]);
}

struct ProjLine {
    int i = 0, j = 0;      // 1-based dodecahedral vertex indices
    ProjPoint pi, pj;      // the parametrization r * e_i + s * e_j

    std::string id() const { return "l_" + std::to_string(i) + "_" + std::to_string(j); }

    std::array<QuadElt, 3> coeffs() const {
        // Cross product of the two defining points.
        const auto& a = pi.z;
        const auto& b = pj.z;
        return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    }
};

inline bool on_line(const ProjPoint& p, const ProjLine& l) {
    return det3(p.z, l.pi.z, l.pj.z).is_zero();
}

/// Parameter [r : s] of a point on the line r e_i + s e_j.
inline std::pair<QuadElt, QuadElt> line_parameter(const ProjLine& l, const ProjPoint& p) {
    if (!on_line(p, l)) throw std::domain_error("line_parameter: point not on line");
    // Solve r * pi + s * pj = lambda * p on two independent coordinates.
    for (int c0 = 0; c0 < 3; ++c0)
        for (int c1 = c0 + 1; c1 < 3; ++c1) {
            const QuadElt det = l.pi.z[static_cast<size_t>(c0)] * l.pj.z[static_cast<size_t>(c1)] -
                                l.pi.z[static_cast<size_t>(c1)] * l.pj.z[static_cast<size_t>(c0)];
            if (det.is_zero()) continue;
            const QuadElt r = (p.z[static_cast<size_t>(c0)] * l.pj.z[static_cast<size_t>(c1)] -
                               p.z[static_cast<size_t>(c1)] * l.pj.z[static_cast<size_t>(c0)]) /
                              det;
            const QuadElt s = (l.pi.z[static_cast<size_t>(c0)] * p.z[static_cast<size_t>(c1)] -
                               l.pi.z[static_cast<size_t>(c1)] * p.z[static_cast<size_t>(c0)]) /
                              det;
            return {r, s};
        }
    throw std::logic_error("line_parameter: degenerate line");
}

/// Exact intersection of two distinct lines.
inline ProjPoint line_intersection(const ProjLine& l1, const ProjLine& l2) {
    const auto a = l1.coeffs(), b = l2.coeffs();
    QuadElt x = a[1] * b[2] - a[2] * b[1];
    QuadElt y = a[2] * b[0] - a[0] * b[2];
    QuadElt z = a[0] * b[1] - a[1] * b[0];
    if (x.is_zero() && y.is_zero() && z.is_zero())
        throw std::domain_error("line_intersection: identical lines");
    return ProjPoint(std::move(x), std::move(y), std::move(z));
}

struct ProjTransform {
    std::array<std::array<QuadElt, 3>, 3> m;

    ProjPoint apply(const ProjPoint& p) const {
        std::array<QuadElt, 3> out{QuadElt::zero(), QuadElt::zero(), QuadElt::zero()};
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                out[static_cast<size_t>(r)] += m[static_cast<size_t>(r)][static_cast<size_t>(c)] * p.z[static_cast<size_t>(c)];
        return ProjPoint(out[0], out[1], out[2]);
    }

    ProjTransform operator*(const ProjTransform& o) const {
        ProjTransform out;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                QuadElt acc;
                for (int k = 0; k < 3; ++k)
                    acc += m[static_cast<size_t>(r)][static_cast<size_t>(k)] * o.m[static_cast<size_t>(k)][static_cast<size_t>(c)];
                out.m[static_cast<size_t>(r)][static_cast<size_t>(c)] = acc;
            }
        return out;
    }

    bool projectively_identity() const {
        const QuadElt& d = m[0][0];
        if (d.is_zero()) return false;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                const QuadElt expect = r == c ? d : QuadElt::zero();
                if (!(m[static_cast<size_t>(r)][static_cast<size_t>(c)] == expect)) return false;
            }
        return true;
    }
};

// ---------------------------------------------------------------------------
// Homogeneous ternary polynomials (dense, fixed total degree).

class TPoly {
public:
    explicit TPoly(int degree = 0) : d_(degree), c_(size_t((degree + 1) * (degree + 2) / 2)) {}

    int degree() const { return d_; }

    // Index by exponents of (z1, z2); z3 exponent is d - i - j.
    QuadElt& at(int i, int j) { return c_[index(i, j)]; }
    const QuadElt& at(int i, int j) const { return c_[index(i, j)]; }

    bool is_zero() const {
        for (const auto& v : c_)
            if (!v.is_zero()) return false;
        return true;
    }

    bool operator==(const TPoly& o) const { return d_ == o.d_ && c_ == o.c_; }

    TPoly operator+(const TPoly& o) const {
        if (d_ != o.d_) throw std::domain_error("TPoly: degree mismatch");
        TPoly out(d_);
        for (size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] + o.c_[i];
        return out;
    }
    TPoly operator-() const {
        TPoly out(d_);
        for (size_t i = 0; i < c_.size(); ++i) out.c_[i] = -c_[i];
        return out;
    }
    TPoly operator-(const TPoly& o) const { return *this + (-o); }
    TPoly operator*(const QuadElt& s) const {
        TPoly out(d_);
        for (size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] * s;
        return out;
    }
    TPoly operator*(const TPoly& o) const {
        TPoly out(d_ + o.d_);
        for (int i1 = 0; i1 <= d_; ++i1)
            for (int j1 = 0; i1 + j1 <= d_; ++j1) {
                if (at(i1, j1).is_zero()) continue;
                for (int i2 = 0; i2 <= o.d_; ++i2)
                    for (int j2 = 0; i2 + j2 <= o.d_; ++j2)
                        out.at(i1 + i2, j1 + j2) += at(i1, j1) * o.at(i2, j2);
            }
        return out;
    }

    QuadElt eval(const ProjPoint& p) const { return eval(p.z); }
    QuadElt eval(const std::array<QuadElt, 3>& z) const {
        QuadElt acc;
        for (int i = 0; i <= d_; ++i)
            for (int j = 0; i + j <= d_; ++j) {
                if (at(i, j).is_zero()) continue;
                acc += at(i, j) * z[0].pow(i) * z[1].pow(j) * z[2].pow(d_ - i - j);
            }
        return acc;
    }

    /// Partial derivative with respect to variable v (0, 1 or 2).
    TPoly derivative(int v) const {
        if (d_ == 0) return TPoly(0);
        TPoly out(d_ - 1);
        for (int i = 0; i <= d_; ++i)
            for (int j = 0; i + j <= d_; ++j) {
                const QuadElt& cv = at(i, j);
                if (cv.is_zero()) continue;
                const int l = d_ - i - j;
                if (v == 0 && i > 0) out.at(i - 1, j) += cv * Rat(i);
                if (v == 1 && j > 0) out.at(i, j - 1) += cv * Rat(j);
                if (v == 2 && l > 0) out.at(i, j) += cv * Rat(l);
            }
        return out;
    }

    /// Composition F(g z): coefficients of the pulled-back form.
    TPoly compose(const ProjTransform& g) const {
        std::array<TPoly, 3> linear{TPoly(1), TPoly(1), TPoly(1)};
        for (int r = 0; r < 3; ++r) {
            linear[static_cast<size_t>(r)].at(1, 0) = g.m[static_cast<size_t>(r)][0];
            linear[static_cast<size_t>(r)].at(0, 1) = g.m[static_cast<size_t>(r)][1];
            linear[static_cast<size_t>(r)].at(0, 0) = g.m[static_cast<size_t>(r)][2];
        }
        TPoly out(d_);
        for (int i = 0; i <= d_; ++i)
            for (int j = 0; i + j <= d_; ++j) {
                if (at(i, j).is_zero()) continue;
                TPoly term(0);
                term.at(0, 0) = at(i, j);
                for (int p = 0; p < i; ++p) term = term * linear[0];
                for (int p = 0; p < j; ++p) term = term * linear[1];
                for (int p = 0; p < d_ - i - j; ++p) term = term * linear[2];
                out = out + term;
            }
        return out;
    }

    std::string str() const {
        std::string out;
        for (int i = d_; i >= 0; --i)
            for (int j = d_ - i; j >= 0; --j) {
                const QuadElt& cv = at(i, j);
                if (cv.is_zero()) continue;
                if (!out.empty()) out += " + ";
                out += "(" + cv.str() + ")";
                const int l = d_ - i - j;
                if (i) out += " z1" + (i > 1 ? "^" + std::to_string(i) : "");
                if (j) out += " z2" + (j > 1 ? "^" + std::to_string(j) : "");
                if (l) out += " z3" + (l > 1 ? "^" + std::to_string(l) : "");
            }
        return out.empty() ? "0" : out;
    }

private:
    size_t index(int i, int j) const {
        if (i < 0 || j < 0 || i + j > d_) throw std::out_of_range("TPoly::index");
        // Row-major over i, then j.
        size_t off = 0;
        for (int ii = 0; ii < i; ++ii) off += static_cast<size_t>(d_ - ii + 1);
        return off + static_cast<size_t>(j);
    }

    int d_;
    std::vector<QuadElt> c_;
};

using Cubic = TPoly;

/// Proportionality over k (projective equality of forms).
inline bool proportional(const TPoly& f, const TPoly& g) {
    if (f.degree() != g.degree()) return false;
    QuadElt fv, gv;
    for (int i = 0; i <= f.degree() && fv.is_zero(); ++i)
        for (int j = 0; i + j <= f.degree(); ++j)
            if (!f.at(i, j).is_zero() || !g.at(i, j).is_zero()) {
                fv = f.at(i, j);
                gv = g.at(i, j);
                if (fv.is_zero() != gv.is_zero()) return false;
                if (!fv.is_zero()) break;
            }
    if (fv.is_zero()) return g.is_zero();
    for (int i = 0; i <= f.degree(); ++i)
        for (int j = 0; i + j <= f.degree(); ++j)
            if (!(f.at(i, j) * gv == g.at(i, j) * fv)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Binary homogeneous forms in (r, s), coefficient of r^i s^(d-i) at index i.

struct BForm {
    std::vector<QuadElt> c; // size d + 1

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const {
        for (const auto& v : c)
            if (!v.is_zero()) return false;
        return true;
    }
    QuadElt eval(const QuadElt& r, const QuadElt& s) const {
        QuadElt acc;
        const int d = degree();
        for (int i = 0; i <= d; ++i) acc += c[static_cast<size_t>(i)] * r.pow(i) * s.pow(d - i);
        return acc;
    }
    BForm dr() const { // d/dr
        BForm out;
        const int d = degree();
        out.c.assign(static_cast<size_t>(d), QuadElt::zero());
        for (int i = 1; i <= d; ++i) out.c[static_cast<size_t>(i - 1)] = c[static_cast<size_t>(i)] * Rat(i);
        return out;
    }
    BForm ds() const { // d/ds
        BForm out;
        const int d = degree();
        out.c.assign(static_cast<size_t>(d), QuadElt::zero());
        for (int i = 0; i < d; ++i) out.c[static_cast<size_t>(i)] = c[static_cast<size_t>(i)] * Rat(d - i);
        return out;
    }
    /// Dehomogenization in t = r/s.
    QPoly dehomogenize() const { return QPoly(c); }
};

/// Restriction of a form to a line: B(r, s) = F(r e_i + s e_j).
inline BForm restrict_to_line(const TPoly& f, const ProjLine& l) {
    const int d = f.degree();
    // (r pi_c + s pj_c) as binary linear forms, multiplied out per monomial.
    auto lin = [&](int c) {
        BForm b;
        b.c = {l.pj.z[static_cast<size_t>(c)], l.pi.z[static_cast<size_t>(c)]}; // s-coeff, r-coeff
        return b;
    };
    auto mul = [](const BForm& x, const BForm& y) {
        BForm out;
        out.c.assign(x.c.size() + y.c.size() - 1, QuadElt::zero());
        for (size_t i = 0; i < x.c.size(); ++i)
            for (size_t j = 0; j < y.c.size(); ++j) out.c[i + j] += x.c[i] * y.c[j];
        return out;
    };
    BForm acc;
    acc.c.assign(static_cast<size_t>(d) + 1, QuadElt::zero());
    for (int i = 0; i <= d; ++i)
        for (int j = 0; i + j <= d; ++j) {
            if (f.at(i, j).is_zero()) continue;
            BForm term;
            term.c = {f.at(i, j)};
            for (int p = 0; p < i; ++p) term = mul(term, lin(0));
            for (int p = 0; p < j; ++p) term = mul(term, lin(1));
            for (int p = 0; p < d - i - j; ++p) term = mul(term, lin(2));
            for (size_t idx = 0; idx < term.c.size(); ++idx) acc.c[idx] += term.c[idx];
        }
    return acc;
}

/// Discriminant of a binary cubic c3 r^3 + c2 r^2 s + c1 r s^2 + c0 s^3.
inline QuadElt binary_cubic_discriminant(const BForm& b) {
    if (b.degree() != 3) throw std::domain_error("binary_cubic_discriminant: need degree 3");
    const QuadElt a = b.c[3], b2 = b.c[2], c = b.c[1], d = b.c[0];
    return QuadElt(18) * a * b2 * c * d - QuadElt(4) * b2.pow(3) * d + b2 * b2 * c * c -
           QuadElt(4) * a * c.pow(3) - QuadElt(27) * a * a * d * d;
}

/// Projective roots of a binary form over k, with multiplicity, plus the
/// degrees of the k-irreducible leftover factors.
struct BinaryRoots {
    std::vector<std::pair<std::pair<QuadElt, QuadElt>, int>> roots; // ([r : s], mult)
    std::vector<std::pair<int, int>> irreducible;                  // (degree, mult)
};

inline BinaryRoots binary_roots(const BForm& b) {
    if (b.is_zero()) throw std::domain_error("binary_roots: zero form");
    BinaryRoots out;
    const int d = b.degree();
    const QPoly p = b.dehomogenize();
    const int inf_mult = d - p.degree(); // root [1 : 0]
    if (inf_mult > 0) out.roots.push_back({{QuadElt::one(), QuadElt::zero()}, inf_mult});
    const KRoots kr = k_roots(p);
    for (const auto& [root, mult] : kr.roots) out.roots.push_back({{root, QuadElt::one()}, mult});
    for (const auto& [factor, mult] : kr.irreducible) out.irreducible.push_back({factor.degree(), mult});
    return out;
}

/// Sylvester resultant of two binary forms with their declared degrees;
/// zero iff they share a projective root (over the algebraic closure).
inline QuadElt binary_resultant(const BForm& f, const BForm& g) {
    const int m = f.degree(), n = g.degree();
    if (m <= 0 || n <= 0) throw std::domain_error("binary_resultant: need positive degrees");
    const int size = m + n;
    std::vector<std::vector<QuadElt>> a(static_cast<size_t>(size),
                                        std::vector<QuadElt>(static_cast<size_t>(size)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(i + j)] = f.c[static_cast<size_t>(m - j)];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) a[static_cast<size_t>(n + i)][static_cast<size_t>(i + j)] = g.c[static_cast<size_t>(n - j)];
    // Gaussian elimination over k.
    QuadElt det = QuadElt::one();
    for (int col = 0; col < size; ++col) {
        int piv = -1;
        for (int r = col; r < size; ++r)
            if (!a[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return QuadElt::zero();
        if (piv != col) {
            std::swap(a[static_cast<size_t>(piv)], a[static_cast<size_t>(col)]);
            det = -det;
        }
        const QuadElt& pivot = a[static_cast<size_t>(col)][static_cast<size_t>(col)];
        det = det * pivot;
        const QuadElt inv = pivot.inv();
        for (int r = col + 1; r < size; ++r) {
            if (a[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) continue;
            const QuadElt factor = a[static_cast<size_t>(r)][static_cast<size_t>(col)] * inv;
            for (int c = col; c < size; ++c)
                a[static_cast<size_t>(r)][static_cast<size_t>(c)] -= factor * a[static_cast<size_t>(col)][static_cast<size_t>(c)];
        }
    }
    return det;
}

// ---------------------------------------------------------------------------
// Linear algebra over k.

/// Kernel basis of a row-listed linear system (rows x ncols).
inline std::vector<std::vector<QuadElt>> kernel_basis(std::vector<std::vector<QuadElt>> rows, size_t ncols) {
    // Row reduce.
    size_t rank = 0;
    std::vector<size_t> pivot_col;
    for (size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        const QuadElt inv = rows[rank][col].inv();
        for (size_t c = col; c < ncols; ++c) rows[rank][c] = rows[rank][c] * inv;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col].is_zero()) continue;
            const QuadElt f = rows[r][col];
            for (size_t c = col; c < ncols; ++c) rows[r][c] -= f * rows[rank][c];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<QuadElt>> basis;
    for (size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<QuadElt> v(ncols);
        v[free] = QuadElt::one();
        for (size_t r = 0; r < rank; ++r) v[pivot_col[r]] = -rows[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace wedge::plane
