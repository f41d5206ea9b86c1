#pragma once

// Arithmetic in a quadratic extension k(sqrt(delta)) of k, used when a case
// solution is a Galois-conjugate pair outside k. Elements are x + y s with
// s^2 = delta; rational scalars carry no delta tag and unify with either.

#include "wedge/poly.hpp"

namespace wedge {

class QuadExt {
public:
    QuadExt() : x_(0L), y_(0L), has_delta_(false) {}
    explicit QuadExt(long v) : x_(v), y_(0L), has_delta_(false) {}
    QuadExt(QuadElt x, QuadElt y, QuadElt delta)
        : x_(std::move(x)), y_(std::move(y)), delta_(std::move(delta)), has_delta_(true) {}
    static QuadExt scalar(QuadElt v) { return QuadExt(std::move(v), QuadElt::zero(), QuadElt::zero(), false); }

    const QuadElt& x() const { return x_; }
    const QuadElt& y() const { return y_; }

    bool is_zero() const { return x_.is_zero() && y_.is_zero(); }

    bool operator==(const QuadExt& o) const { return x_ == o.x_ && y_ == o.y_; }

    QuadExt operator+(const QuadExt& o) const {
        return QuadExt(x_ + o.x_, y_ + o.y_, unified(o), has_delta_ || o.has_delta_);
    }
    QuadExt operator-() const { return QuadExt(-x_, -y_, delta_, has_delta_); }
    QuadExt operator-(const QuadExt& o) const { return *this + (-o); }
    QuadExt operator*(const QuadExt& o) const {
        const QuadElt d = unified(o);
        return QuadExt(x_ * o.x_ + y_ * o.y_ * d, x_ * o.y_ + o.x_ * y_, d, has_delta_ || o.has_delta_);
    }
    QuadExt inv() const {
        if (is_zero()) throw std::domain_error("QuadExt::inv: zero");
        // Norm x^2 - delta y^2 is nonzero when delta is a non-square.
        const QuadElt n = x_ * x_ - delta_ * y_ * y_;
        if (n.is_zero()) throw std::domain_error("QuadExt::inv: delta is a square in k");
        const QuadElt ninv = n.inv();
        return QuadExt(x_ * ninv, -(y_ * ninv), delta_, has_delta_);
    }
    QuadExt operator/(const QuadExt& o) const { return *this * o.inv(); }

private:
    QuadExt(QuadElt x, QuadElt y, QuadElt delta, bool has)
        : x_(std::move(x)), y_(std::move(y)), delta_(std::move(delta)), has_delta_(has) {}
    QuadElt unified(const QuadExt& o) const {
        if (has_delta_ && o.has_delta_ && !(delta_ == o.delta_))
            throw std::domain_error("QuadExt: mixed extensions");
        return has_delta_ ? delta_ : o.delta_;
    }

    QuadElt x_, y_, delta_;
    bool has_delta_;
};

inline bool coeff_is_zero(const QuadExt& v) { return v.is_zero(); }

using ExtPoly = Poly<QuadExt>;

inline ExtPoly lift_to_ext(const QPoly& p, const QuadElt& /*delta*/) {
    std::vector<QuadExt> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) c.push_back(QuadExt::scalar(v));
    return ExtPoly(std::move(c));
}

} // namespace wedge
