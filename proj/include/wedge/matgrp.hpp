#pragma once

// Exact 2x2 matrices over O, the named SL2(O) generators, word evaluation,
// and verification of the SL/PSL/upper-triangular presentations together with
// the monodromy generator identities.

#include "wedge/qfield.hpp"
#include "wedge/words.hpp"

#include <array>
#include <string>
#include <vector>

namespace wedge {

class Mat2 {
public:
    Mat2() : e_{QuadElt::one(), QuadElt::zero(), QuadElt::zero(), QuadElt::one()} {}
    Mat2(QuadElt a, QuadElt b, QuadElt c, QuadElt d) : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

    static Mat2 identity() { return Mat2(); }

    const QuadElt& at(int r, int c) const { return e_[static_cast<size_t>(2 * r + c)]; }

    bool operator==(const Mat2& o) const { return e_ == o.e_; }
    bool operator!=(const Mat2& o) const { return !(*this == o); }

    Mat2 operator*(const Mat2& o) const {
        return Mat2(e_[0] * o.e_[0] + e_[1] * o.e_[2], e_[0] * o.e_[1] + e_[1] * o.e_[3],
                    e_[2] * o.e_[0] + e_[3] * o.e_[2], e_[2] * o.e_[1] + e_[3] * o.e_[3]);
    }
    Mat2 operator-() const { return Mat2(-e_[0], -e_[1], -e_[2], -e_[3]); }

    QuadElt det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }
    QuadElt trace() const { return e_[0] + e_[3]; }

    /// Inverse by the adjugate; valid for det = 1, which holds for every word value.
    Mat2 inverse_det1() const {
        if (det() != QuadElt::one()) throw std::domain_error("Mat2::inverse_det1: det != 1");
        return Mat2(e_[3], -e_[1], -e_[2], e_[0]);
    }

    Mat2 pow(int n) const {
        if (n < 0) return inverse_det1().pow(-n);
        Mat2 r = identity(), base = *this;
        while (n > 0) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    bool is_identity() const { return *this == identity(); }
    bool is_plus_minus_identity() const { return is_identity() || *this == -identity(); }

    bool entries_integral() const {
        for (const auto& v : e_)
            if (!v.is_integral()) return false;
        return true;
    }

    std::string str() const {
        return "[[" + e_[0].str() + ", " + e_[1].str() + "], [" + e_[2].str() + ", " + e_[3].str() + "]]";
    }

private:
    std::array<QuadElt, 4> e_;
};

/// All four entries lie in O_o = Z[1, 2X].
inline bool entries_in_Oo(const Mat2& m) {
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            if (!m.at(r, c).is_in_Oo()) return false;
    return true;
}

inline Mat2 gen_matrix(Sym s) {
    const QuadElt X = QuadElt::X();
    switch (s) {
        case Sym::Z0: return Mat2(QuadElt(-1), QuadElt(0), QuadElt(0), QuadElt(-1));
        case Sym::Sigma: return Mat2(QuadElt(0), QuadElt(1), QuadElt(-1), QuadElt(0));
        case Sym::Tau: return Mat2(QuadElt(1), QuadElt(1), QuadElt(0), QuadElt(1));
        case Sym::Mu: return Mat2(X, QuadElt(0), QuadElt(0), X - QuadElt::one());
        case Sym::Eta: return Mat2(QuadElt(1), X, QuadElt(0), QuadElt(1));
    }
    throw std::logic_error("gen_matrix: bad symbol");
}

inline Mat2 eval_word(const Word& w) {
    Mat2 acc;
    for (const Word::Run& r : w.runs()) acc = acc * gen_matrix(r.sym).pow(r.exp);
    return acc;
}

// ---------------------------------------------------------------------------
// Presentations.

enum class PresentationId { PSL, SL, Delta };

struct Relation {
    std::string name;
    Word word;
};

/// The built-in relation lists: the SL2(O) presentation (C0-C4, R1-R7), its
/// PSL2(O) counterpart (R1-R7 without the central letter), and the
/// upper-triangular subgroup presentation (S0-S2).
inline std::vector<Relation> relations(PresentationId id) {
    auto W = [](const char* s) { return Word::parse(s); };
    switch (id) {
        case PresentationId::SL:
            return {
                {"C0", W("z0^2")},
                {"C1", W("z0 s z0^-1 s^-1")},
                {"C2", W("z0 m z0^-1 m^-1")},
                {"C3", W("z0 t z0^-1 t^-1")},
                {"C4", W("z0 e z0^-1 e^-1")},
                {"R1", W("s^2 z0")},
                {"R2", W("s t s t s t")},
                {"R3", W("s m s m z0")},
                {"R4", W("t e t^-1 e^-1")},
                {"R5", W("m t m^-1 e^-1 t^-1")},
                {"R6", W("m e m^-1 e^-2 t^-1")},
                {"R7", W("s e s m^-1 e s^-1 e t^-1 z0")},
            };
        case PresentationId::PSL:
            return {
                {"R1", W("s^2")},
                {"R2", W("s t s t s t")},
                {"R3", W("s m s m")},
                {"R4", W("t e t^-1 e^-1")},
                {"R5", W("m t m^-1 e^-1 t^-1")},
                {"R6", W("m e m^-1 e^-2 t^-1")},
                {"R7", W("s e s m^-1 e s^-1 e t^-1")},
            };
        case PresentationId::Delta:
            return {
                {"S0", W("t e t^-1 e^-1")},
                {"S1", W("m t m^-1 e^-1 t^-1")},
                {"S2", W("m e m^-1 e^-2 t^-1")},
            };
    }
    throw std::logic_error("relations: bad id");
}

/// Relations in SL must evaluate to the exact identity; PSL and Delta
/// relations to plus or minus the identity.
inline bool relation_requires_exact_identity(PresentationId id) {
    return id == PresentationId::SL;
}

struct RelationCheck {
    std::string name;
    Word word;
    Mat2 value;
    bool ok;
};

struct PresentationReport {
    PresentationId id;
    std::vector<RelationCheck> checks;
    bool all_ok = true;
};

inline PresentationReport check_presentation(PresentationId id) {
    PresentationReport rep;
    rep.id = id;
    const bool exact = relation_requires_exact_identity(id);
    for (const Relation& rel : relations(id)) {
        const Mat2 value = eval_word(rel.word);
        const bool ok = exact ? value.is_identity() : value.is_plus_minus_identity();
        rep.checks.push_back({rel.name, rel.word, value, ok});
        rep.all_ok = rep.all_ok && ok;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Monodromy generators (word and matrix forms).

struct MonodromyGenerator {
    std::string name;
    Word word;
    Mat2 matrix;
};

/// The four monodromy generators, each with its word in {z0, s, m, t, e} and
/// the exact matrix it must evaluate to. X^3 = 1 + 2X and X^-3 = -3 + 2X.
inline std::vector<MonodromyGenerator> monodromy_generators() {
    const QuadElt one = QuadElt::one();
    const QuadElt X3 = QuadElt::X().pow(3);
    const QuadElt Xm3 = QuadElt::X().pow(-3);
    std::vector<MonodromyGenerator> gens = {
        {"gamma_alpha", Word::parse("t^-1 e^2"), Mat2(one, QuadElt(-1, 2), QuadElt(0), one)},
        {"gamma_alpha_prime", Word::parse("s t^-1 e^2 s^-1"), Mat2(one, QuadElt(0), QuadElt(1, -2), one)},
        {"gamma_beta", Word::parse("t^2 e^-2 s m^3 e^-2 t^4"),
         Mat2(one + X3, X3, -X3, one - X3)},
        {"gamma_beta_prime", Word::parse("e^-2 t^-2 s m^-3 e^-2"),
         Mat2(one + Xm3, Xm3, -Xm3, one - Xm3)},
    };
    for (const auto& g : gens) {
        if (eval_word(g.word) != g.matrix)
            throw std::logic_error("monodromy_generators: word/matrix mismatch for " + g.name);
    }
    return gens;
}

} // namespace wedge
