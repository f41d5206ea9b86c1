#include "doctest.h"

#include "wedge/matgrp.hpp"

#include <random>

using namespace wedge;

namespace {

Word random_word(std::mt19937& rng, int len) {
    std::uniform_int_distribution<int> sym(0, 4), exp(-3, 3);
    std::vector<Word::Run> runs;
    for (int i = 0; i < len; ++i) {
        int e = exp(rng);
        if (e == 0) e = 1;
        runs.push_back({static_cast<Sym>(sym(rng)), e});
    }
    return Word(std::move(runs));
}

} // namespace

TEST_CASE("word normal form and grammar round trip") {
    const Word w = Word::parse("t^-1 e^2");
    CHECK(w.str() == "t^-1 e^2");
    CHECK(Word::parse(w.str()) == w);

    // Adjacent runs merge; zero exponents vanish.
    const Word m = Word::parse("t t^2 e^0 s s^-1 m");
    CHECK(m.str() == "t^3 m");

    CHECK(Word::parse("z0^2").str() == "z0^2");
    CHECK(Word::id().str() == "");
    CHECK_THROWS(Word::parse("q^2"));

    std::mt19937 rng(41);
    for (int i = 0; i < 500; ++i) {
        const Word r = random_word(rng, 6);
        CHECK(Word::parse(r.str()) == r);
        CHECK(Word::parse(r.str()).str() == r.str());
        CHECK((r * r.inverse()).empty());
    }
}

TEST_CASE("word evaluation basics") {
    CHECK(eval_word(Word::id()).is_identity());

    // gamma_alpha = tau^-1 eta^2.
    CHECK(eval_word(Word::parse("t^-1 e^2")) ==
          Mat2(QuadElt(1), QuadElt(-1, 2), QuadElt(0), QuadElt(1)));

    // gamma_beta word evaluates to the stated matrix with X^3 = 1 + 2X.
    const QuadElt X3(1, 2);
    CHECK(eval_word(Word::parse("t^2 e^-2 s m^3 e^-2 t^4")) ==
          Mat2(QuadElt::one() + X3, X3, -X3, QuadElt::one() - X3));
}

TEST_CASE("eval_word is a monoid homomorphism with det 1") {
    std::mt19937 rng(4242);
    for (int i = 0; i < 300; ++i) {
        const Word w1 = random_word(rng, 5), w2 = random_word(rng, 5);
        CHECK(eval_word(w1 * w2) == eval_word(w1) * eval_word(w2));
        CHECK(eval_word(w1).det() == QuadElt::one());
        CHECK(eval_word(w1.inverse()) == eval_word(w1).inverse_det1());
    }
}

TEST_CASE("SL presentation: all 12 relations are the exact identity") {
    const PresentationReport rep = check_presentation(PresentationId::SL);
    CHECK(rep.checks.size() == 12);
    for (const auto& c : rep.checks) {
        INFO(c.name, " evaluated to ", c.value.str());
        CHECK(c.ok);
        CHECK(c.value.is_identity());
    }
    CHECK(rep.all_ok);
}

TEST_CASE("PSL presentation: all 7 relations are +-identity") {
    const PresentationReport rep = check_presentation(PresentationId::PSL);
    CHECK(rep.checks.size() == 7);
    for (const auto& c : rep.checks) {
        INFO(c.name, " evaluated to ", c.value.str());
        CHECK(c.ok);
    }
    CHECK(rep.all_ok);
    // R1 and R3 lift to z0, not the identity.
    CHECK(eval_word(Word::parse("s^2")) == -Mat2::identity());
    CHECK(eval_word(Word::parse("s m s m")) == -Mat2::identity());
}

TEST_CASE("Delta presentation relations") {
    const PresentationReport rep = check_presentation(PresentationId::Delta);
    CHECK(rep.checks.size() == 3);
    for (const auto& c : rep.checks) CHECK(c.ok);
    CHECK(rep.all_ok);
}

TEST_CASE("monodromy generators: words match matrices, entries in O_o") {
    const auto gens = monodromy_generators();
    REQUIRE(gens.size() == 4);
    for (const auto& g : gens) {
        CHECK(eval_word(g.word) == g.matrix);
        CHECK(g.matrix.det() == QuadElt::one());
        CHECK(entries_in_Oo(g.matrix));
    }
    CHECK(gens[1].matrix == Mat2(QuadElt(1), QuadElt(0), QuadElt(1, -2), QuadElt(1)));
    // gamma_beta_prime has X^-3 = -3 + 2X entries.
    CHECK(gens[3].matrix.at(0, 1) == QuadElt(-3, 2));
}

TEST_CASE("O_o membership of generator matrices") {
    CHECK_FALSE(entries_in_Oo(gen_matrix(Sym::Mu)));
    CHECK_FALSE(entries_in_Oo(gen_matrix(Sym::Eta)));
    CHECK(entries_in_Oo(gen_matrix(Sym::Sigma)));
    CHECK(entries_in_Oo(gen_matrix(Sym::Tau)));
    CHECK(entries_in_Oo(Mat2::identity()));
}
