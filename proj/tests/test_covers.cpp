#include "doctest.h"

#include "wedge/covers.hpp"

using namespace wedge;

TEST_CASE("lift counts of the peripheral classes") {
    const auto gens = monodromy_generators();
    for (const auto& g : gens) CHECK(lift_count(g.word) == 3);

    // The ordered product is the identity mod 2, so its puncture has 6 lifts.
    const Word product = gens[0].word * gens[2].word * gens[1].word * gens[3].word;
    CHECK(lift_count(product) == 6);
    CHECK(lift_count(Word::id()) == 6);

    // mu has image outside SL2(F2).
    CHECK_THROWS_AS(lift_count(Word::parse("m")), std::domain_error);
}

TEST_CASE("cover topology of the Wiman-Edge base") {
    const CoverTopology top = cover_topology(CoverSpec::wiman_edge());
    CHECK(top.punctures == 18);
    CHECK(top.euler == -18);
    CHECK(top.genus == 1);
    REQUIRE(top.lifts.size() == 5);
    CHECK(top.lifts[0].second == 3);
    CHECK(top.lifts[4].second == 6);
}

TEST_CASE("euler bookkeeping controls") {
    // Degree-1 trivial cover of the 5-punctured sphere: genus 0, 5 punctures,
    // euler -3, from 2 - 2g - p = chi.
    const int degree = 1, punctures = 5;
    const int euler = degree * (2 - 0 - 5);
    CHECK(euler == -3);
    CHECK(2 - 2 * 0 - punctures == euler);

    // Negative control: a hypothetical degree-6 cover where every peripheral
    // class had a single lift would need 2 - 2g = -18 + 5 = -13, which is not
    // an even integer; the bookkeeping must reject it. (No such cover exists:
    // SL2(F2) has no element of order 6.)
    const int hypothetical_chi = -18, hypothetical_punctures = 5;
    const int two_minus_2g = hypothetical_chi + hypothetical_punctures;
    CHECK(two_minus_2g % 2 != 0);

    const RingOps& o2 = ring_ops(ResidueRing::mod2());
    const FinGroup sl2f2 = closure(ResidueRing::mod2(), reduce_all(monodromy_matrices(), ResidueRing::mod2()));
    for (std::uint64_t k : sl2f2.elements)
        CHECK(element_order(o2, FinMat::from_key(ResidueRing::mod2(), k)) != 6);
}

TEST_CASE("cover suite") {
    const SuiteReport rep = verify_cover();
    for (const auto& item : rep.items) {
        INFO(item.id, ": ", item.detail);
        CHECK(item.ok);
    }
    CHECK(rep.all_ok());
}

TEST_CASE("euler = 2 - 2 genus - punctures for the computed cover") {
    const CoverTopology top = cover_topology(CoverSpec::wiman_edge());
    CHECK(top.euler == 2 - 2 * top.genus - top.punctures);
    int total = 0;
    for (const auto& [name, lifts] : top.lifts) total += lifts;
    CHECK(total == top.punctures);
}
