#pragma once

// Covering-space bookkeeping for the degree-6 cover of the pencil base:
// puncture lifts from element orders in SL2(F2), Euler characteristic, genus.

#include "wedge/finquot.hpp"

#include <numeric>

namespace wedge {

struct CoverSpec {
    int base_genus = 0;
    std::vector<std::pair<std::string, Word>> peripheral_words;

    /// The five peripheral classes of the 5-punctured sphere base: the four
    /// monodromy generators and their ordered product.
    static CoverSpec wiman_edge() {
        CoverSpec s;
        Word product;
        for (const auto& g : monodromy_generators()) {
            s.peripheral_words.emplace_back(g.name, g.word);
            product = product * g.word;
        }
        s.peripheral_words.emplace_back("gamma_alpha gamma_beta gamma_alpha' gamma_beta'",
                                        s.peripheral_words[0].second * s.peripheral_words[2].second *
                                            s.peripheral_words[1].second * s.peripheral_words[3].second);
        return s;
    }
};

/// Number of lifts of a puncture: the index in SL2(F2) of the cyclic group
/// generated by the image of the loop. Domain error if the image leaves
/// SL2(F2), which would contradict the O_o pullback description.
inline int lift_count(const Word& w) {
    const FinMat img = eval_word_mod(w, ResidueRing::mod2());
    if (!check_condition(img, CongCondition::Mod2InF2))
        throw std::domain_error("lift_count: image not in SL2(F2)");
    const int order = element_order(ring_ops(ResidueRing::mod2()), img, 8);
    return 6 / order;
}

struct CoverTopology {
    int genus = 0;
    int punctures = 0;
    int euler = 0;
    std::vector<std::pair<std::string, int>> lifts;
};

/// Genus, punctures and Euler characteristic of the induced degree-6 cover.
/// Verification failure if the peripheral images do not generate the full
/// deck group (disconnected cover) or the bookkeeping is inconsistent.
inline CoverTopology cover_topology(const CoverSpec& s) {
    CoverTopology out;
    const int degree = 6;
    const int base_punctures = static_cast<int>(s.peripheral_words.size());

    // Connectivity: the images of the four generators generate SL2(F2).
    std::vector<FinMat> images;
    for (size_t i = 0; i + 1 < s.peripheral_words.size(); ++i)
        images.push_back(eval_word_mod(s.peripheral_words[i].second, ResidueRing::mod2()));
    if (closure(ResidueRing::mod2(), images).order() != 6)
        throw std::runtime_error("cover_topology: peripheral images do not generate SL2(F2)");

    for (const auto& [name, w] : s.peripheral_words) {
        const int lifts = lift_count(w);
        out.lifts.emplace_back(name, lifts);
        out.punctures += lifts;
    }
    out.euler = degree * (2 - 2 * s.base_genus - base_punctures);
    const int two_minus_2g = out.euler + out.punctures;
    if (two_minus_2g % 2 != 0 || two_minus_2g > 2)
        throw std::runtime_error("cover_topology: non-integral or negative genus");
    out.genus = (2 - two_minus_2g) / 2;
    return out;
}

inline SuiteReport verify_cover() {
    SuiteReport rep{"cover", {}};
    const CoverSpec spec = CoverSpec::wiman_edge();
    const CoverTopology top = cover_topology(spec);

    std::string lifts;
    bool lifts_ok = top.lifts.size() == 5;
    for (size_t i = 0; i < top.lifts.size(); ++i) {
        lifts += std::to_string(top.lifts[i].second) + " ";
        const int expect = i + 1 == top.lifts.size() ? 6 : 3;
        lifts_ok = lifts_ok && top.lifts[i].second == expect;
    }
    rep.add("prop6.1.lifts", lifts_ok, "puncture lifts: " + lifts);
    rep.add("prop6.1.punctures", top.punctures == 18, "punctures = " + std::to_string(top.punctures));
    rep.add("prop6.1.euler", top.euler == -18, "euler = " + std::to_string(top.euler));
    rep.add("prop6.1.genus", top.genus == 1, "genus = " + std::to_string(top.genus));
    return rep;
}

} // namespace wedge
