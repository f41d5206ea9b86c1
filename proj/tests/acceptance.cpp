// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Optional argument: a cache directory for the group enumerations.

#include "wedge/suites.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>

using namespace wedge;

namespace {

const std::string kFixture = std::string(WEDGE_SOURCE_DIR) + "/data/klein_plane.json";

struct Gate {
    int failures = 0;
    int index = 0;

    void run(const std::string& name, const std::function<bool(std::string&)>& body) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %2d: %s (%.0f ms)%s%s\n", ok ? "PASS" : "FAIL", index, name.c_str(), ms,
                    detail.empty() ? "" : " -- ", detail.c_str());
        if (!ok) ++failures;
    }
};

bool all_ok(const SuiteReport& rep, std::string& detail) {
    for (const auto& item : rep.items)
        if (!item.ok) {
            detail = "failing claim " + item.id + ": " + item.detail;
            return false;
        }
    return true;
}

bool claim_ok(const SuiteReport& rep, const std::string& id) {
    for (const auto& item : rep.items)
        if (item.id == id) return item.ok;
    return false;
}

QuadElt random_elt(std::mt19937& rng, int bound, int den) {
    std::uniform_int_distribution<int> num(-bound, bound);
    std::uniform_int_distribution<int> d(1, den);
    Rat a(num(rng), d(rng)), b(num(rng), d(rng));
    a.canonicalize();
    b.canonicalize();
    return QuadElt(a, b);
}

} // namespace

int main(int argc, char** argv) {
    std::optional<std::filesystem::path> cache;
    if (argc > 1) cache = argv[1];
    FinContext ctx(cache, 2);
    Gate gate;

    SuiteReport presentation;
    gate.run("presentation relations: 12 exact identities, 7 and 3 up to sign", [&](std::string& detail) {
        presentation = presentation_suite();
        int sl = 0, psl = 0, delta = 0;
        for (const auto& item : presentation.items) {
            if (item.id.rfind("cor2.3.", 0) == 0) ++sl;
            if (item.id.rfind("thm2.2.", 0) == 0) ++psl;
            if (item.id.rfind("lem4.3.", 0) == 0) ++delta;
        }
        detail = std::to_string(sl) + " + " + std::to_string(psl) + " + " + std::to_string(delta) + " relations";
        return sl == 12 && psl == 7 && delta == 3 && all_ok(presentation, detail);
    });

    gate.run("generator identities: four words reproduce their matrices in O_o", [&](std::string& detail) {
        for (const std::string name :
             {"gamma_alpha", "gamma_alpha_prime", "gamma_beta", "gamma_beta_prime"}) {
            if (!claim_ok(presentation, "lem2.4." + name) || !claim_ok(presentation, "lem2.4." + name + ".Oo")) {
                detail = "failed for " + name;
                return false;
            }
        }
        return true;
    });

    SuiteReport thma;
    gate.run("congruence description: index 480, unipotent mod p5, SL2(F2) mod 2, C4 kernel, filter = image",
             [&](std::string& detail) {
                 thma = theorem_a_suite(ctx);
                 for (const std::string id : {"thmA.index480", "thmA.cond1", "thmA.mod2_image",
                                              "thmA.cond2.kernel", "thmA.cond2.extension", "thmA.K_eq_H"})
                     if (!claim_ok(thma, id)) {
                         detail = "failing claim " + id;
                         return false;
                     }
                 return true;
             });

    gate.run("group orders 60, 3840, 64, 460800", [&](std::string& detail) {
        detail = "orders claim";
        return claim_ok(thma, "thmA.orders") && claim_ok(thma, "thmA.G_order");
    });

    gate.run("torsion obstruction table", [&](std::string& detail) {
        SuiteReport rep = torsion_suite(ctx);
        return all_ok(rep, detail);
    });

    gate.run("cusp count: 240 cosets, 6 orbits, indices {8,8,24,40,40,120}, membership", [&](std::string& detail) {
        SuiteReport rep = cusps_suite(ctx);
        return all_ok(rep, detail);
    });

    gate.run("resolution cycles: bigons of -3, 16-gons with two -4 at distance 8, published vertices",
             [&](std::string& detail) {
                 SuiteReport rep = resolutions_suite();
                 std::vector<long> sixteen(16, 2);
                 sixteen[0] = 4;
                 sixteen[8] = 4;
                 for (const char* name : {"lambda24", "lambda120"}) {
                     const HullCycle cyc = resolve_cusp(cusp_lattice(cusp_class(name)));
                     if (canonical_cycle(cyc.b_values) != canonical_cycle(sixteen)) {
                         detail = std::string(name) + " cycle mismatch";
                         return false;
                     }
                 }
                 return all_ok(rep, detail);
             });

    gate.run("surface invariants e=16, c2=56, c1^2=16, chi=6, q=0, p_g=5", [&](std::string& detail) {
        SuiteReport rep = chern_suite(ctx);
        return all_ok(rep, detail);
    });

    gate.run("cover data: lifts (3,3,3,3,6), 18 punctures, euler -18, genus 1", [&](std::string& detail) {
        SuiteReport rep = cover_suite();
        return all_ok(rep, detail);
    });

    gate.run("plane suite: family, incidence, orbits, case analysis, two smooth candidates, profiles",
             [&](std::string& detail) {
                 int survivors = -1;
                 for (const SuiteReport& rep : plane_suites(kFixture)) {
                     if (!all_ok(rep, detail)) return false;
                     for (const auto& item : rep.items)
                         if (item.id == "prop6.5.survivors") survivors = item.ok ? 2 : 0;
                 }
                 detail = "survivors = " + std::to_string(survivors);
                 return survivors == 2;
             });

    gate.run("property suites, 1000 iterations each", [&](std::string& detail) {
        std::mt19937 rng(20260807);

        // Field-arithmetic homomorphism properties.
        for (int i = 0; i < 1000; ++i) {
            const QuadElt x = random_elt(rng, 40, 8), y = random_elt(rng, 40, 8);
            if ((x * y).norm() != x.norm() * y.norm() || !((x * y).galois() == x.galois() * y.galois())) {
                detail = "field homomorphism property failed";
                return false;
            }
            if (!x.is_zero() && !(x * x.inv() == QuadElt::one())) {
                detail = "inverse property failed";
                return false;
            }
            const QuadElt ix(i % 19 - 9, (i / 19) % 17 - 8), iy(i % 13 - 6, i % 11 - 5);
            const ResidueRing ring = i % 2 ? ResidueRing::mod4p5() : ResidueRing::mod4();
            if (!(reduce(ix * iy, ring) == ring_mul(reduce(ix, ring), reduce(iy, ring))) ||
                !(reduce(ix + iy, ring) == ring_add(reduce(ix, ring), reduce(iy, ring)))) {
                detail = "reduction homomorphism failed";
                return false;
            }
        }

        // Hull basis-change invariance.
        std::uniform_int_distribution<int> small(-3, 3);
        for (int i = 0; i < 1000; ++i) {
            const char* name = i % 10 == 9 ? "lambda24" : (i % 2 ? "lambda40" : "lambda8");
            const CuspLattice base = cusp_lattice(cusp_class(name));
            long a, b, c, d;
            do {
                a = small(rng), b = small(rng), c = small(rng), d = small(rng);
            } while (std::labs(a * d - b * c) != 1);
            CuspLattice tr{base.t1 * Rat(a) + base.t2 * Rat(c), base.t1 * Rat(b) + base.t2 * Rat(d), base.unit};
            if (canonical_cycle(resolve_cusp(tr).b_values) != canonical_cycle(resolve_cusp(base).b_values)) {
                detail = std::string("hull basis-change invariance failed on ") + name;
                return false;
            }
        }

        // Closure determinism under generator permutation.
        const ResidueRing r2 = ResidueRing::mod2();
        auto gens2 = reduce_all(sl2_generator_matrices(), r2);
        const auto ref2 = closure(r2, gens2).elements;
        const ResidueRing r4 = ResidueRing::mod4();
        auto gens4 = reduce_all(sl2_generator_matrices(), r4);
        const auto ref4 = closure(r4, gens4).elements;
        for (int i = 0; i < 1000; ++i) {
            if (i % 100 == 0) {
                auto shuffled = gens4;
                std::shuffle(shuffled.begin(), shuffled.end(), rng);
                if (closure(r4, shuffled).elements != ref4) {
                    detail = "mod-4 closure not permutation invariant";
                    return false;
                }
            }
            auto shuffled = gens2;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            if (closure(r2, shuffled).elements != ref2) {
                detail = "mod-2 closure not permutation invariant";
                return false;
            }
        }

        // Bezout multiplicity sums on random family members.
        const plane::CubicFamily fam = plane::invariant_family();
        std::uniform_int_distribution<int> coef(-4, 4), line(0, 14);
        for (int i = 0; i < 1000; ++i) {
            std::array<QuadElt, 3> a;
            do {
                for (auto& v : a) v = QuadElt(coef(rng), coef(rng));
            } while (a[0].is_zero() && a[1].is_zero() && a[2].is_zero());
            const plane::IntersectionProfile prof = plane::intersection_profile(fam.at(a), line(rng));
            if (!prof.contains_line && prof.total_multiplicity() != 3) {
                detail = "Bezout sum failed";
                return false;
            }
        }
        return true;
    });

    std::printf("acceptance: %d criteria, %d failed\n", gate.index, gate.failures);
    return gate.failures;
}
