#include "doctest.h"

#include "wedge/cusps.hpp"

#include <random>

using namespace wedge;

namespace {

FinContext& ctx() {
    static FinContext c(std::nullopt, 2);
    return c;
}

const CosetTable& table() {
    static CosetTable t = build_coset_table(ctx());
    return t;
}

} // namespace

TEST_CASE("cusp class data validates") {
    const auto classes = cusp_classes();
    REQUIRE(classes.size() == 4);
    int cusps = 0;
    for (const auto& c : classes) cusps += c.multiplicity;
    CHECK(cusps == 6);

    const CuspClass& l8 = cusp_class("lambda8");
    CHECK(l8.t1 == QuadElt(2, 0));
    CHECK(l8.t2 == QuadElt(0, 2));
    CHECK(l8.a == -2);

    const CuspClass& l120 = cusp_class("lambda120");
    CHECK(l120.t1 == QuadElt(1, 18));
    CHECK(l120.t2 == QuadElt(0, 20));
    CHECK_THROWS_AS(cusp_class("lambda7"), std::domain_error);
}

TEST_CASE("multipliers and action matrices match the published values") {
    const auto [u8, a8] = multiplier_of(cusp_class("lambda8"));
    CHECK(u8 == QuadElt(5, -3)); // X^-4
    CHECK(a8.m[0][0] == 5);
    CHECK(a8.m[0][1] == -3);
    CHECK(a8.m[1][0] == -3);
    CHECK(a8.m[1][1] == 2);

    const auto [u24, a24] = multiplier_of(cusp_class("lambda24"));
    CHECK(u24 == QuadElt(89, 144)); // X^12
    CHECK(a24.m[0][0] == 17);
    CHECK(a24.m[0][1] == 36);
    CHECK(a24.m[1][0] == 144);
    CHECK(a24.m[1][1] == 305);

    const auto [u40, a40] = multiplier_of(cusp_class("lambda40"));
    CHECK(u40 == QuadElt(2, 3)); // X^4
    CHECK(u40 * QuadElt(6, -2) == QuadElt(6, 8));
    (void)a40;

    // Multipliers are totally positive units preserving the lattice.
    for (const auto& c : cusp_classes()) {
        const auto [u, act] = multiplier_of(c);
        CHECK(u.is_totally_positive());
        CHECK(abs(u.norm()) == 1);
        const long det = static_cast<long>(act.m[0][0].get_si()) * static_cast<long>(act.m[1][1].get_si()) -
                         static_cast<long>(act.m[0][1].get_si()) * static_cast<long>(act.m[1][0].get_si());
        CHECK(std::abs(det) == 1);
    }
}

TEST_CASE("resolution cycles") {
    const HullCycle c8 = resolve_cusp(cusp_lattice(cusp_class("lambda8")));
    CHECK(canonical_cycle(c8.b_values) == std::vector<long>{3, 3});

    // The published bigon identities.
    CHECK(QuadElt(10, -6) + QuadElt(2, 0) == QuadElt(4, -2) * Rat(3));
    CHECK(QuadElt(4, -2) + QuadElt(2, 2) == QuadElt(2, 0) * Rat(3));
    CHECK(hull_has_vertex(c8, QuadElt(2, 0)));
    CHECK(hull_has_vertex(c8, QuadElt(4, -2)));
    CHECK_FALSE(hull_has_vertex(c8, QuadElt(4, 0)));

    const HullCycle c40 = resolve_cusp(cusp_lattice(cusp_class("lambda40")));
    CHECK(canonical_cycle(c40.b_values) == std::vector<long>{3, 3});
    CHECK(hull_has_vertex(c40, QuadElt(6, -2)));
    CHECK(hull_has_vertex(c40, QuadElt(6, 8)));

    std::vector<long> sixteen(16, 2);
    sixteen[0] = 4;
    sixteen[8] = 4;
    for (const char* name : {"lambda24", "lambda120"}) {
        const HullCycle c = resolve_cusp(cusp_lattice(cusp_class(name)));
        CHECK(canonical_cycle(c.b_values) == canonical_cycle(sixteen));
        CHECK(c.b_values.size() == 16);
    }

    const HullCycle c24 = resolve_cusp(cusp_lattice(cusp_class("lambda24")));
    for (long j = 0; j <= 8; ++j) {
        CHECK(hull_has_vertex(c24, QuadElt(2 + j, 2 * j)));
        CHECK(hull_has_vertex(c24, QuadElt(2 + 3 * j, -2 * j)));
    }
    const HullCycle c120 = resolve_cusp(cusp_lattice(cusp_class("lambda120")));
    for (long j = 0; j <= 8; ++j) CHECK(hull_has_vertex(c120, QuadElt(6 + j, 8 - 2 * j)));
}

TEST_CASE("hull identities hold vertex by vertex") {
    for (const auto& cls : cusp_classes()) {
        const HullCycle cyc = resolve_cusp(cusp_lattice(cls));
        const size_t n = cyc.vertices.size();
        REQUIRE(n == cyc.b_values.size());
        // v_{k-1} + v_{k+1} = b_k v_k cyclically, with the multiplier gluing
        // the period ends.
        const QuadElt& u = cyc.unit_oriented;
        for (size_t k = 0; k < n; ++k) {
            const QuadElt prev = k == 0 ? cyc.vertices[n - 1] * u.inv() : cyc.vertices[k - 1];
            const QuadElt next = k + 1 == n ? cyc.vertices[0] * u : cyc.vertices[k + 1];
            CHECK(prev + next == cyc.vertices[k] * Rat(cyc.b_values[k]));
            CHECK(cyc.vertices[k].is_totally_positive());
            CHECK(cyc.b_values[k] >= 2);
            // Vertices lie in the lattice.
            const auto [m, mn] = lattice_coords(cyc.vertices[k], cyc.lattice.t1, cyc.lattice.t2);
            CHECK(m.get_den() == 1);
            CHECK(mn.get_den() == 1);
        }
    }
}

TEST_CASE("no totally positive lattice point below the hull chain") {
    for (const char* name : {"lambda8", "lambda40"}) {
        const HullCycle cyc = resolve_cusp(cusp_lattice(cusp_class(name)));
        const QuadElt& u = cyc.unit_oriented;
        std::vector<QuadElt> verts;
        for (int t : {-1, 0, 1})
            for (const QuadElt& v : cyc.vertices) verts.push_back(v * u.pow(t));
        std::sort(verts.begin(), verts.end(),
                  [](const QuadElt& a, const QuadElt& b) { return (a - b).sign_at(Place::First) < 0; });
        // Sample lattice points in a window and check they sit on or above
        // every hull segment whose x-range contains them.
        const CuspLattice lat = cyc.lattice;
        for (long m = -12; m <= 12; ++m)
            for (long n = -12; n <= 12; ++n) {
                const QuadElt p = lat.t1 * Rat(m) + lat.t2 * Rat(n);
                if (!p.is_totally_positive()) continue;
                for (size_t i = 0; i + 1 < verts.size(); ++i) {
                    if ((p - verts[i]).sign_at(Place::First) <= 0) continue;
                    if ((verts[i + 1] - p).sign_at(Place::First) <= 0) continue;
                    CHECK(detail::cross_sign(verts[i], verts[i + 1], p) >= 0);
                }
            }
    }
}

TEST_CASE("resolution is invariant under unimodular basis change") {
    std::mt19937 rng(314159);
    std::uniform_int_distribution<int> small(-3, 3);
    const std::vector<std::string> names = {"lambda8", "lambda40"};
    for (int iter = 0; iter < 60; ++iter) {
        const CuspClass& cls = cusp_class(names[static_cast<size_t>(iter) % names.size()]);
        const CuspLattice base = cusp_lattice(cls);
        const std::vector<long> canon = canonical_cycle(resolve_cusp(base).b_values);

        long a, b, c, d;
        do {
            a = small(rng), b = small(rng), c = small(rng), d = small(rng);
        } while (std::abs(a * d - b * c) != 1);
        CuspLattice tr;
        tr.t1 = base.t1 * Rat(a) + base.t2 * Rat(c);
        tr.t2 = base.t1 * Rat(b) + base.t2 * Rat(d);
        tr.unit = base.unit;
        CHECK(canonical_cycle(resolve_cusp(tr).b_values) == canon);
    }
}

TEST_CASE("coset table and cusp orbits") {
    const CosetTable& t = table();
    CHECK(t.reps.size() == 240);

    const auto orbits = cusp_orbits(t);
    CHECK(orbits.size() == 6);
    std::vector<size_t> sizes;
    size_t total = 0;
    for (const auto& orb : orbits) {
        sizes.push_back(orb.members.size());
        total += orb.members.size();
    }
    CHECK(total == 240);
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<size_t>{8, 8, 24, 40, 40, 120});

    // The identity coset is fixed by the identity action and the orbit sizes
    // obey orbit-stabilizer against the monodromy image order 960.
    const FinGroup& H = ctx().monodromy_psl();
    CHECK(H.order() == 960);
    const ResidueRing J = ResidueRing::mod4p5();
    const RingOps& o = ring_ops(J);
    std::vector<FinMat> delta_reps;
    for (std::uint64_t k : ctx().delta_psl().elements) delta_reps.push_back(FinMat::from_key(J, k));
    for (const auto& orb : orbits) {
        const FinMat rep = t.reps[static_cast<size_t>(orb.representative)];
        const std::uint64_t home = detail::coset_canonical_key(o, delta_reps, rep);
        size_t stab = 0;
        for (std::uint64_t hk : H.elements) {
            const FinMat h = FinMat::from_key(J, hk);
            if (detail::coset_canonical_key(o, delta_reps, fin_mul(o, rep, h)) == home) ++stab;
        }
        CHECK(stab * orb.members.size() == H.order());
    }
}

TEST_CASE("cusp counting suite") {
    const SuiteReport rep = verify_cusp_counting(ctx(), table());
    for (const auto& item : rep.items) {
        INFO(item.id, ": ", item.detail);
        CHECK(item.ok);
    }
    CHECK(rep.all_ok());
}

TEST_CASE("resolution suite") {
    const SuiteReport rep = verify_resolutions();
    for (const auto& item : rep.items) {
        INFO(item.id, ": ", item.detail);
        CHECK(item.ok);
    }
    CHECK(rep.all_ok());
}

TEST_CASE("euler number and chern invariants") {
    CHECK(euler_number(240) == 16);
    CHECK(euler_number(15) == 1);
    CHECK(euler_number(30) == 2);
    CHECK_THROWS_AS(euler_number(241), std::domain_error);

    const SuiteReport rep = verify_chern(ctx());
    for (const auto& item : rep.items) {
        INFO(item.id, ": ", item.detail);
        CHECK(item.ok);
    }
    CHECK(rep.all_ok());

    // 12 chi = c1^2 + c2 identically on synthetic admissible inputs.
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> blen(1, 6), bval(2, 5), evar(1, 40);
    int accepted = 0;
    for (int i = 0; i < 1000 || accepted == 0; ++i) {
        std::vector<std::vector<long>> cycles(6);
        for (auto& cyc : cycles) {
            const int len = blen(rng);
            for (int j = 0; j < len; ++j) cyc.push_back(bval(rng));
        }
        const long e = evar(rng);
        try {
            const SurfaceInvariants inv = chern(e, cycles);
            CHECK(12 * inv.chi == inv.c1_sq + inv.c2);
            CHECK(inv.p_g == inv.chi - 1 + inv.q);
            ++accepted;
        } catch (const std::domain_error&) {
            // c1^2 + c2 not divisible by 12: rejected inputs are fine.
        }
        if (i >= 1000) break;
    }
    CHECK(accepted > 0);
}
