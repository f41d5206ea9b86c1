#pragma once

// The Klein plane configuration: icosahedron and dodecahedron vertices, the
// fifteen lines, the S3 action with its orbit data, the anti-invariant cubic
// family, and the verification suites comparing computed incidence and orbit
// tables against the shipped fixture.

#include "wedge/finquot.hpp" // SuiteReport
#include "wedge/planegeom.hpp"

#include "json.hpp"

#include <fstream>

namespace wedge::plane {

struct KleinPlane {
    std::vector<ProjPoint> v; // v[0..5] icosahedron vertices
    std::vector<ProjPoint> e; // e[0..9] dodecahedron vertices
    std::vector<ProjLine> lines;

    // S3 as named transforms with the sign character of the anti-invariance.
    struct GroupElt {
        std::string name;
        ProjTransform g;
        int sign; // -1 on the involutions, +1 on the rotations
    };
    std::vector<GroupElt> s3; // id, sigma1, sigma2, sigma3, tau, tau^2

    const ProjLine& line(int i, int j) const {
        for (const auto& l : lines)
            if (l.i == i && l.j == j) return l;
        throw std::domain_error("KleinPlane::line: no such line");
    }
    const GroupElt& elt(const std::string& name) const {
        for (const auto& g : s3)
            if (g.name == name) return g;
        throw std::domain_error("KleinPlane::elt: no such element");
    }

    /// Index (0..15) of a named point: 0..5 the v's, 6..15 the e's.
    std::optional<int> named_point_index(const ProjPoint& p) const {
        for (int i = 0; i < 6; ++i)
            if (v[static_cast<size_t>(i)] == p) return i;
        for (int i = 0; i < 10; ++i)
            if (e[static_cast<size_t>(i)] == p) return 6 + i;
        return std::nullopt;
    }
    std::string point_name(int idx) const {
        return idx < 6 ? "v" + std::to_string(idx + 1) : "e" + std::to_string(idx - 5);
    }
};

inline const KleinPlane& klein_plane() {
    static const KleinPlane plane = [] {
        KleinPlane P;
        const QuadElt X = QuadElt::X();
        const QuadElt one = QuadElt::one(), zero = QuadElt::zero();
        P.v = {ProjPoint(zero, one, X),  ProjPoint(zero, one, -X), ProjPoint(X, zero, one),
               ProjPoint(-X, zero, one), ProjPoint(one, X, zero),  ProjPoint(one, -X, zero)};
        P.e = {ProjPoint(one, one, one),        ProjPoint(-one, one, one),
               ProjPoint(one, -one, one),       ProjPoint(-one, -one, one),
               ProjPoint(X - one, zero, X),     ProjPoint(one - X, zero, X),
               ProjPoint(zero, X, X - one),     ProjPoint(zero, X, one - X),
               ProjPoint(X, X - one, zero),     ProjPoint(X, one - X, zero)};
        const std::vector<std::pair<int, int>> pairs = {{1, 5}, {1, 7}, {1, 9},  {2, 6}, {2, 7},
                                                        {2, 10}, {3, 5}, {3, 8},  {3, 10}, {4, 6},
                                                        {4, 8},  {4, 9}, {5, 6},  {7, 8},  {9, 10}};
        for (auto [i, j] : pairs)
            P.lines.push_back({i, j, P.e[static_cast<size_t>(i - 1)], P.e[static_cast<size_t>(j - 1)]});

        const Rat half(1, 2);
        ProjTransform s1, s2;
        s1.m = {{{QuadElt(-1), zero, zero}, {zero, QuadElt(-1), zero}, {zero, zero, one}}};
        s2.m = {{{-X * half, -one * half, (X - one) * half},
                 {-one * half, (X - one) * half, -X * half},
                 {(X - one) * half, -X * half, -one * half}}};
        ProjTransform id;
        id.m = {{{one, zero, zero}, {zero, one, zero}, {zero, zero, one}}};
        const ProjTransform tau = s1 * s2;
        const ProjTransform s3 = tau * s1;
        P.s3 = {{"id", id, 1},          {"sigma1", s1, -1}, {"sigma2", s2, -1},
                {"sigma3", s3, -1},     {"tau", tau, 1},    {"tau2", tau * tau, 1}};
        return P;
    }();
    return plane;
}

// ---------------------------------------------------------------------------
// Orbits of named objects.

inline int point_image(const KleinPlane& P, const ProjTransform& g, int idx) {
    const ProjPoint& p = idx < 6 ? P.v[static_cast<size_t>(idx)] : P.e[static_cast<size_t>(idx - 6)];
    const auto img = P.named_point_index(g.apply(p));
    if (!img) throw std::logic_error("point_image: transform does not permute the named points");
    return *img;
}

inline int line_image(const KleinPlane& P, const ProjTransform& g, int lidx) {
    const ProjLine& l = P.lines[static_cast<size_t>(lidx)];
    const ProjPoint a = g.apply(l.pi), b = g.apply(l.pj);
    for (size_t t = 0; t < P.lines.size(); ++t)
        if (on_line(a, P.lines[t]) && on_line(b, P.lines[t])) return static_cast<int>(t);
    throw std::logic_error("line_image: transform does not permute the lines");
}

/// Orbit partition of {0..n-1} under a set of permutations.
inline std::vector<std::vector<int>> orbit_partition(int n, const std::vector<std::vector<int>>& perms) {
    std::vector<int> owner(static_cast<size_t>(n), -1);
    std::vector<std::vector<int>> orbits;
    for (int s = 0; s < n; ++s) {
        if (owner[static_cast<size_t>(s)] >= 0) continue;
        std::vector<int> orbit{s};
        owner[static_cast<size_t>(s)] = static_cast<int>(orbits.size());
        for (size_t head = 0; head < orbit.size(); ++head)
            for (const auto& perm : perms) {
                const int img = perm[static_cast<size_t>(orbit[head])];
                if (owner[static_cast<size_t>(img)] < 0) {
                    owner[static_cast<size_t>(img)] = static_cast<int>(orbits.size());
                    orbit.push_back(img);
                }
            }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

// ---------------------------------------------------------------------------
// Fixture (verbatim figure data shipped with the repository).

struct KleinFixture {
    nlohmann::json j;

    static KleinFixture load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("KleinFixture: cannot open " + path);
        KleinFixture f;
        in >> f.j;
        return f;
    }
};

namespace detail_klein {

inline std::vector<std::vector<std::string>> json_partition(const nlohmann::json& j) {
    std::vector<std::vector<std::string>> out;
    for (const auto& orbit : j) {
        std::vector<std::string> names;
        for (const auto& n : orbit) names.push_back(n.get<std::string>());
        std::sort(names.begin(), names.end());
        out.push_back(std::move(names));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail_klein

/// Fig 10 incidence: each line carries exactly its two defining dodecahedral
/// vertices and exactly the two icosahedral vertices listed in the fixture.
inline SuiteReport verify_incidence(const KleinFixture& fixture) {
    SuiteReport rep{"incidence", {}};
    const KleinPlane& P = klein_plane();

    bool distinct = true;
    for (int a = 0; a < 16; ++a)
        for (int b = a + 1; b < 16; ++b) {
            const ProjPoint& pa = a < 6 ? P.v[static_cast<size_t>(a)] : P.e[static_cast<size_t>(a - 6)];
            const ProjPoint& pb = b < 6 ? P.v[static_cast<size_t>(b)] : P.e[static_cast<size_t>(b - 6)];
            if (pa == pb) distinct = false;
        }
    rep.add("fig7_8.distinct_points", distinct, "the 16 named points are pairwise distinct");

    bool lines_distinct = true;
    for (size_t a = 0; a < P.lines.size(); ++a)
        for (size_t b = a + 1; b < P.lines.size(); ++b)
            if (on_line(P.lines[a].pi, P.lines[b]) && on_line(P.lines[a].pj, P.lines[b])) lines_distinct = false;
    rep.add("fig9.distinct_lines", lines_distinct, "the 15 lines are pairwise distinct");

    bool all_ok = true;
    std::string bad;
    for (const auto& l : P.lines) {
        std::vector<std::string> on_v, on_e;
        for (int i = 0; i < 6; ++i)
            if (on_line(P.v[static_cast<size_t>(i)], l)) on_v.push_back("v" + std::to_string(i + 1));
        for (int i = 0; i < 10; ++i)
            if (on_line(P.e[static_cast<size_t>(i)], l)) on_e.push_back("e" + std::to_string(i + 1));
        std::vector<std::string> expect_v;
        for (const auto& n : fixture.j["incidence"][l.id()]) expect_v.push_back(n.get<std::string>());
        std::sort(expect_v.begin(), expect_v.end());
        std::sort(on_v.begin(), on_v.end());
        const std::vector<std::string> expect_e = {"e" + std::to_string(l.i), "e" + std::to_string(l.j)};
        std::vector<std::string> sorted_e = on_e;
        std::sort(sorted_e.begin(), sorted_e.end());
        std::vector<std::string> expect_e_sorted = expect_e;
        std::sort(expect_e_sorted.begin(), expect_e_sorted.end());
        if (on_v != expect_v || sorted_e != expect_e_sorted) {
            all_ok = false;
            bad += l.id() + " ";
        }
    }
    rep.add("fig10.incidence", all_ok, all_ok ? "all 15 lines carry exactly the listed vertices"
                                              : "incidence mismatch on: " + bad);
    return rep;
}

/// Fig 13-15 action data: group relations, vertex orbits, edge orbits with
/// their Z/2 action type, and the global partitions.
inline SuiteReport verify_action(const KleinFixture& fixture) {
    SuiteReport rep{"action", {}};
    const KleinPlane& P = klein_plane();

    const ProjTransform& s1 = P.elt("sigma1").g;
    const ProjTransform& s2 = P.elt("sigma2").g;
    const ProjTransform& tau = P.elt("tau").g;
    rep.add("fig13.relations",
            (s1 * s1).projectively_identity() && (s2 * s2).projectively_identity() &&
                (tau * tau * tau).projectively_identity() && !tau.projectively_identity(),
            "sigma1^2 = sigma2^2 = tau^3 = 1 projectively, tau = sigma1 sigma2 nontrivial");

    // Permutations of points and lines.
    std::map<std::string, std::vector<int>> point_perm, line_perm;
    bool perm_ok = true;
    for (const auto& g : P.s3) {
        std::vector<int> pp(16), lp(15);
        try {
            for (int i = 0; i < 16; ++i) pp[static_cast<size_t>(i)] = point_image(P, g.g, i);
            for (int i = 0; i < 15; ++i) lp[static_cast<size_t>(i)] = line_image(P, g.g, i);
        } catch (const std::logic_error&) {
            perm_ok = false;
        }
        point_perm[g.name] = pp;
        line_perm[g.name] = lp;
    }
    rep.add("fig13.permutes", perm_ok, "each group element permutes the 16 points and 15 lines");

    // Per-generator orbit tables (Figs 14 and 15).
    bool table_ok = true;
    std::string bad;
    for (const std::string name : {"sigma1", "sigma2", "sigma3", "tau"}) {
        std::vector<std::vector<std::string>> got_pts;
        for (const auto& orbit : orbit_partition(16, {point_perm[name]})) {
            std::vector<std::string> names;
            for (int idx : orbit) names.push_back(P.point_name(idx));
            std::sort(names.begin(), names.end());
            got_pts.push_back(std::move(names));
        }
        std::sort(got_pts.begin(), got_pts.end());
        if (got_pts != detail_klein::json_partition(fixture.j["vertex_orbits"][name])) {
            table_ok = false;
            bad += name + ":points ";
        }

        std::vector<std::vector<std::string>> got_lines;
        for (const auto& orbit : orbit_partition(15, {line_perm[name]})) {
            std::vector<std::string> names;
            for (int idx : orbit) names.push_back(P.lines[static_cast<size_t>(idx)].id());
            std::sort(names.begin(), names.end());
            got_lines.push_back(std::move(names));
        }
        std::sort(got_lines.begin(), got_lines.end());
        if (got_lines != detail_klein::json_partition(fixture.j["edge_orbits"][name])) {
            table_ok = false;
            bad += name + ":lines ";
        }
    }
    rep.add("fig14_15.orbit_tables", table_ok,
            table_ok ? "per-generator vertex and edge orbit tables match" : "mismatch: " + bad);

    // Z/2 action type on the fixed lines of each involution (Fig 15 colors):
    // trivial when the involution fixes the line pointwise.
    bool color_ok = true;
    for (const std::string name : {"sigma1", "sigma2", "sigma3"}) {
        const ProjTransform& g = P.elt(name).g;
        for (const auto& [lid, kind] : fixture.j["edge_action_type"][name].items()) {
            const ProjLine* line = nullptr;
            for (const auto& l : P.lines)
                if (l.id() == lid) line = &l;
            if (!line) {
                color_ok = false;
                continue;
            }
            const ProjPoint third(line->pi.z[0] + line->pj.z[0], line->pi.z[1] + line->pj.z[1],
                                  line->pi.z[2] + line->pj.z[2]);
            const bool pointwise = g.apply(line->pi) == line->pi && g.apply(line->pj) == line->pj &&
                                   g.apply(third) == third;
            if (pointwise != (kind.get<std::string>() == "trivial")) color_ok = false;
        }
    }
    rep.add("fig15.z2_action", color_ok, "fixed lines carry the stated trivial / nontrivial involution action");

    // Global partitions under the full group.
    std::vector<std::vector<int>> pperms, lperms;
    for (const std::string name : {"sigma1", "sigma2"}) {
        pperms.push_back(point_perm[name]);
        lperms.push_back(line_perm[name]);
    }
    bool part_ok = true;
    {
        std::vector<std::vector<std::string>> got;
        for (const auto& orbit : orbit_partition(16, pperms)) {
            std::vector<std::string> names;
            for (int idx : orbit) names.push_back(P.point_name(idx));
            std::sort(names.begin(), names.end());
            got.push_back(std::move(names));
        }
        std::sort(got.begin(), got.end());
        std::vector<std::vector<std::string>> expect;
        for (const std::string key : {"P1", "P2", "Q1", "Q2", "Q3"}) {
            std::vector<std::string> names;
            for (const auto& n : fixture.j["partitions"][key]) names.push_back(n.get<std::string>());
            std::sort(names.begin(), names.end());
            expect.push_back(std::move(names));
        }
        std::sort(expect.begin(), expect.end());
        part_ok = part_ok && got == expect;
    }
    {
        std::vector<std::vector<std::string>> got;
        for (const auto& orbit : orbit_partition(15, lperms)) {
            std::vector<std::string> names;
            for (int idx : orbit) names.push_back(P.lines[static_cast<size_t>(idx)].id());
            std::sort(names.begin(), names.end());
            got.push_back(std::move(names));
        }
        std::sort(got.begin(), got.end());
        std::vector<std::vector<std::string>> expect;
        for (const std::string key : {"L1", "L2", "L3", "L4"}) {
            std::vector<std::string> names;
            for (const auto& n : fixture.j["partitions"][key]) names.push_back(n.get<std::string>());
            std::sort(names.begin(), names.end());
            expect.push_back(std::move(names));
        }
        std::sort(expect.begin(), expect.end());
        part_ok = part_ok && got == expect;
    }
    rep.add("s3.partitions", part_ok, "S3 orbits realize P1, P2, Q1, Q2, Q3 and L1..L4");

    // Triangle bookkeeping re-verified from incidence: each listed triangle is
    // a genuine triangle with the stated per-side orbit contents.
    bool tri_ok = true;
    std::string tri_bad;
    auto orbit_of_point = [&](int idx) -> std::string {
        for (const std::string key : {"P1", "P2", "Q1", "Q2", "Q3"})
            for (const auto& n : fixture.j["partitions"][key])
                if (n.get<std::string>() == P.point_name(idx)) return key;
        return "?";
    };
    for (const auto& tri : fixture.j["triangles"]) {
        std::vector<const ProjLine*> sides;
        for (const auto& lid : tri["sides"]) {
            for (const auto& l : P.lines)
                if (l.id() == lid.get<std::string>()) sides.push_back(&l);
        }
        if (sides.size() != 3) {
            tri_ok = false;
            continue;
        }
        // Pairwise intersections distinct and not named points.
        std::vector<ProjPoint> verts;
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) verts.push_back(line_intersection(*sides[static_cast<size_t>(a)], *sides[static_cast<size_t>(b)]));
        for (const auto& vert : verts)
            if (P.named_point_index(vert)) tri_ok = false;
        if (verts[0] == verts[1] || verts[0] == verts[2] || verts[1] == verts[2]) tri_ok = false;
        // Side contents by orbit label.
        for (size_t si = 0; si < 3; ++si) {
            std::vector<std::string> labels;
            for (int idx = 0; idx < 16; ++idx) {
                const ProjPoint& p = idx < 6 ? P.v[static_cast<size_t>(idx)] : P.e[static_cast<size_t>(idx - 6)];
                if (on_line(p, *sides[si])) labels.push_back(orbit_of_point(idx));
            }
            std::sort(labels.begin(), labels.end());
            std::vector<std::string> expect;
            for (const auto& n : tri["side_orbits"][si]) expect.push_back(n.get<std::string>());
            std::sort(expect.begin(), expect.end());
            if (labels != expect) {
                tri_ok = false;
                tri_bad += sides[si]->id() + " ";
            }
        }
    }
    rep.add("fig11_12.triangles", tri_ok,
            tri_ok ? "triangle sides carry the stated orbit contents" : "triangle mismatch: " + tri_bad);
    return rep;
}

// ---------------------------------------------------------------------------
// The anti-invariant cubic family of the plane.

struct CubicFamily {
    // family(a) = sum_j a_j * basis[j]; basis normalized so that the free
    // coefficients are those of z1^3, z2^3, z2 z3^2.
    std::array<Cubic, 3> basis{Cubic(3), Cubic(3), Cubic(3)};

    Cubic at(const std::array<QuadElt, 3>& a) const {
        Cubic f = basis[0] * a[0] + basis[1] * a[1] + basis[2] * a[2];
        return f;
    }
    /// Linear row of the vanishing-at-p condition on (a1, a2, a3).
    std::array<QuadElt, 3> vanish_row(const ProjPoint& p) const {
        return {basis[0].eval(p), basis[1].eval(p), basis[2].eval(p)};
    }
};

/// Solves the anti-invariance conditions F(sigma z) = -F(z) for sigma1 and
/// sigma2 on the 10-dimensional cubic coefficient space. The solution space
/// is 3-dimensional; the returned family is normalized on the coefficients of
/// z1^3 (a1), z2^3 (a2) and z2 z3^2 (a3).
inline CubicFamily invariant_family() {
    const KleinPlane& P = klein_plane();
    // Coefficient order: all (i, j) with i + j <= 3.
    std::vector<std::pair<int, int>> monos;
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; i + j <= 3; ++j) monos.emplace_back(i, j);

    std::vector<std::vector<QuadElt>> rows(2 * monos.size(), std::vector<QuadElt>(monos.size()));
    size_t base = 0;
    for (const std::string name : {"sigma1", "sigma2"}) {
        const ProjTransform& g = P.elt(name).g;
        for (size_t col = 0; col < monos.size(); ++col) {
            Cubic basis(3);
            basis.at(monos[col].first, monos[col].second) = QuadElt::one();
            const Cubic pulled = basis.compose(g) + basis; // F(g z) + F(z) = 0
            for (size_t row = 0; row < monos.size(); ++row)
                rows[base + row][col] = pulled.at(monos[row].first, monos[row].second);
        }
        base += monos.size();
    }
    const auto kernel = kernel_basis(rows, monos.size());
    if (kernel.size() != 3) throw std::logic_error("invariant_family: solution space is not 3-dimensional");

    // Normalize so the free coefficients sit on z1^3, z2^3,
    // z2 z3^2.
    auto mono_index = [&](int i, int j) {
        for (size_t t = 0; t < monos.size(); ++t)
            if (monos[t] == std::make_pair(i, j)) return t;
        throw std::logic_error("invariant_family: bad monomial");
    };
    const std::array<size_t, 3> norm_rows = {mono_index(3, 0), mono_index(0, 3), mono_index(0, 1)};
    // Solve S * C = I for the 3x3 change of basis.
    std::array<std::array<QuadElt, 3>, 3> S;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) S[static_cast<size_t>(r)][static_cast<size_t>(c)] = kernel[static_cast<size_t>(c)][norm_rows[static_cast<size_t>(r)]];
    const QuadElt det = det3({S[0][0], S[0][1], S[0][2]}, {S[1][0], S[1][1], S[1][2]},
                             {S[2][0], S[2][1], S[2][2]});
    if (det.is_zero()) throw std::logic_error("invariant_family: normalization is degenerate");
    // Adjugate / det.
    std::array<std::array<QuadElt, 3>, 3> inv;
    auto co = [&](int r, int c) {
        std::array<int, 2> rr, cc;
        int ri = 0, ci = 0;
        for (int t = 0; t < 3; ++t) {
            if (t != r) rr[static_cast<size_t>(ri++)] = t;
            if (t != c) cc[static_cast<size_t>(ci++)] = t;
        }
        QuadElt minor = S[static_cast<size_t>(rr[0])][static_cast<size_t>(cc[0])] * S[static_cast<size_t>(rr[1])][static_cast<size_t>(cc[1])] -
                        S[static_cast<size_t>(rr[0])][static_cast<size_t>(cc[1])] * S[static_cast<size_t>(rr[1])][static_cast<size_t>(cc[0])];
        if ((r + c) % 2 == 1) minor = -minor;
        return minor;
    };
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) inv[static_cast<size_t>(c)][static_cast<size_t>(r)] = co(r, c) / det;

    CubicFamily fam;
    for (int b = 0; b < 3; ++b) {
        Cubic f(3);
        for (size_t t = 0; t < monos.size(); ++t) {
            QuadElt acc;
            for (int kcol = 0; kcol < 3; ++kcol)
                acc += kernel[static_cast<size_t>(kcol)][t] * inv[static_cast<size_t>(kcol)][static_cast<size_t>(b)];
            f.at(monos[t].first, monos[t].second) = acc;
        }
        fam.basis[static_cast<size_t>(b)] = f;
    }
    return fam;
}

/// The even case F(sigma z) = +F(z): a single singular cubic up to scalar.
inline Cubic even_invariant_cubic() {
    const KleinPlane& P = klein_plane();
    std::vector<std::pair<int, int>> monos;
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; i + j <= 3; ++j) monos.emplace_back(i, j);
    std::vector<std::vector<QuadElt>> rows(2 * monos.size(), std::vector<QuadElt>(monos.size()));
    size_t base = 0;
    for (const std::string name : {"sigma1", "sigma2"}) {
        const ProjTransform& g = P.elt(name).g;
        for (size_t col = 0; col < monos.size(); ++col) {
            Cubic basis(3);
            basis.at(monos[col].first, monos[col].second) = QuadElt::one();
            const Cubic pulled = basis.compose(g) - basis; // F(g z) - F(z) = 0
            for (size_t row = 0; row < monos.size(); ++row)
                rows[base + row][col] = pulled.at(monos[row].first, monos[row].second);
        }
        base += monos.size();
    }
    const auto kernel = kernel_basis(rows, monos.size());
    if (kernel.size() != 1) throw std::logic_error("even_invariant_cubic: solution space is not 1-dimensional");
    Cubic f(3);
    for (size_t t = 0; t < monos.size(); ++t) f.at(monos[t].first, monos[t].second) = kernel[0][t];
    return f;
}

} // namespace wedge::plane
