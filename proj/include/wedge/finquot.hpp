#pragma once

// Finite matrix groups over the residue rings: breadth-first closure,
// membership and index, the congruence conditions of the monodromy
// description, and the finite re-verification of the mod-4 sequence, the
// congruence description itself, and the torsion obstruction table.

#include "wedge/matgrp.hpp"
#include "wedge/qfield.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <queue>
#include <thread>
#include <unordered_set>
#include <vector>

namespace wedge {

// ---------------------------------------------------------------------------
// Scalar operation tables per ring (ring sizes are at most 256).

struct RingOps {
    ResidueRing ring;
    std::uint32_t size = 0;
    std::uint16_t zero = 0, one = 0;
    std::vector<std::uint16_t> mul, add, neg;

    std::uint16_t m(std::uint16_t a, std::uint16_t b) const { return mul[a * size + b]; }
    std::uint16_t a(std::uint16_t x, std::uint16_t y) const { return add[x * size + y]; }
    std::uint16_t n(std::uint16_t x) const { return neg[x]; }
};

inline const RingOps& ring_ops(const ResidueRing& ring) {
    static std::vector<RingOps> registry;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    for (const RingOps& o : registry)
        if (o.ring == ring) return o;

    RingOps ops;
    ops.ring = ring;
    // Codes are dense in [0, code_bound): polynomial rings a + n*b, ModP5
    // residues, Mod4P5 pairs mod4 + 16*p5.
    std::uint32_t bound;
    switch (ring.kind) {
        case RingKind::ModP5: bound = 5; break;
        case RingKind::Mod4P5: bound = 80; break;
        default: bound = static_cast<std::uint32_t>(ring.n) * ring.n; break;
    }
    ops.size = bound;
    ops.zero = ring_zero(ring).code;
    ops.one = ring_one(ring).code;
    ops.mul.resize(bound * bound);
    ops.add.resize(bound * bound);
    ops.neg.resize(bound);
    for (std::uint32_t x = 0; x < bound; ++x) {
        const ResidueElt ex{ring, static_cast<std::uint16_t>(x)};
        ops.neg[x] = ring_neg(ex).code;
        for (std::uint32_t y = 0; y < bound; ++y) {
            const ResidueElt ey{ring, static_cast<std::uint16_t>(y)};
            ops.mul[x * bound + y] = ring_mul(ex, ey).code;
            ops.add[x * bound + y] = ring_add(ex, ey).code;
        }
    }
    registry.push_back(std::move(ops));
    return registry.back();
}

// ---------------------------------------------------------------------------
// Matrices over a residue ring, packed as 16 bits per entry.

struct FinMat {
    ResidueRing ring;
    std::array<std::uint16_t, 4> e{};

    bool operator==(const FinMat& o) const { return ring == o.ring && e == o.e; }

    std::uint64_t key() const {
        return static_cast<std::uint64_t>(e[0]) | static_cast<std::uint64_t>(e[1]) << 16 |
               static_cast<std::uint64_t>(e[2]) << 32 | static_cast<std::uint64_t>(e[3]) << 48;
    }
    static FinMat from_key(const ResidueRing& ring, std::uint64_t k) {
        return FinMat{ring,
                      {static_cast<std::uint16_t>(k & 0xFFFF), static_cast<std::uint16_t>(k >> 16 & 0xFFFF),
                       static_cast<std::uint16_t>(k >> 32 & 0xFFFF), static_cast<std::uint16_t>(k >> 48 & 0xFFFF)}};
    }
};

inline FinMat fin_identity(const ResidueRing& ring) {
    const RingOps& o = ring_ops(ring);
    return FinMat{ring, {o.one, o.zero, o.zero, o.one}};
}

inline FinMat fin_mul(const RingOps& o, const FinMat& x, const FinMat& y) {
    return FinMat{x.ring,
                  {o.a(o.m(x.e[0], y.e[0]), o.m(x.e[1], y.e[2])), o.a(o.m(x.e[0], y.e[1]), o.m(x.e[1], y.e[3])),
                   o.a(o.m(x.e[2], y.e[0]), o.m(x.e[3], y.e[2])), o.a(o.m(x.e[2], y.e[1]), o.m(x.e[3], y.e[3]))}};
}

inline FinMat fin_neg(const RingOps& o, const FinMat& x) {
    return FinMat{x.ring, {o.n(x.e[0]), o.n(x.e[1]), o.n(x.e[2]), o.n(x.e[3])}};
}

inline std::uint16_t fin_det(const RingOps& o, const FinMat& x) {
    return o.a(o.m(x.e[0], x.e[3]), o.n(o.m(x.e[1], x.e[2])));
}

/// Adjugate inverse, valid for determinant 1.
inline FinMat fin_inv_det1(const RingOps& o, const FinMat& x) {
    if (fin_det(o, x) != o.one) throw std::domain_error("fin_inv_det1: det != 1");
    return FinMat{x.ring, {x.e[3], o.n(x.e[1]), o.n(x.e[2]), x.e[0]}};
}

/// Canonical representative key of the class {M, -M}: the smaller packed key.
inline std::uint64_t psl_key(const RingOps& o, const FinMat& x) {
    return std::min(x.key(), fin_neg(o, x).key());
}

inline FinMat reduce_mat(const Mat2& m, const ResidueRing& ring) {
    return FinMat{ring,
                  {reduce(m.at(0, 0), ring).code, reduce(m.at(0, 1), ring).code, reduce(m.at(1, 0), ring).code,
                   reduce(m.at(1, 1), ring).code}};
}

/// Word evaluation directly in the finite quotient.
inline FinMat eval_word_mod(const Word& w, const ResidueRing& ring) {
    const RingOps& o = ring_ops(ring);
    FinMat acc = fin_identity(ring);
    for (const Word::Run& r : w.runs()) {
        FinMat g = reduce_mat(gen_matrix(r.sym), ring);
        int e = r.exp;
        if (e < 0) {
            g = fin_inv_det1(o, g);
            e = -e;
        }
        for (int i = 0; i < e; ++i) acc = fin_mul(o, acc, g);
    }
    return acc;
}

inline int element_order(const RingOps& o, const FinMat& m, int bound = 10000) {
    FinMat acc = m;
    const FinMat id = fin_identity(m.ring);
    for (int n = 1; n <= bound; ++n) {
        if (acc == id) return n;
        acc = fin_mul(o, acc, m);
    }
    throw std::runtime_error("element_order: bound exceeded");
}

// ---------------------------------------------------------------------------
// Explicitly enumerated groups.

struct FinGroup {
    ResidueRing ring;
    bool psl_mode = false;
    std::vector<std::uint64_t> gen_keys;  // canonical, sorted, deduplicated
    std::vector<std::uint64_t> elements;  // sorted packed keys
    std::unordered_set<std::uint64_t> member;

    std::size_t order() const { return elements.size(); }
    bool contains(std::uint64_t key) const { return member.count(key) > 0; }
    bool contains(const FinMat& m) const {
        const RingOps& o = ring_ops(ring);
        return contains(psl_mode ? psl_key(o, m) : m.key());
    }
};

/// Breadth-first closure of the generated group. Deterministic: the element
/// list is the sorted key set, independent of generator order and of the
/// worker count.
inline FinGroup closure(const ResidueRing& ring, const std::vector<FinMat>& gens, bool psl_mode = false,
                        int jobs = 1) {
    if (gens.empty()) throw std::domain_error("closure: no generators");
    const RingOps& o = ring_ops(ring);
    for (const FinMat& g : gens)
        if (!(g.ring == ring)) throw std::domain_error("closure: generator over wrong ring");

    auto canon = [&](const FinMat& m) { return psl_mode ? psl_key(o, m) : m.key(); };

    FinGroup out;
    out.ring = ring;
    out.psl_mode = psl_mode;
    for (const FinMat& g : gens) out.gen_keys.push_back(canon(g));
    std::sort(out.gen_keys.begin(), out.gen_keys.end());
    out.gen_keys.erase(std::unique(out.gen_keys.begin(), out.gen_keys.end()), out.gen_keys.end());

    std::unordered_set<std::uint64_t> visited;
    visited.reserve(1 << 16);
    std::vector<std::uint64_t> frontier;
    const std::uint64_t id_key = canon(fin_identity(ring));
    visited.insert(id_key);
    frontier.push_back(id_key);
    for (std::uint64_t gk : out.gen_keys)
        if (visited.insert(gk).second) frontier.push_back(gk);

    std::vector<FinMat> gen_mats;
    for (std::uint64_t gk : out.gen_keys) gen_mats.push_back(FinMat::from_key(ring, gk));

    while (!frontier.empty()) {
        std::vector<std::uint64_t> produced;
        auto expand_range = [&](size_t lo, size_t hi, std::vector<std::uint64_t>& sink) {
            for (size_t i = lo; i < hi; ++i) {
                const FinMat m = FinMat::from_key(ring, frontier[i]);
                for (const FinMat& g : gen_mats) sink.push_back(canon(fin_mul(o, m, g)));
            }
        };
        if (jobs <= 1 || frontier.size() < 512) {
            expand_range(0, frontier.size(), produced);
        } else {
            const int workers = std::min<int>(jobs, 8);
            std::vector<std::vector<std::uint64_t>> parts(static_cast<size_t>(workers));
            std::vector<std::thread> threads;
            const size_t chunk = (frontier.size() + workers - 1) / workers;
            for (int w = 0; w < workers; ++w) {
                const size_t lo = std::min(frontier.size(), w * chunk);
                const size_t hi = std::min(frontier.size(), lo + chunk);
                threads.emplace_back([&, lo, hi, w] { expand_range(lo, hi, parts[static_cast<size_t>(w)]); });
            }
            for (auto& t : threads) t.join();
            for (auto& part : parts) produced.insert(produced.end(), part.begin(), part.end());
        }
        std::vector<std::uint64_t> next;
        for (std::uint64_t k : produced)
            if (visited.insert(k).second) next.push_back(k);
        frontier = std::move(next);
    }

    out.elements.assign(visited.begin(), visited.end());
    std::sort(out.elements.begin(), out.elements.end());
    out.member = std::move(visited);
    return out;
}

/// |g| / |h| for a subgroup h of g. Domain error when h is not contained in g
/// or the ambient data disagree.
inline std::size_t index(const FinGroup& g, const FinGroup& h) {
    if (!(g.ring == h.ring) || g.psl_mode != h.psl_mode)
        throw std::domain_error("index: mismatched groups");
    for (std::uint64_t k : h.elements)
        if (!g.contains(k)) throw std::domain_error("index: not a subgroup");
    if (g.order() % h.order() != 0) throw std::domain_error("index: order does not divide");
    return g.order() / h.order();
}

// ---------------------------------------------------------------------------
// Binary cache for enumerated element sets, keyed by a generator fingerprint.

inline std::uint64_t group_fingerprint(const ResidueRing& ring, const std::vector<std::uint64_t>& gen_keys,
                                       bool psl_mode) {
    std::uint64_t h = 1469598103934665603ull; // FNV-1a
    auto mix = [&](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= v & 0xFF;
            h *= 1099511628211ull;
            v >>= 8;
        }
    };
    mix(static_cast<std::uint64_t>(ring.kind));
    mix(ring.n);
    mix(psl_mode ? 1 : 0);
    for (std::uint64_t k : gen_keys) mix(k);
    return h;
}

constexpr std::uint32_t kCacheMagic = 0x57464743; // "WFGC"

inline void save_group_cache(const FinGroup& g, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("save_group_cache: cannot open " + path.string());
    auto put32 = [&](std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); };
    auto put64 = [&](std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); };
    put32(kCacheMagic);
    put32(1); // version
    put32(static_cast<std::uint32_t>(g.ring.kind));
    put32(g.ring.n);
    put32(g.psl_mode ? 1 : 0);
    put32(static_cast<std::uint32_t>(g.gen_keys.size()));
    put64(group_fingerprint(g.ring, g.gen_keys, g.psl_mode));
    put64(g.elements.size());
    for (std::uint64_t k : g.gen_keys) put64(k);
    for (std::uint64_t k : g.elements) put64(k);
}

inline std::optional<FinGroup> load_group_cache(const ResidueRing& ring,
                                                const std::vector<std::uint64_t>& gen_keys, bool psl_mode,
                                                const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    auto get32 = [&]() -> std::uint32_t {
        std::uint32_t v = 0;
        in.read(reinterpret_cast<char*>(&v), 4);
        return v;
    };
    auto get64 = [&]() -> std::uint64_t {
        std::uint64_t v = 0;
        in.read(reinterpret_cast<char*>(&v), 8);
        return v;
    };
    if (get32() != kCacheMagic || get32() != 1) return std::nullopt;
    if (get32() != static_cast<std::uint32_t>(ring.kind) || get32() != ring.n) return std::nullopt;
    if ((get32() != 0) != psl_mode) return std::nullopt;
    const std::uint32_t ngens = get32();
    const std::uint64_t fp = get64();
    const std::uint64_t count = get64();
    if (fp != group_fingerprint(ring, gen_keys, psl_mode)) return std::nullopt;
    std::vector<std::uint64_t> gens(ngens);
    for (auto& k : gens) k = get64();
    if (gens != gen_keys) return std::nullopt;
    FinGroup g;
    g.ring = ring;
    g.psl_mode = psl_mode;
    g.gen_keys = gens;
    g.elements.resize(count);
    for (auto& k : g.elements) k = get64();
    if (!in) return std::nullopt;
    g.member.insert(g.elements.begin(), g.elements.end());
    return g;
}

/// Closure with an optional on-disk cache directory.
inline FinGroup closure_cached(const ResidueRing& ring, const std::vector<FinMat>& gens, bool psl_mode,
                               const std::optional<std::filesystem::path>& cache_dir, int jobs = 1) {
    std::vector<std::uint64_t> gen_keys;
    const RingOps& o = ring_ops(ring);
    for (const FinMat& g : gens) gen_keys.push_back(psl_mode ? psl_key(o, g) : g.key());
    std::sort(gen_keys.begin(), gen_keys.end());
    gen_keys.erase(std::unique(gen_keys.begin(), gen_keys.end()), gen_keys.end());

    std::filesystem::path file;
    if (cache_dir) {
        char name[32];
        std::snprintf(name, sizeof(name), "%016llx.fgc",
                      static_cast<unsigned long long>(group_fingerprint(ring, gen_keys, psl_mode)));
        file = *cache_dir / name;
        if (auto g = load_group_cache(ring, gen_keys, psl_mode, file)) return *g;
    }
    FinGroup g = closure(ring, gens, psl_mode, jobs);
    if (cache_dir) {
        std::filesystem::create_directories(*cache_dir);
        save_group_cache(g, file);
    }
    return g;
}

// ---------------------------------------------------------------------------
// Congruence conditions.

enum class CongCondition { UnipotentModP5, Mod4C4, Mod2InF2 };

/// Reduce a Mod4 matrix coordinate-wise to Mod2.
inline FinMat fin_mod4_to_mod2(const FinMat& m) {
    if (m.ring.kind != RingKind::Mod4) throw std::domain_error("fin_mod4_to_mod2: wrong ring");
    FinMat r{ResidueRing::mod2(), {}};
    for (int i = 0; i < 4; ++i)
        r.e[static_cast<size_t>(i)] = mod4_to_mod2(ResidueElt{m.ring, m.e[static_cast<size_t>(i)]}).code;
    return r;
}

/// Components of a Mod4P5 matrix.
inline FinMat fin_crt_mod4(const FinMat& m) {
    if (m.ring.kind != RingKind::Mod4P5) throw std::domain_error("fin_crt_mod4: wrong ring");
    FinMat r{ResidueRing::mod4(), {}};
    for (int i = 0; i < 4; ++i) r.e[static_cast<size_t>(i)] = m.e[static_cast<size_t>(i)] % 16;
    return r;
}
inline FinMat fin_crt_p5(const FinMat& m) {
    if (m.ring.kind != RingKind::Mod4P5) throw std::domain_error("fin_crt_p5: wrong ring");
    FinMat r{ResidueRing::modp5(), {}};
    for (int i = 0; i < 4; ++i) r.e[static_cast<size_t>(i)] = m.e[static_cast<size_t>(i)] / 16;
    return r;
}

/// For a Mod4 matrix congruent to the identity mod 2, the matrix M over F4
/// with m = I + 2M (entry codes halved coordinate-wise).
inline std::optional<FinMat> mod4_kernel_part(const FinMat& m) {
    if (m.ring.kind != RingKind::Mod4) throw std::domain_error("mod4_kernel_part: wrong ring");
    const FinMat id = fin_identity(ResidueRing::mod4());
    const RingOps& o = ring_ops(ResidueRing::mod4());
    FinMat r{ResidueRing::mod2(), {}};
    for (int i = 0; i < 4; ++i) {
        const std::uint16_t diff = o.a(m.e[static_cast<size_t>(i)], o.n(id.e[static_cast<size_t>(i)]));
        const unsigned a = diff % 4, b = diff / 4;
        if (a % 2 != 0 || b % 2 != 0) return std::nullopt;
        r.e[static_cast<size_t>(i)] = static_cast<std::uint16_t>(a / 2 + 2 * (b / 2));
    }
    return r;
}

/// Tr_{F4/F2}(c + dX) = d: the trace form defining C4 on x1, x2, x3 with
/// x4 = x1 (trace zero in characteristic 2).
inline bool trace_form_zero(const FinMat& sl2_elt) {
    if (sl2_elt.ring.kind != RingKind::Mod2) throw std::domain_error("trace_form_zero: wrong ring");
    const RingOps& o = ring_ops(ResidueRing::mod2());
    const std::uint16_t sum = o.a(o.a(sl2_elt.e[0], sl2_elt.e[1]), sl2_elt.e[2]);
    return sum / 2 == 0;
}

inline bool check_condition(const FinMat& m, CongCondition c) {
    switch (c) {
        case CongCondition::UnipotentModP5: {
            if (m.ring.kind != RingKind::ModP5) throw std::domain_error("check_condition: need ModP5");
            const RingOps& o = ring_ops(m.ring);
            // Characteristic polynomial (t - 1)^2 over F5: trace 2, det 1.
            return o.a(m.e[0], m.e[3]) == 2 && fin_det(o, m) == 1;
        }
        case CongCondition::Mod4C4: {
            if (m.ring.kind != RingKind::Mod4) throw std::domain_error("check_condition: need Mod4");
            const auto part = mod4_kernel_part(m);
            if (!part) return false;
            // Trace zero (x4 = x1) plus the trace form.
            if (part->e[0] != part->e[3]) return false;
            return trace_form_zero(*part);
        }
        case CongCondition::Mod2InF2: {
            if (m.ring.kind != RingKind::Mod2) throw std::domain_error("check_condition: need Mod2");
            for (int i = 0; i < 4; ++i)
                if (!in_prime_subfield(ResidueElt{m.ring, m.e[static_cast<size_t>(i)]})) return false;
            return true;
        }
    }
    throw std::logic_error("check_condition: bad condition");
}

// ---------------------------------------------------------------------------
// Structured verification reports.

struct CheckItem {
    std::string id;
    std::string detail;
    bool ok = false;
    bool derived = false; // computed value with no published counterpart
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckItem> items;
    bool all_ok() const {
        for (const auto& i : items)
            if (!i.ok) return false;
        return true;
    }
    void add(std::string id, bool ok, std::string detail, bool derived = false) {
        items.push_back({std::move(id), std::move(detail), ok, derived});
    }
};

inline std::vector<FinMat> reduce_all(const std::vector<Mat2>& mats, const ResidueRing& ring) {
    std::vector<FinMat> out;
    out.reserve(mats.size());
    for (const Mat2& m : mats) out.push_back(reduce_mat(m, ring));
    return out;
}

inline std::vector<Mat2> sl2_generator_matrices() {
    return {gen_matrix(Sym::Z0), gen_matrix(Sym::Sigma), gen_matrix(Sym::Mu), gen_matrix(Sym::Tau),
            gen_matrix(Sym::Eta)};
}

inline std::vector<Mat2> monodromy_matrices() {
    std::vector<Mat2> out;
    for (const auto& g : monodromy_generators()) out.push_back(g.matrix);
    return out;
}

/// Matrices with entries in O_o whose mod-4 reductions generate the image of
/// SL2(O_o): sigma, tau, z0, eta^2 and the four monodromy generators.
inline std::vector<Mat2> oo_generator_matrices() {
    std::vector<Mat2> out = {gen_matrix(Sym::Z0), gen_matrix(Sym::Sigma), gen_matrix(Sym::Tau),
                             eval_word(Word::parse("e^2")), eval_word(Word::parse("m^6"))};
    for (const auto& g : monodromy_generators()) out.push_back(g.matrix);
    for (const Mat2& m : out)
        if (!entries_in_Oo(m)) throw std::logic_error("oo_generator_matrices: entry outside O_o");
    return out;
}

/// The mod-4 sequence 1 -> sl2(F4) -> SL2(R4) -> SL2(F4) -> 1 and the O_o
/// pullback statement.
inline SuiteReport verify_mod4_sequence(int jobs = 1) {
    SuiteReport rep{"mod4-sequence", {}};
    const ResidueRing r4 = ResidueRing::mod4();
    const RingOps& o4 = ring_ops(r4);

    const FinGroup g4 = closure(r4, reduce_all(sl2_generator_matrices(), r4), false, jobs);
    rep.add("lem3.2.sl2r4_order", g4.order() == 3840, "|SL2(R4)| = " + std::to_string(g4.order()));

    // Kernel of reduction to SL2(F4).
    const FinMat id2 = fin_identity(ResidueRing::mod2());
    std::vector<FinMat> kernel;
    for (std::uint64_t k : g4.elements) {
        const FinMat m = FinMat::from_key(r4, k);
        if (fin_mod4_to_mod2(m) == id2) kernel.push_back(m);
    }
    rep.add("lem3.2.kernel64", kernel.size() == 64, "kernel order = " + std::to_string(kernel.size()));

    // Every kernel element is I + 2M with trace(M) = 0, and M ranges over all
    // of sl2(F4).
    bool shape_ok = true, iso_ok = true, exp_two_ok = true;
    std::unordered_set<std::uint64_t> images;
    for (const FinMat& m : kernel) {
        const auto part = mod4_kernel_part(m);
        if (!part || part->e[0] != part->e[3]) {
            shape_ok = false;
            continue;
        }
        images.insert(part->key());
        if (!(fin_mul(o4, m, m) == fin_identity(r4))) exp_two_ok = false;
    }
    rep.add("lem3.2.kernel_shape", shape_ok, "kernel elements have the form I + 2M, trace(M) = 0");

    std::unordered_set<std::uint64_t> sl2f4;
    for (std::uint16_t x1 = 0; x1 < 4; ++x1)
        for (std::uint16_t x2 = 0; x2 < 4; ++x2)
            for (std::uint16_t x3 = 0; x3 < 4; ++x3)
                sl2f4.insert(FinMat{ResidueRing::mod2(), {x1, x2, x3, x1}}.key());
    rep.add("lem3.2.lie_onto", images == sl2f4,
            "(I + 2M) -> M is onto sl2(F4), image size " + std::to_string(images.size()));

    // Additivity: (I+2M1)(I+2M2) -> M1 + M2.
    const RingOps& o2 = ring_ops(ResidueRing::mod2());
    for (const FinMat& m1 : kernel) {
        for (const FinMat& m2 : kernel) {
            const auto p1 = mod4_kernel_part(m1), p2 = mod4_kernel_part(m2);
            const auto p12 = mod4_kernel_part(fin_mul(o4, m1, m2));
            if (!p1 || !p2 || !p12) {
                iso_ok = false;
                break;
            }
            FinMat sum{ResidueRing::mod2(), {}};
            for (int i = 0; i < 4; ++i)
                sum.e[static_cast<size_t>(i)] = o2.a(p1->e[static_cast<size_t>(i)], p2->e[static_cast<size_t>(i)]);
            if (!(sum == *p12)) {
                iso_ok = false;
                break;
            }
        }
        if (!iso_ok) break;
    }
    rep.add("lem3.2.lie_additive", iso_ok, "(I + 2M) -> M is an isomorphism onto (sl2(F4), +)");
    rep.add("lem3.2.exponent2", exp_two_ok, "kernel is elementary abelian of exponent 2");

    const FinGroup g2 = closure(ResidueRing::mod2(), reduce_all(sl2_generator_matrices(), ResidueRing::mod2()),
                                false, jobs);
    rep.add("lem2.1.surjective", g2.order() == 60 && g4.order() / kernel.size() == 60,
            "|SL2(F4)| = " + std::to_string(g2.order()) + ", quotient order = " +
                std::to_string(g4.order() / kernel.size()));

    // Image of SL2(O_o) is the full pullback of SL2(F2).
    const FinGroup goo = closure(r4, reduce_all(oo_generator_matrices(), r4), false, jobs);
    std::unordered_set<std::uint64_t> pullback;
    for (std::uint64_t k : g4.elements) {
        const FinMat m = FinMat::from_key(r4, k);
        if (check_condition(fin_mod4_to_mod2(m), CongCondition::Mod2InF2)) pullback.insert(k);
    }
    const bool pb_ok = goo.member == pullback && goo.order() == 384;
    rep.add("lem3.2.oo_pullback", pb_ok,
            "image of SL2(O_o) generators has order " + std::to_string(goo.order()) +
                ", pullback of SL2(F2) has order " + std::to_string(pullback.size()));
    return rep;
}

// ---------------------------------------------------------------------------
// Shared enumeration context for the level-4p5 computations.

class FinContext {
public:
    explicit FinContext(std::optional<std::filesystem::path> cache_dir = std::nullopt, int jobs = 1)
        : cache_dir_(std::move(cache_dir)), jobs_(jobs) {}

    int jobs() const { return jobs_; }

    /// Full SL2(O / 4p5), order 460800.
    const FinGroup& full_sl() {
        if (!full_sl_)
            full_sl_ = closure_cached(ResidueRing::mod4p5(), reduce_all(sl2_generator_matrices(), ResidueRing::mod4p5()),
                                      false, cache_dir_, jobs_);
        return *full_sl_;
    }
    /// Image of the monodromy group in SL2(O / 4p5), order 960.
    const FinGroup& monodromy_sl() {
        if (!mono_sl_)
            mono_sl_ = closure_cached(ResidueRing::mod4p5(), reduce_all(monodromy_matrices(), ResidueRing::mod4p5()),
                                      false, cache_dir_, jobs_);
        return *mono_sl_;
    }
    /// Full PSL2(O / 4p5), order 230400.
    const FinGroup& full_psl() {
        if (!full_psl_)
            full_psl_ = closure_cached(ResidueRing::mod4p5(), reduce_all(sl2_generator_matrices(), ResidueRing::mod4p5()),
                                       true, cache_dir_, jobs_);
        return *full_psl_;
    }
    /// Image of the monodromy group in PSL2(O / 4p5), order 960.
    const FinGroup& monodromy_psl() {
        if (!mono_psl_)
            mono_psl_ = closure_cached(ResidueRing::mod4p5(), reduce_all(monodromy_matrices(), ResidueRing::mod4p5()),
                                       true, cache_dir_, jobs_);
        return *mono_psl_;
    }
    /// Image of the upper-triangular subgroup <mu, tau, eta> in PSL2(O / 4p5).
    const FinGroup& delta_psl() {
        if (!delta_psl_) {
            const std::vector<Mat2> gens = {gen_matrix(Sym::Mu), gen_matrix(Sym::Tau), gen_matrix(Sym::Eta)};
            delta_psl_ = closure_cached(ResidueRing::mod4p5(), reduce_all(gens, ResidueRing::mod4p5()), true,
                                        cache_dir_, jobs_);
        }
        return *delta_psl_;
    }

private:
    std::optional<std::filesystem::path> cache_dir_;
    int jobs_;
    std::optional<FinGroup> full_sl_, mono_sl_, full_psl_, mono_psl_, delta_psl_;
};

// ---------------------------------------------------------------------------
// The congruence description of the monodromy.

/// Verifies the finite content of the congruence description over O / 4p5:
/// index 480, the unipotent mod-p5 image, the mod-2 image SL2(F2), the
/// C4 kernel intersection mod 4, and that membership in the image is exactly
/// componentwise membership (the "completely describes" claim, equivalent to
/// containing the level-4p5 congruence subgroup).
inline SuiteReport verify_theorem_A(FinContext& ctx) {
    SuiteReport rep{"theorem-a", {}};
    const ResidueRing J = ResidueRing::mod4p5();

    const FinGroup& G = ctx.full_sl();
    const FinGroup& H = ctx.monodromy_sl();
    rep.add("thmA.G_order", G.order() == 460800, "|SL2(O/4p5)| = " + std::to_string(G.order()));
    const std::size_t idx = index(G, H);
    rep.add("thmA.index480", idx == 480,
            "index of the monodromy image = " + std::to_string(idx) + " (|image| = " + std::to_string(H.order()) + ")");

    // Condition 1: the mod-p5 image is the order-5 unipotent group.
    std::unordered_set<std::uint64_t> p5_image;
    bool p5_unipotent = true;
    for (std::uint64_t k : H.elements) {
        const FinMat p = fin_crt_p5(FinMat::from_key(J, k));
        p5_image.insert(p.key());
        if (!check_condition(p, CongCondition::UnipotentModP5)) p5_unipotent = false;
    }
    rep.add("thmA.cond1", p5_image.size() == 5 && p5_unipotent,
            "mod-p5 image has order " + std::to_string(p5_image.size()) + ", all unipotent");

    // Mod-2 image equals SL2(F2).
    std::unordered_set<std::uint64_t> mod2_image;
    bool mod2_in_f2 = true;
    for (std::uint64_t k : H.elements) {
        const FinMat two = fin_mod4_to_mod2(fin_crt_mod4(FinMat::from_key(J, k)));
        mod2_image.insert(two.key());
        if (!check_condition(two, CongCondition::Mod2InF2)) mod2_in_f2 = false;
    }
    std::unordered_set<std::uint64_t> sl2f2;
    {
        const RingOps& o2 = ring_ops(ResidueRing::mod2());
        for (std::uint16_t a = 0; a < 2; ++a)
            for (std::uint16_t b = 0; b < 2; ++b)
                for (std::uint16_t c = 0; c < 2; ++c)
                    for (std::uint16_t d = 0; d < 2; ++d) {
                        const FinMat m{ResidueRing::mod2(), {a, b, c, d}};
                        if (fin_det(o2, m) == o2.one) sl2f2.insert(m.key());
                    }
    }
    rep.add("thmA.mod2_image", mod2_in_f2 && mod2_image == sl2f2,
            "mod-2 image has order " + std::to_string(mod2_image.size()) + " and equals SL2(F2)");

    // Condition 2: the mod-4 image meets the kernel of reduction mod 2 in C4.
    std::unordered_set<std::uint64_t> mod4_image;
    for (std::uint64_t k : H.elements) mod4_image.insert(fin_crt_mod4(FinMat::from_key(J, k)).key());
    std::unordered_set<std::uint64_t> kernel_meet; // as sl2(F4) keys
    bool kernel_in_c4 = true;
    for (std::uint64_t k : mod4_image) {
        const FinMat m = FinMat::from_key(ResidueRing::mod4(), k);
        const auto part = mod4_kernel_part(m);
        if (!part) continue;
        kernel_meet.insert(part->key());
        if (!check_condition(m, CongCondition::Mod4C4)) kernel_in_c4 = false;
    }
    std::unordered_set<std::uint64_t> c4;
    for (std::uint16_t x1 = 0; x1 < 4; ++x1)
        for (std::uint16_t x2 = 0; x2 < 4; ++x2)
            for (std::uint16_t x3 = 0; x3 < 4; ++x3) {
                const FinMat m{ResidueRing::mod2(), {x1, x2, x3, x1}};
                if (trace_form_zero(m)) c4.insert(m.key());
            }
    rep.add("thmA.cond2.kernel", kernel_in_c4 && kernel_meet == c4 && kernel_meet.size() == 32,
            "mod-4 image meets the 64-element kernel in " + std::to_string(kernel_meet.size()) +
                " elements, equal to C4");
    rep.add("thmA.cond2.extension", mod4_image.size() == 192 && mod4_image.size() == 32 * mod2_image.size(),
            "mod-4 image order " + std::to_string(mod4_image.size()) + " = |C4| * |SL2(F2)|");

    // mu^3 represents the nontrivial C4 coset and avoids the monodromy image.
    {
        const Mat2 mu3 = eval_word(Word::parse("m^3"));
        const FinMat m4 = reduce_mat(mu3, ResidueRing::mod4());
        const auto part = mod4_kernel_part(m4);
        const bool in_kernel = part.has_value() && part->e[0] == part->e[3];
        const bool fails_c4 = !check_condition(m4, CongCondition::Mod4C4);
        const bool outside = mod4_image.count(m4.key()) == 0;
        rep.add("thmA.mu3", in_kernel && fails_c4 && outside,
                "mu^3 lies in the mod-2 kernel, fails the trace form, and is outside the mod-4 image");
    }

    // The filter by componentwise membership recovers the image exactly.
    {
        bool equal = true;
        std::size_t count = 0;
        for (std::uint64_t k : G.elements) {
            const FinMat g = FinMat::from_key(J, k);
            const bool in_filter =
                p5_image.count(fin_crt_p5(g).key()) > 0 && mod4_image.count(fin_crt_mod4(g).key()) > 0;
            if (in_filter) ++count;
            if (in_filter != H.contains(k)) equal = false;
        }
        rep.add("thmA.K_eq_H", equal && count == H.order(),
                "componentwise congruence filter selects " + std::to_string(count) +
                    " of 460800 elements, equal to the monodromy image");
    }

    // Group orders reproduced exactly (60, 3840, 64, 460800, 6).
    {
        const FinGroup g2 =
            closure(ResidueRing::mod2(), reduce_all(sl2_generator_matrices(), ResidueRing::mod2()), false, ctx.jobs());
        const FinGroup g4 =
            closure(ResidueRing::mod4(), reduce_all(sl2_generator_matrices(), ResidueRing::mod4()), false, ctx.jobs());
        std::size_t kernel4 = 0;
        const FinMat id2 = fin_identity(ResidueRing::mod2());
        for (std::uint64_t k : g4.elements)
            if (fin_mod4_to_mod2(FinMat::from_key(ResidueRing::mod4(), k)) == id2) ++kernel4;
        const bool ok = g2.order() == 60 && g4.order() == 3840 && kernel4 == 64 && G.order() == 460800 &&
                        mod2_image.size() == 6;
        rep.add("thmA.orders", ok,
                "orders: mod2 " + std::to_string(g2.order()) + ", mod4 " + std::to_string(g4.order()) +
                    ", mod4 kernel " + std::to_string(kernel4) + ", mod4p5 " + std::to_string(G.order()) +
                    ", monodromy mod2 " + std::to_string(mod2_image.size()));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Torsion obstruction table.

/// Characteristic polynomial t^2 - tr t + 1 data for the candidate torsion
/// orders, reduced modulo p5 and compared with (t - 1)^2, plus the two
/// special arguments for n = 4 and n = 5.
inline SuiteReport torsion_obstruction(FinContext& ctx) {
    SuiteReport rep{"torsion", {}};
    const ResidueRing p5 = ResidueRing::modp5();

    struct Row {
        const char* id;
        int n;
        QuadElt lin_coeff; // linear coefficient of p_n(t) = t^2 + lin_coeff t + 1
        const char* label;
    };
    const QuadElt X = QuadElt::X();
    const std::vector<Row> rows = {
        {"lem4.1.p2", 2, QuadElt(2), "p_2 = (t+1)^2"},
        {"lem4.1.p3", 3, QuadElt(1), "p_3 = t^2 + t + 1"},
        {"lem4.1.p5", 5, X, "p_5 = t^2 + X t + 1"},
        {"lem4.1.p5_conj", 5, QuadElt::one() - X, "p_5 conjugate"},
        {"lem4.1.p6", 6, QuadElt(-1), "p_6 = t^2 - t + 1"},
        {"lem4.1.p10", 10, -X, "p_10 = t^2 - X t + 1"},
        {"lem4.1.p10_conj", 10, X - QuadElt::one(), "p_10 conjugate"},
    };
    // (t - 1)^2 = t^2 - 2t + 1: linear coefficient -2 = 3 mod 5.
    const std::uint16_t target_lin = 3, target_const = 1;
    for (const Row& row : rows) {
        const std::uint16_t lin = reduce(row.lin_coeff, p5).code;
        const std::uint16_t cst = reduce(QuadElt::one(), p5).code;
        const bool matches_unipotent = lin == target_lin && cst == target_const;
        const bool ok = row.n == 5 ? matches_unipotent : !matches_unipotent;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s reduces to t^2 + %u t + %u mod p5 (target (t-1)^2 = t^2 + 3t + 1)",
                      row.label, lin, cst);
        rep.add(row.id, ok, buf);
    }

    // n = 5: t^2 + Xt + 1 (and its conjugate) has no root in F4.
    {
        const RingOps& o2 = ring_ops(ResidueRing::mod2());
        bool irreducible = true;
        for (const QuadElt& tr : {X, QuadElt::one() - X}) {
            const std::uint16_t trc = reduce(tr, ResidueRing::mod2()).code;
            for (std::uint16_t t = 0; t < 4; ++t) {
                const std::uint16_t val = o2.a(o2.a(o2.m(t, t), o2.m(trc, t)), o2.one);
                if (val == o2.zero) irreducible = false;
            }
        }
        rep.add("lem4.1.p5_irreducible_f4", irreducible, "p_5 and its conjugate have no root in F4");
    }

    // n = 5 second half: the order-6 mod-2 image of the monodromy contains no
    // element of order 5.
    {
        const FinGroup g2 =
            closure(ResidueRing::mod2(), reduce_all(monodromy_matrices(), ResidueRing::mod2()), false, ctx.jobs());
        const RingOps& o2 = ring_ops(ResidueRing::mod2());
        bool ok = g2.order() == 6;
        for (std::uint64_t k : g2.elements)
            if (element_order(o2, FinMat::from_key(ResidueRing::mod2(), k)) == 5) ok = false;
        rep.add("lem4.1.no_order5_mod2", ok,
                "mod-2 image has order " + std::to_string(g2.order()) + " with element orders dividing 6");
    }

    // n = 4: excluded because z0 is not in the monodromy group.
    {
        const FinMat z0 = reduce_mat(gen_matrix(Sym::Z0), ResidueRing::mod4p5());
        rep.add("lem4.1.z0_not_in_image", !ctx.monodromy_sl().contains(z0.key()),
                "image of z0 mod 4p5 lies outside the monodromy image");
    }
    return rep;
}

} // namespace wedge
