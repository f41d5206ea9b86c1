#pragma once

// Named verification suites over all modules, aggregated into report
// documents with stable claim ids, plus JSON and text serialization.

#include "wedge/covers.hpp"
#include "wedge/cubic_cases.hpp"
#include "wedge/cusps.hpp"
#include "wedge/finquot.hpp"

#include "json.hpp"

#include <chrono>

namespace wedge {

inline const char* kToolVersion = "1.0.0";

inline SuiteReport presentation_suite() {
    SuiteReport rep{"presentation", {}};
    for (const auto& [id, prefix] : {std::pair<PresentationId, std::string>{PresentationId::SL, "cor2.3."},
                                     {PresentationId::PSL, "thm2.2."},
                                     {PresentationId::Delta, "lem4.3."}}) {
        const PresentationReport pres = check_presentation(id);
        for (const auto& c : pres.checks)
            rep.add(prefix + c.name, c.ok,
                    c.word.str() + " evaluates to " + (c.value.is_identity() ? "identity" : c.value.str()));
    }
    try {
        for (const auto& g : monodromy_generators()) {
            rep.add("lem2.4." + g.name, eval_word(g.word) == g.matrix,
                    g.word.str() + " evaluates to the stated matrix");
            rep.add("lem2.4." + g.name + ".Oo", entries_in_Oo(g.matrix) && g.matrix.det() == QuadElt::one(),
                    "entries lie in O_o and the determinant is 1");
        }
    } catch (const std::exception& e) {
        rep.add("lem2.4.generators", false, e.what());
    }
    return rep;
}

inline SuiteReport theorem_a_suite(FinContext& ctx) {
    SuiteReport rep = verify_theorem_A(ctx);
    rep.suite = "theorem-a";
    for (const CheckItem& item : verify_mod4_sequence(ctx.jobs()).items) rep.items.push_back(item);
    return rep;
}

inline SuiteReport torsion_suite(FinContext& ctx) { return torsion_obstruction(ctx); }

inline SuiteReport cusps_suite(FinContext& ctx) {
    const CosetTable table = build_coset_table(ctx);
    return verify_cusp_counting(ctx, table);
}

inline SuiteReport resolutions_suite() { return verify_resolutions(); }

inline SuiteReport chern_suite(FinContext& ctx) { return verify_chern(ctx); }

inline SuiteReport cover_suite() { return verify_cover(); }

inline std::vector<SuiteReport> plane_suites(const std::string& fixture_path) {
    return plane::verify_plane(plane::KleinFixture::load(fixture_path));
}

// ---------------------------------------------------------------------------
// Aggregated documents.

struct SuiteRun {
    std::string name;
    double elapsed_ms = 0;
    std::vector<CheckItem> claims;
};

struct ReportDocument {
    std::string tool = "wedge";
    std::string version = kToolVersion;
    std::vector<SuiteRun> suites;

    int failed_count() const {
        int n = 0;
        for (const auto& s : suites)
            for (const auto& c : s.claims)
                if (!c.ok) ++n;
        return n;
    }
    bool all_verified() const { return failed_count() == 0; }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"presentation", "theorem-a", "torsion", "cusps",
                                                   "resolutions",  "chern",     "cover",   "plane"};
    return names;
}

/// Runs one named suite (module suites in dependency order are handled by the
/// caller iterating suite_names()).
inline std::vector<SuiteReport> run_suite(const std::string& name, FinContext& ctx,
                                          const std::string& fixture_path) {
    if (name == "presentation") return {presentation_suite()};
    if (name == "theorem-a") return {theorem_a_suite(ctx)};
    if (name == "torsion") return {torsion_suite(ctx)};
    if (name == "cusps") return {cusps_suite(ctx)};
    if (name == "resolutions") return {resolutions_suite()};
    if (name == "chern") return {chern_suite(ctx)};
    if (name == "cover") return {cover_suite()};
    if (name == "plane") return plane_suites(fixture_path);
    throw std::domain_error("run_suite: unknown suite " + name);
}

inline ReportDocument run_suites(const std::vector<std::string>& names, FinContext& ctx,
                                 const std::string& fixture_path) {
    ReportDocument doc;
    for (const std::string& name : names) {
        const auto start = std::chrono::steady_clock::now();
        std::vector<SuiteReport> reports;
        try {
            reports = run_suite(name, ctx, fixture_path);
        } catch (const std::exception& e) {
            SuiteReport err{name, {}};
            err.add(name + ".exception", false, e.what());
            reports = {err};
        }
        const auto stop = std::chrono::steady_clock::now();
        SuiteRun run;
        run.name = name;
        run.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        for (const auto& rep : reports)
            for (const auto& item : rep.items) run.claims.push_back(item);
        doc.suites.push_back(std::move(run));
    }
    return doc;
}

inline const char* claim_status(const CheckItem& c) {
    if (!c.ok) return "Failed";
    return c.derived ? "Derived" : "Verified";
}

/// Deterministic text rendering: the comparison body carries no timings.
inline std::string to_text(const ReportDocument& doc) {
    std::string out = doc.tool + " verification report\n";
    int verified = 0, derived = 0, failed = 0;
    for (const auto& s : doc.suites) {
        out += "suite " + s.name + "\n";
        for (const auto& c : s.claims) {
            const std::string status = claim_status(c);
            (status == "Failed" ? failed : status == "Derived" ? derived : verified)++;
            out += "  [" + status + "] " + c.id + ": " + c.detail + "\n";
        }
    }
    out += "summary: " + std::to_string(verified) + " verified, " + std::to_string(derived) + " derived, " +
           std::to_string(failed) + " failed\n";
    return out;
}

/// JSON rendering with fixed key order; timings live in per-suite metadata.
inline nlohmann::ordered_json to_json(const ReportDocument& doc) {
    nlohmann::ordered_json j;
    j["tool"] = doc.tool;
    j["version"] = doc.version;
    j["all_verified"] = doc.all_verified();
    j["suites"] = nlohmann::ordered_json::array();
    for (const auto& s : doc.suites) {
        nlohmann::ordered_json js;
        js["name"] = s.name;
        js["elapsed_ms"] = s.elapsed_ms;
        js["claims"] = nlohmann::ordered_json::array();
        for (const auto& c : s.claims) {
            nlohmann::ordered_json jc;
            jc["id"] = c.id;
            jc["status"] = claim_status(c);
            jc["detail"] = c.detail;
            js["claims"].push_back(std::move(jc));
        }
        j["suites"].push_back(std::move(js));
    }
    return j;
}

} // namespace wedge
