#include "doctest.h"

#include "wedge/suites.hpp"
#include "wedge/svg.hpp"

#include <algorithm>
#include <fstream>

using namespace wedge;

namespace {

const std::string kFixture = std::string(WEDGE_SOURCE_DIR) + "/data/klein_plane.json";

// Minimal structural validator for the subset of JSON Schema the shipped
// schema uses: type, required, properties, items, enum.
bool validate_schema(const nlohmann::json& schema, const nlohmann::json& value, std::string& err) {
    if (schema.contains("type")) {
        const std::string type = schema["type"];
        const bool ok = (type == "object" && value.is_object()) || (type == "array" && value.is_array()) ||
                        (type == "string" && value.is_string()) || (type == "boolean" && value.is_boolean()) ||
                        (type == "number" && value.is_number());
        if (!ok) {
            err = "expected " + type + ", got " + std::string(value.type_name());
            return false;
        }
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& opt : schema["enum"])
            if (opt == value) found = true;
        if (!found) {
            err = "value not in enum";
            return false;
        }
    }
    if (schema.contains("required"))
        for (const auto& key : schema["required"])
            if (!value.contains(key.get<std::string>())) {
                err = "missing key " + key.get<std::string>();
                return false;
            }
    if (schema.contains("properties") && value.is_object())
        for (const auto& [key, sub] : schema["properties"].items())
            if (value.contains(key) && !validate_schema(sub, value[key], err)) {
                err = key + ": " + err;
                return false;
            }
    if (schema.contains("items") && value.is_array())
        for (const auto& item : value)
            if (!validate_schema(schema["items"], item, err)) return false;
    return true;
}

} // namespace

TEST_CASE("text reports are byte-identical across runs") {
    FinContext ctx1(std::nullopt, 2), ctx2(std::nullopt, 1);
    const std::vector<std::string> names = {"presentation", "torsion", "cover"};
    const std::string a = to_text(run_suites(names, ctx1, kFixture));
    const std::string b = to_text(run_suites(names, ctx2, kFixture));
    CHECK(a == b);
    CHECK(a.find("summary:") != std::string::npos);
    CHECK(a.find("0 failed") != std::string::npos);
}

TEST_CASE("json report validates against the shipped schema") {
    FinContext ctx(std::nullopt, 2);
    const ReportDocument doc = run_suites({"presentation", "cusps", "chern"}, ctx, kFixture);
    const nlohmann::ordered_json j = to_json(doc);

    std::ifstream in(std::string(WEDGE_SOURCE_DIR) + "/schemas/report.schema.json");
    REQUIRE(in.good());
    nlohmann::json schema;
    in >> schema;
    std::string err;
    const bool ok = validate_schema(schema, nlohmann::json::parse(j.dump()), err);
    INFO("schema error: ", err);
    CHECK(ok);

    // The cusp suite reports six orbits with their sizes, and the orbit-size
    // pairing is marked Derived (no published counterpart).
    bool found_sizes = false, found_derived = false;
    for (const auto& s : doc.suites)
        for (const auto& c : s.claims) {
            if (c.id == "prop4.3.orbit_sizes" && c.detail.find("8 8 24 40 40 120") != std::string::npos)
                found_sizes = true;
            if (c.id == "prop4.3.orbit_pairing" && std::string(claim_status(c)) == "Derived")
                found_derived = true;
        }
    CHECK(found_sizes);
    CHECK(found_derived);
}

TEST_CASE("exit-code contract: zero failed claims means all_verified") {
    FinContext ctx(std::nullopt, 2);
    const ReportDocument doc = run_suites({"presentation"}, ctx, kFixture);
    CHECK(doc.failed_count() == 0);
    CHECK(doc.all_verified());

    // A manufactured failing claim flips the flag.
    ReportDocument bad = doc;
    bad.suites[0].claims.push_back({"synthetic.fail", "intentionally failing claim", false, false});
    CHECK(bad.failed_count() == 1);
    CHECK_FALSE(bad.all_verified());
}

TEST_CASE("hull svg output is well-formed") {
    const HullCycle cyc = resolve_cusp(cusp_lattice(cusp_class("lambda8")));
    const std::string svg = hull_svg(cyc);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    // Every period vertex is labeled in the a + bX rendering.
    for (const QuadElt& v : cyc.vertices) {
        std::string label = v.str();
        label.erase(std::remove(label.begin(), label.end(), '*'), label.end());
        CHECK(svg.find(">" + label + "<") != std::string::npos);
    }
    CHECK(svg.find("<path") != std::string::npos);
    // Deterministic output.
    CHECK(hull_svg(cyc) == svg);
}

TEST_CASE("suite registry covers the verification surface") {
    CHECK(suite_names() == std::vector<std::string>{"presentation", "theorem-a", "torsion", "cusps",
                                                    "resolutions", "chern", "cover", "plane"});
    FinContext ctx(std::nullopt, 2);
    CHECK_THROWS_AS(run_suite("nonsense", ctx, kFixture), std::domain_error);
}
