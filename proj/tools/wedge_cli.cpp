// Command-line front end: verification suites, cusp resolutions with SVG
// figures, aggregated reports, the candidate cubics, and coset orbit data.

#include "wedge/suites.hpp"
#include "wedge/svg.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

std::string default_fixture_path(const char* argv0) {
    namespace fs = std::filesystem;
    // Look for data/klein_plane.json beside the binary's ancestors; fall back
    // to the compiled-in source path.
    std::error_code ec;
    fs::path exe = fs::canonical(fs::path(argv0), ec);
    if (!ec) {
        for (fs::path dir = exe.parent_path(); !dir.empty(); dir = dir.parent_path()) {
            const fs::path cand = dir / "data" / "klein_plane.json";
            if (fs::exists(cand)) return cand.string();
            if (dir == dir.root_path()) break;
        }
    }
    return std::string(WEDGE_SOURCE_DIR) + "/data/klein_plane.json";
}

std::string cycle_string(const std::vector<long>& b_values) {
    const std::vector<long> canon = wedge::canonical_cycle(b_values);
    std::string out = "(";
    for (size_t i = 0; i < canon.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(-canon[i]);
    }
    return out + ")";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification toolkit for the Wiman-Edge monodromy, its cusp resolutions, and the "
                 "invariant plane cubics"};
    app.require_subcommand(1);

    std::string cache_dir;
    int jobs = 1;
    std::string fixture = default_fixture_path(argv[0]);
    app.add_option("--cache", cache_dir, "Directory for the enumeration cache");
    app.add_option("--jobs", jobs, "Worker threads for the closure computations")->check(CLI::Range(1, 64));
    app.add_option("--fixture", fixture, "Path to the Klein plane fixture file");

    auto* verify = app.add_subcommand("verify", "Run a verification suite (exit 0 iff all claims verify)");
    std::string suite = "all";
    std::vector<std::string> suite_choices = wedge::suite_names();
    suite_choices.push_back("all");
    verify->add_option("suite", suite, "Suite name")->check(CLI::IsMember(suite_choices));

    auto* resolve = app.add_subcommand("resolve", "Resolve a cusp and print its self-intersection cycle");
    std::string cusp;
    std::string svg_path;
    resolve->add_option("cusp", cusp, "One of lambda8, lambda24, lambda40, lambda120")->required();
    resolve->add_option("--svg", svg_path, "Write the hull figure to this SVG file");

    auto* report = app.add_subcommand("report", "Aggregate every suite into one document");
    std::string format = "text";
    report->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));

    auto* cubics = app.add_subcommand("cubics", "Print the two candidate monodromy plane cubics");
    auto* orbits = app.add_subcommand("orbits", "Print the coset orbit data behind the cusp count");

    CLI11_PARSE(app, argc, argv);

    std::optional<std::filesystem::path> cache;
    if (!cache_dir.empty()) cache = cache_dir;
    wedge::FinContext ctx(cache, jobs);

    try {
        if (verify->parsed()) {
            const std::vector<std::string> names =
                suite == "all" ? wedge::suite_names() : std::vector<std::string>{suite};
            const wedge::ReportDocument doc = wedge::run_suites(names, ctx, fixture);
            std::cout << wedge::to_text(doc);
            if (!doc.all_verified()) {
                for (const auto& s : doc.suites)
                    for (const auto& c : s.claims)
                        if (!c.ok) {
                            std::cerr << "first failing claim: " << c.id << "\n";
                            return 1;
                        }
            }
            return 0;
        }
        if (resolve->parsed()) {
            const wedge::CuspClass& cls = wedge::cusp_class(cusp);
            const wedge::HullCycle cyc = wedge::resolve_cusp(wedge::cusp_lattice(cls));
            std::cout << cycle_string(cyc.b_values) << "\n";
            if (!svg_path.empty()) {
                std::ofstream out(svg_path);
                if (!out) {
                    std::cerr << "cannot write " << svg_path << "\n";
                    return 1;
                }
                out << wedge::hull_svg(cyc);
            }
            return 0;
        }
        if (report->parsed()) {
            const wedge::ReportDocument doc = wedge::run_suites(wedge::suite_names(), ctx, fixture);
            if (format == "json")
                std::cout << wedge::to_json(doc).dump(2) << "\n";
            else
                std::cout << wedge::to_text(doc);
            return doc.all_verified() ? 0 : 1;
        }
        if (cubics->parsed()) {
            const wedge::plane::CaseAnalysis analysis = wedge::plane::run_case_analysis();
            std::cout << "candidate monodromy plane cubics (" << analysis.survivors.size() << "):\n";
            int idx = 1;
            for (const auto& c : analysis.survivors) std::cout << "  #" << idx++ << ": " << c.str() << "\n";
            return analysis.survivors.size() == 2 ? 0 : 1;
        }
        if (orbits->parsed()) {
            const wedge::CosetTable table = wedge::build_coset_table(ctx);
            const auto orbs = wedge::cusp_orbits(table);
            std::cout << "cosets of the upper-triangular image: " << table.reps.size() << "\n";
            std::cout << "monodromy orbits: " << orbs.size() << "\n";
            for (size_t i = 0; i < orbs.size(); ++i)
                std::cout << "  orbit " << i + 1 << ": size " << orbs[i].members.size()
                          << ", representative coset " << orbs[i].representative << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
