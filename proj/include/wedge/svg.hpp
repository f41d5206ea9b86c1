#pragma once

// SVG rendering of a cusp resolution: axes, the window of totally positive
// lattice points, the hull boundary, and vertex labels. The exact embedding
// values are converted to doubles only here, at render time.

#include "wedge/cusps.hpp"

#include <cstdio>
#include <string>

namespace wedge {

namespace detail_svg {

inline std::string label_of(const QuadElt& v) {
    std::string s = v.str();
    std::string out;
    for (char c : s)
        if (c != '*') out.push_back(c);
    return out;
}

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

} // namespace detail_svg

inline std::string hull_svg(const HullCycle& cyc) {
    using detail::emb1;
    using detail::emb2;
    const CuspLattice& lat = cyc.lattice;
    const QuadElt& u = cyc.unit_oriented;

    // Three periods of boundary vertices around the computed one.
    std::vector<QuadElt> boundary;
    for (int t : {-1, 0, 1})
        for (const QuadElt& v : cyc.vertices) boundary.push_back(v * u.pow(t));
    std::sort(boundary.begin(), boundary.end(),
              [](const QuadElt& a, const QuadElt& b) { return (a - b).sign_at(Place::First) < 0; });

    // View window framing the central period.
    double xmax = 0, ymax = 0;
    for (const QuadElt& v : cyc.vertices) {
        xmax = std::max(xmax, emb1(v));
        ymax = std::max(ymax, emb2(v));
    }
    xmax *= 1.35;
    ymax *= 1.35;

    const double W = 640, H = 640, margin = 40;
    auto sx = [&](double x) { return margin + x / xmax * (W - 2 * margin); };
    auto sy = [&](double y) { return H - margin - y / ymax * (H - 2 * margin); };

    std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" height=\"640\" "
                      "viewBox=\"0 0 640 640\">\n";
    svg += "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
    // Axes.
    svg += "<line x1=\"" + detail_svg::num(sx(0)) + "\" y1=\"" + detail_svg::num(sy(0)) + "\" x2=\"" +
           detail_svg::num(sx(xmax)) + "\" y2=\"" + detail_svg::num(sy(0)) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + detail_svg::num(sx(0)) + "\" y1=\"" + detail_svg::num(sy(0)) + "\" x2=\"" +
           detail_svg::num(sx(0)) + "\" y2=\"" + detail_svg::num(sy(ymax)) + "\" stroke=\"black\"/>\n";

    // Lattice points of the window (small dots).
    {
        const double a1 = emb1(lat.t1), a2 = emb2(lat.t1);
        const double b1 = emb1(lat.t2), b2 = emb2(lat.t2);
        const double D = a1 * b2 - a2 * b1;
        double mlo = 0, mhi = 0;
        bool first = true;
        for (double x : {0.0, xmax})
            for (double y : {0.0, ymax}) {
                const double m = (x * b2 - y * b1) / D;
                if (first) {
                    mlo = mhi = m;
                    first = false;
                } else {
                    mlo = std::min(mlo, m);
                    mhi = std::max(mhi, m);
                }
            }
        for (long m = static_cast<long>(std::floor(mlo)) - 1; m <= static_cast<long>(std::ceil(mhi)) + 1; ++m)
            for (long n = -400; n <= 400; ++n) {
                const double x = m * a1 + n * b1, y = m * a2 + n * b2;
                if (x <= 0 || y <= 0 || x > xmax || y > ymax) continue;
                const QuadElt v = lat.t1 * Rat(m) + lat.t2 * Rat(n);
                if (!v.is_totally_positive()) continue;
                svg += "<circle cx=\"" + detail_svg::num(sx(x)) + "\" cy=\"" + detail_svg::num(sy(y)) +
                       "\" r=\"1.5\" fill=\"black\"/>\n";
            }
    }

    // Hull boundary and dashed rays from the origin, as in the figures.
    std::string path;
    for (const QuadElt& v : boundary) {
        const double x = emb1(v), y = emb2(v);
        path += (path.empty() ? "M" : " L") + std::string(" ") + detail_svg::num(sx(std::min(x, xmax * 2))) +
                " " + detail_svg::num(sy(std::min(y, ymax * 2)));
    }
    svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"red\" stroke-width=\"1.5\"/>\n";

    for (const QuadElt& v : cyc.vertices) {
        const double x = emb1(v), y = emb2(v);
        if (x > xmax || y > ymax) continue;
        svg += "<line x1=\"" + detail_svg::num(sx(0)) + "\" y1=\"" + detail_svg::num(sy(0)) + "\" x2=\"" +
               detail_svg::num(sx(x)) + "\" y2=\"" + detail_svg::num(sy(y)) +
               "\" stroke=\"gray\" stroke-dasharray=\"4 3\" stroke-width=\"0.6\"/>\n";
        svg += "<circle cx=\"" + detail_svg::num(sx(x)) + "\" cy=\"" + detail_svg::num(sy(y)) +
               "\" r=\"3\" fill=\"red\"/>\n";
        svg += "<text x=\"" + detail_svg::num(sx(x) + 6) + "\" y=\"" + detail_svg::num(sy(y) - 6) +
               "\" font-size=\"11\" fill=\"red\">" + detail_svg::label_of(v) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace wedge
