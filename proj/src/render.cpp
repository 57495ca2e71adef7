#include "swarmkit/render.hpp"

#include "swarmkit/trace_io.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <string>

namespace swarmkit {

namespace {

constexpr double kSize = 640;
constexpr double kMargin = 40;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace

void render_svg(std::ostream& out, const ExecutionTrace& trace)
{
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    bool first = true;
    for (const auto& s : trace.steps)
        for (const auto& p : s.positions) {
            double x = p.x.get_d(), y = p.y.get_d();
            if (first) {
                x0 = x1 = x;
                y0 = y1 = y;
                first = false;
            }
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    double span = std::max({x1 - x0, y1 - y0, 1e-9});
    double k = (kSize - 2 * kMargin) / span;
    // y grows upward in the model, downward in SVG
    auto sx = [&](const Point& p) { return kMargin + (p.x.get_d() - x0) * k; };
    auto sy = [&](const Point& p) { return kSize - kMargin - (p.y.get_d() - y0) * k; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize + 30
        << "\" viewBox=\"0 0 " << kSize << " " << kSize + 30 << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (trace.steps.empty()) {
        out << "<text x=\"10\" y=\"20\">empty trace</text>\n</svg>\n";
        return;
    }
    const std::size_t n = trace.steps.front().positions.size();
    for (std::size_t r = 0; r < n && trace.steps.size() > 1; ++r) {
        out << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << kPalette[r % 10] << "\" points=\"";
        for (std::size_t i = 0; i < trace.steps.size(); ++i) {
            const auto& p = trace.steps[i].positions[r];
            if (i && p == trace.steps[i - 1].positions[r])
                continue;
            out << num(sx(p)) << "," << num(sy(p)) << " ";
        }
        out << "\"/>\n";
    }
    const auto& last = trace.steps.back();
    std::map<Point, int> mult;
    for (const auto& p : last.positions)
        ++mult[p];
    for (const auto& [p, m] : mult) {
        out << "<circle cx=\"" << num(sx(p)) << "\" cy=\"" << num(sy(p)) << "\" r=\"5\" fill=\"black\"/>\n";
        if (m > 1)
            out << "<text x=\"" << num(sx(p) + 7) << "\" y=\"" << num(sy(p) - 7) << "\" font-size=\"13\">" << m
                << "</text>\n";
    }
    for (int id : last.crashed) {
        const auto& p = last.positions[static_cast<std::size_t>(id - 1)];
        double cx = sx(p), cy = sy(p);
        out << "<path d=\"M" << num(cx - 8) << "," << num(cy - 8) << " L" << num(cx + 8) << "," << num(cy + 8) << " M"
            << num(cx - 8) << "," << num(cy + 8) << " L" << num(cx + 8) << "," << num(cy - 8)
            << "\" stroke=\"red\" stroke-width=\"2\"/>\n";
    }
    out << "<text x=\"10\" y=\"" << kSize + 20 << "\" font-size=\"14\">n=" << n << " steps=" << trace.steps.size()
        << " verdict=" << verdict_name(trace.verdict.kind) << " t=" << trace.verdict.time
        << " final support=" << mult.size() << " crashed=" << last.crashed.size() << "</text>\n";
    out << "</svg>\n";
}

} // namespace swarmkit
