#include "fdmc/svg.hpp"

#include <cstdarg>
#include <cstdio>
#include <functional>

namespace fdmc::svg {

namespace {

constexpr double kScale = 80.0;  // pixels per parameter unit
constexpr const char* kFree = "#ffffff";
constexpr const char* kBlocked = "#32506e";
constexpr const char* kGrid = "#9a9a9a";
constexpr const char* kPath = "#d62728";

void appendf(std::string& out, const char* fmt, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, fmt);
    vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    out += buf;
}

std::string render_grid(int Pa, int Pb, int res,
                        const std::function<bool(double, double)>& free_at,
                        const std::optional<MatchingWitness>& witness) {
    double w = Pa * kScale, h = Pb * kScale;
    std::string out;
    appendf(out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
            "viewBox=\"0 0 %.0f %.0f\">\n",
            w + 2, h + 2, w + 2, h + 2);
    appendf(out, "<rect x=\"0\" y=\"0\" width=\"%.0f\" height=\"%.0f\" fill=\"%s\"/>\n", w + 2,
            h + 2, kFree);
    // blocked sample boxes; the y axis points up in parameter space
    double step = 1.0 / res;
    for (int j = 0; j < Pb * res; ++j) {
        for (int i = 0; i < Pa * res; ++i) {
            double x = (i + 0.5) * step, y = (j + 0.5) * step;
            if (free_at(x, y)) continue;
            appendf(out,
                    "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"%s\"/>\n",
                    1.0 + i * step * kScale, 1.0 + h - (j + 1) * step * kScale, step * kScale,
                    step * kScale, kBlocked);
        }
    }
    for (int i = 0; i <= Pa; ++i)
        appendf(out,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" "
                "stroke-width=\"0.5\"/>\n",
                1.0 + i * kScale, 1.0, 1.0 + i * kScale, 1.0 + h, kGrid);
    for (int j = 0; j <= Pb; ++j)
        appendf(out,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" "
                "stroke-width=\"0.5\"/>\n",
                1.0, 1.0 + h - j * kScale, 1.0 + w, 1.0 + h - j * kScale, kGrid);
    if (witness && witness->kind == MatchingWitness::Kind::Positional) {
        out += "<polyline fill=\"none\" stroke=\"";
        out += kPath;
        out += "\" stroke-width=\"2\" points=\"";
        for (const auto& [x, y] : witness->pi.breakpoints)
            appendf(out, "%.3f,%.3f ", 1.0 + x * kScale, 1.0 + h - y * kScale);
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace

std::string render_fsd_ic(const QuadMesh& a, const QuadMesh& b, double eps, NormKind norm,
                          int res, const std::optional<MatchingWitness>& witness) {
    auto free_at = [&](double x, double y) {
        for (int t = 0; t <= a.T; ++t) {
            Point pa = eval_mesh(a, x, double(t));
            Point pb = eval_mesh(b, y, double(t));
            if (distance(pa, pb, norm) > eps) return false;
        }
        return true;
    };
    return render_grid(a.P, b.P, res, free_at, witness);
}

std::string render_fsd_id_slice(const QuadMesh& a, const QuadMesh& b, double eps, NormKind norm,
                                double t, int res) {
    auto free_at = [&](double x, double y) {
        return distance(eval_mesh(a, x, t), eval_mesh(b, y, t), norm) <= eps;
    };
    return render_grid(a.P, b.P, res, free_at, std::nullopt);
}

}  // namespace fdmc::svg
