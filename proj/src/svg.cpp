#include "stsamp/svg.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stsamp {

namespace {

struct Mapper {
    double R;
    int px;
    double to_px_x(double x) const { return (x + R) / (2.0 * R) * px; }
    double to_px_y(double y) const { return (R - y) / (2.0 * R) * px; }
};

// Linear interpolation of the zero crossing between two grid corners.
double crossing(double v0, double v1) { return v0 / (v0 - v1); }

void marching_squares(std::ostringstream& out, const CurvilinearLattice& l, const Mapper& map) {
    const int n = 256;
    const double R = map.R;
    const double h = 2.0 * R / n;
    std::vector<double> row0(n + 1), row1(n + 1);
    for (int j = 0; j <= n; ++j) row0[j] = residual(l, {-R + j * h, -R});
    out << "<path fill=\"none\" stroke=\"#4069b0\" stroke-width=\"1\" d=\"";
    for (int i = 0; i < n; ++i) {
        const double y0 = -R + i * h, y1 = y0 + h;
        for (int j = 0; j <= n; ++j) row1[j] = residual(l, {-R + j * h, y1});
        for (int j = 0; j < n; ++j) {
            const double x0 = -R + j * h, x1 = x0 + h;
            const double v00 = row0[j], v10 = row0[j + 1], v01 = row1[j], v11 = row1[j + 1];
            int mask = 0;
            if (v00 > 0) mask |= 1;
            if (v10 > 0) mask |= 2;
            if (v11 > 0) mask |= 4;
            if (v01 > 0) mask |= 8;
            if (mask == 0 || mask == 15) continue;
            // Edge midpoints by linear interpolation: bottom, right, top, left.
            Vec2 pts[4];
            bool has[4] = {false, false, false, false};
            if ((mask & 1) != (mask >> 1 & 1)) { pts[0] = {x0 + h * crossing(v00, v10), y0}; has[0] = true; }
            if ((mask >> 1 & 1) != (mask >> 2 & 1)) { pts[1] = {x1, y0 + h * crossing(v10, v11)}; has[1] = true; }
            if ((mask >> 3 & 1) != (mask >> 2 & 1)) { pts[2] = {x0 + h * crossing(v01, v11), y1}; has[2] = true; }
            if ((mask & 1) != (mask >> 3 & 1)) { pts[3] = {x0, y0 + h * crossing(v00, v01)}; has[3] = true; }
            Vec2 seg[4];
            int cnt = 0;
            for (int e = 0; e < 4; ++e)
                if (has[e] && cnt < 4) seg[cnt++] = pts[e];
            for (int e = 0; e + 1 < cnt; e += 2) {
                out << "M" << map.to_px_x(seg[e].x) << " " << map.to_px_y(seg[e].y) << "L"
                    << map.to_px_x(seg[e + 1].x) << " " << map.to_px_y(seg[e + 1].y);
            }
        }
        std::swap(row0, row1);
    }
    out << "\"/>\n";
}

} // namespace

std::string render_svg(const PointSet2& s, const std::optional<CurvilinearLattice>& overlay,
                       int pixels) {
    const Mapper map{s.window_radius(), pixels};
    std::ostringstream out;
    out.precision(6);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pixels << "\" height=\"" << pixels
        << "\" viewBox=\"0 0 " << pixels << " " << pixels << "\">\n";
    out << "<rect width=\"" << pixels << "\" height=\"" << pixels << "\" fill=\"white\"/>\n";
    // axes through the origin
    out << "<line x1=\"0\" y1=\"" << map.to_px_y(0) << "\" x2=\"" << pixels << "\" y2=\""
        << map.to_px_y(0) << "\" stroke=\"#cccccc\"/>\n";
    out << "<line x1=\"" << map.to_px_x(0) << "\" y1=\"0\" x2=\"" << map.to_px_x(0) << "\" y2=\""
        << pixels << "\" stroke=\"#cccccc\"/>\n";
    if (overlay) marching_squares(out, *overlay, map);
    const double rad = std::max(1.5, pixels / 400.0);
    for (const Vec2& p : s.points())
        out << "<circle cx=\"" << map.to_px_x(p.x) << "\" cy=\"" << map.to_px_y(p.y) << "\" r=\""
            << rad << "\" fill=\"#c03030\"/>\n";
    out << "</svg>\n";
    return out.str();
}

void write_svg(const std::string& path, const PointSet2& s,
               const std::optional<CurvilinearLattice>& overlay, int pixels) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_svg: cannot open " + path);
    f << render_svg(s, overlay, pixels);
}

} // namespace stsamp
