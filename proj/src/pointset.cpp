#include "stsamp/pointset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "stsamp/rng.hpp"

namespace stsamp {

void GeneratorConfig::validate() const {
    switch (kind) {
        case Kind::rect_lattice:
        case Kind::perturbed_lattice:
            if (spacing <= 0.0) throw std::invalid_argument("generator: spacing must be positive");
            break;
        case Kind::jittered_delone:
            if (spacing <= 0.0) throw std::invalid_argument("generator: spacing must be positive");
            if (jitter < 0.0) throw std::invalid_argument("generator: jitter must be nonnegative");
            if (jitter >= 0.5 * spacing)
                throw std::invalid_argument("generator: jitter must be < spacing/2 to keep the set uniformly discrete");
            break;
        case Kind::concentric_circles:
            if (arc_spacing <= 0.0) throw std::invalid_argument("generator: arc spacing must be positive");
            break;
        case Kind::from_file:
            if (path.empty()) throw std::invalid_argument("generator: from_file needs a path");
            break;
    }
}

PointSet2::PointSet2(std::vector<Vec2> points, double window_radius,
                     std::optional<GeneratorConfig> source)
    : points_(std::move(points)), window_radius_(window_radius), source_(std::move(source)) {
    if (!(window_radius_ > 0.0)) throw std::invalid_argument("PointSet2: window radius must be positive");
    for (const Vec2& p : points_) {
        if (p.norm_inf() > window_radius_ * (1.0 + 1e-12))
            throw std::invalid_argument("PointSet2: point outside the window [-R,R]^2");
    }
}

double PointSet2::separation_constant() const {
    if (separation_) return *separation_;
    if (points_.size() < 2) throw std::invalid_argument("separation_constant: insufficient points");

    // Plane sweep over x-sorted points; near-linear for uniformly discrete sets.
    std::vector<Vec2> sorted = points_;
    std::sort(sorted.begin(), sorted.end(),
              [](const Vec2& a, const Vec2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    const std::size_t n = sorted.size();
    double best2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = sorted[j].x - sorted[i].x;
            if (dx * dx >= best2) break;
            const double dy = sorted[j].y - sorted[i].y;
            const double d2 = dx * dx + dy * dy;
            if (d2 < best2) best2 = d2;
        }
    }
    const double sep = std::sqrt(best2);
    if (sep == 0.0) throw std::invalid_argument("PointSet2: coincident points");
    separation_ = sep;
    return sep;
}

namespace {

double perturb_x(std::int64_t m, std::int64_t n) {
    const double e = static_cast<double>(m) * static_cast<double>(m) +
                     static_cast<double>(n) * static_cast<double>(n);
    return std::exp2(-e);
}

double perturb_y(std::int64_t m, std::int64_t n) {
    const double e = static_cast<double>(std::llabs(m) + std::llabs(n));
    return std::exp2(-e);
}

// Emit all points of the configured infinite set inside center + [-R, R]^2.
void emit_window(const GeneratorConfig& cfg, const Vec2& c, double R, std::vector<Vec2>& out) {
    const double lox = c.x - R, hix = c.x + R;
    const double loy = c.y - R, hiy = c.y + R;
    const auto inside = [&](const Vec2& p) {
        return p.x >= lox && p.x <= hix && p.y >= loy && p.y <= hiy;
    };

    switch (cfg.kind) {
        case GeneratorConfig::Kind::rect_lattice: {
            const double s = cfg.spacing;
            const auto n0 = static_cast<std::int64_t>(std::ceil(lox / s - 1e-12));
            const auto n1 = static_cast<std::int64_t>(std::floor(hix / s + 1e-12));
            const auto m0 = static_cast<std::int64_t>(std::ceil(loy / s - 1e-12));
            const auto m1 = static_cast<std::int64_t>(std::floor(hiy / s + 1e-12));
            for (std::int64_t n = n0; n <= n1; ++n)
                for (std::int64_t m = m0; m <= m1; ++m) {
                    Vec2 p{s * static_cast<double>(n), s * static_cast<double>(m)};
                    if (inside(p)) out.push_back(p);
                }
            break;
        }
        case GeneratorConfig::Kind::perturbed_lattice: {
            // (2 pi n + 2^{-(m^2+n^2)}, 2 pi m + 2^{-(|m|+|n|)}); the spacing
            // field is fixed at 2 pi by the construction.
            const double s = kTwoPi;
            const auto n0 = static_cast<std::int64_t>(std::floor(lox / s) - 1);
            const auto n1 = static_cast<std::int64_t>(std::ceil(hix / s) + 1);
            const auto m0 = static_cast<std::int64_t>(std::floor(loy / s) - 1);
            const auto m1 = static_cast<std::int64_t>(std::ceil(hiy / s) + 1);
            for (std::int64_t n = n0; n <= n1; ++n)
                for (std::int64_t m = m0; m <= m1; ++m) {
                    Vec2 p{s * static_cast<double>(n) + perturb_x(m, n),
                           s * static_cast<double>(m) + perturb_y(m, n)};
                    if (inside(p)) out.push_back(p);
                }
            break;
        }
        case GeneratorConfig::Kind::jittered_delone: {
            const double s = cfg.spacing;
            const auto n0 = static_cast<std::int64_t>(std::floor(lox / s) - 1);
            const auto n1 = static_cast<std::int64_t>(std::ceil(hix / s) + 1);
            const auto m0 = static_cast<std::int64_t>(std::floor(loy / s) - 1);
            const auto m1 = static_cast<std::int64_t>(std::ceil(hiy / s) + 1);
            for (std::int64_t n = n0; n <= n1; ++n)
                for (std::int64_t m = m0; m <= m1; ++m) {
                    // Per-index hashed jitter: the same lattice index always gets
                    // the same offset, so windows of different radii are nested.
                    std::uint64_t h = hash_index(cfg.seed, n, m);
                    std::uint64_t h2 = splitmix64(h);
                    const double jx = cfg.jitter * (2.0 * u64_to_unit(h) - 1.0);
                    const double jy = cfg.jitter * (2.0 * u64_to_unit(h2) - 1.0);
                    Vec2 p{s * static_cast<double>(n) + jx, s * static_cast<double>(m) + jy};
                    if (inside(p)) out.push_back(p);
                }
            break;
        }
        case GeneratorConfig::Kind::concentric_circles: {
            // Circles of radius 2 pi k; points at equal arc length starting at
            // angle 0.  The per-circle count floor(2 pi r / arc) makes the
            // actual spacing >= arc, keeping the set uniformly discrete.
            const double corner = std::max({std::hypot(lox, loy), std::hypot(lox, hiy),
                                            std::hypot(hix, loy), std::hypot(hix, hiy)});
            const double cdist = c.norm();
            const auto k1 = static_cast<std::int64_t>(std::floor(corner / kTwoPi));
            const auto k0 = std::max<std::int64_t>(
                1, static_cast<std::int64_t>(std::ceil((cdist > R * 1.42 ? cdist - R * 1.42 : 0.0) / kTwoPi)));
            for (std::int64_t k = k0; k <= k1; ++k) {
                const double r = kTwoPi * static_cast<double>(k);
                const auto cnt = static_cast<std::int64_t>(std::floor(kTwoPi * r / cfg.arc_spacing));
                if (cnt < 1) continue;
                const double dith = kTwoPi / static_cast<double>(cnt);
                // Restrict to the angular range that can reach the box.
                double th_lo = 0.0, th_hi = kTwoPi;
                if (cdist > R * 1.5 && r > 2.0 * R) {
                    const double th_c = std::atan2(c.y, c.x);
                    const double half = std::asin(std::min(1.0, (R * 1.5) / r)) + 2.0 * dith;
                    th_lo = th_c - half;
                    th_hi = th_c + half;
                }
                auto j0 = static_cast<std::int64_t>(std::floor(th_lo / dith)) - 1;
                auto j1 = static_cast<std::int64_t>(std::ceil(th_hi / dith)) + 1;
                if (j1 - j0 >= cnt) { j0 = 0; j1 = cnt - 1; }
                for (std::int64_t j = j0; j <= j1; ++j) {
                    const std::int64_t jj = ((j % cnt) + cnt) % cnt;
                    const double th = dith * static_cast<double>(jj);
                    Vec2 p{r * std::cos(th), r * std::sin(th)};
                    if (inside(p)) out.push_back(p);
                }
            }
            // De-duplicate wrapped indices from the angular window.
            std::sort(out.begin(), out.end(), [](const Vec2& a, const Vec2& b) {
                return a.x < b.x || (a.x == b.x && a.y < b.y);
            });
            out.erase(std::unique(out.begin(), out.end(), [](const Vec2& a, const Vec2& b) {
                          return a.x == b.x && a.y == b.y;
                      }),
                      out.end());
            break;
        }
        case GeneratorConfig::Kind::from_file:
            throw std::invalid_argument("generator: from_file cannot be window-generated; use load_points");
    }
}

} // namespace

PointSet2 gen(const GeneratorConfig& config, double R) {
    config.validate();
    if (!(R > 0.0)) throw std::invalid_argument("gen: window radius must be positive");
    if (config.kind == GeneratorConfig::Kind::from_file) {
        return load_points(config.path, R);
    }
    std::vector<Vec2> pts;
    emit_window(config, Vec2{0.0, 0.0}, R, pts);
    return PointSet2(std::move(pts), R, config);
}

PointSet2 gen_translated_window(const GeneratorConfig& config, const Vec2& center, double R) {
    config.validate();
    if (!(R > 0.0)) throw std::invalid_argument("gen_translated_window: window radius must be positive");
    std::vector<Vec2> pts;
    emit_window(config, center, R, pts);
    for (Vec2& p : pts) p = p - center;
    // Shifted coordinates can overshoot the window by roundoff; clamp-filter.
    std::vector<Vec2> kept;
    kept.reserve(pts.size());
    for (const Vec2& p : pts)
        if (p.norm_inf() <= R) kept.push_back(p);
    return PointSet2(std::move(kept), R);
}

PointSet2 translate(const PointSet2& s, const Vec2& v) {
    std::vector<Vec2> pts;
    pts.reserve(s.size());
    const double R = s.window_radius();
    for (const Vec2& p : s.points()) {
        const Vec2 q = p - v;
        if (q.norm_inf() <= R) pts.push_back(q);
    }
    return PointSet2(std::move(pts), R);
}

double relative_density_gap(const PointSet2& s, double probe_radius) {
    if (!(probe_radius > 0.0)) throw std::invalid_argument("relative_density_gap: probe radius must be positive");
    const double half = 0.5 * s.window_radius();
    if (!(probe_radius < half)) throw std::invalid_argument("relative_density_gap: probe radius must be < R/2");
    if (s.empty()) return probe_radius;

    // Center grid over [-R/2, R/2]^2; the empty-disc radius is 1-Lipschitz in
    // the center, so a step h underestimates the maximum by at most h/sqrt(2).
    const double h = std::min(0.05, half / 64.0);
    const int nside = static_cast<int>(std::floor(2.0 * half / h)) + 1;

    // Cell list over the points for nearest-distance queries.
    const auto& pts = s.points();
    double best = 0.0;
#pragma omp parallel for schedule(static) reduction(max : best)
    for (int iy = 0; iy < nside; ++iy) {
        const double cy = -half + iy * h;
        for (int ix = 0; ix < nside; ++ix) {
            const double cx = -half + ix * h;
            const double margin = std::min(half - std::fabs(cx), half - std::fabs(cy));
            double cap = std::min(margin, probe_radius);
            if (cap <= best) continue;
            double near2 = std::numeric_limits<double>::infinity();
            for (const Vec2& p : pts) {
                const double dx = p.x - cx, dy = p.y - cy;
                const double d2 = dx * dx + dy * dy;
                if (d2 < near2) near2 = d2;
                if (near2 <= best * best) break;
            }
            const double r = std::min(cap, std::sqrt(near2));
            if (r > best) best = r;
        }
    }
    return best;
}

std::pair<bool, bool> weak_inclusion_check(const PointSet2& a, const PointSet2& b,
                                           double R, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("weak_inclusion_check: eps must be positive");
    if (R > std::min(a.window_radius(), b.window_radius()) - eps)
        throw std::invalid_argument("weak_inclusion_check: R exceeds min window radius minus eps");

    const auto one_sided = [&](const PointSet2& from, const PointSet2& to) {
        for (const Vec2& p : from.points()) {
            if (!(std::fabs(p.x) < R && std::fabs(p.y) < R)) continue; // open subwindow
            bool covered = false;
            for (const Vec2& q : to.points()) {
                if (std::fabs(p.x - q.x) < eps && std::fabs(p.y - q.y) < eps) { // open box
                    covered = true;
                    break;
                }
            }
            if (!covered) return false;
        }
        return true;
    };
    return {one_sided(a, b), one_sided(b, a)};
}

std::vector<PointSet2> translate_limit_probe(const PointSet2& s, const std::vector<Vec2>& directions,
                                             double R, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("translate_limit_probe: eps must be positive");
    if (!(R > 0.0) || R > s.window_radius())
        throw std::invalid_argument("translate_limit_probe: target window must fit inside the source window");
    std::vector<PointSet2> probes;
    probes.reserve(directions.size());
    for (const Vec2& v : directions) {
        std::vector<Vec2> pts;
        for (const Vec2& p : s.points()) {
            const Vec2 q = p - v;
            if (q.norm_inf() <= R) pts.push_back(q);
        }
        probes.emplace_back(std::move(pts), R);
    }
    return probes;
}

std::vector<PointSet2> make_probe_windows(const PointSet2& s, const std::vector<Vec2>& directions,
                                          double R) {
    std::vector<PointSet2> probes;
    probes.reserve(directions.size());
    if (s.source() && s.source()->kind != GeneratorConfig::Kind::from_file) {
        for (const Vec2& v : directions) probes.push_back(gen_translated_window(*s.source(), v, R));
    } else {
        probes = translate_limit_probe(s, directions, std::min(R, s.window_radius()), 1e-9);
    }
    return probes;
}

PointSet2 load_points(const std::string& path, double window_radius) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_points: cannot open " + path);
    std::vector<Vec2> pts;
    std::string line;
    double maxcoord = 0.0;
    double header_R = 0.0;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            std::istringstream cs(line.substr(hash + 1));
            std::string tag;
            double val;
            if (cs >> tag >> val && tag == "window_radius") header_R = val;
            line.erase(hash);
        }
        std::istringstream ls(line);
        double x, y;
        if (ls >> x >> y) {
            pts.push_back({x, y});
            maxcoord = std::max({maxcoord, std::fabs(x), std::fabs(y)});
        }
    }
    double R = window_radius > 0.0 ? window_radius : (header_R > 0.0 ? header_R : std::max(maxcoord, 1.0));
    return PointSet2(std::move(pts), R);
}

void save_points(const PointSet2& s, const std::string& path, const std::string& header) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_points: cannot open " + path);
    out.precision(17);
    if (!header.empty()) out << "# " << header << "\n";
    out << "# window_radius " << s.window_radius() << "\n";
    for (const Vec2& p : s.points()) out << p.x << " " << p.y << "\n";
}

std::string pointset_to_json(const PointSet2& s) {
    nlohmann::json j;
    auto& arr = j["points"] = nlohmann::json::array();
    for (const Vec2& p : s.points()) arr.push_back({p.x, p.y});
    j["R"] = s.window_radius();
    if (s.cached_separation())
        j["separation"] = *s.cached_separation();
    else
        j["separation"] = nullptr;
    return j.dump(2);
}

PointSet2 pointset_from_json(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    std::vector<Vec2> pts;
    for (const auto& p : j.at("points")) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return PointSet2(std::move(pts), j.at("R").get<double>());
}

} // namespace stsamp
