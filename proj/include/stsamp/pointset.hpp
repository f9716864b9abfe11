#pragma once
//
// Uniformly discrete planar point sets on a finite window: generators,
// separation / density diagnostics, translate probes and the two-sided
// epsilon-inclusion check used to approximate weak limits of translates.
//

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stsamp/geometry.hpp"

namespace stsamp {

struct GeneratorConfig {
    enum class Kind { rect_lattice, perturbed_lattice, concentric_circles, jittered_delone, from_file };

    Kind kind = Kind::rect_lattice;
    double spacing = kTwoPi;     // rect / perturbed / jittered cell size
    double arc_spacing = 1.0;    // concentric_circles: minimum arc length between points
    double jitter = 0.0;         // jittered_delone: amplitude of the per-axis offset
    std::uint64_t seed = 0;
    std::string path;            // from_file

    void validate() const;       // throws std::invalid_argument on malformed configs
};

/// Finite window of a uniformly discrete planar set.  Immutable after
/// construction; the separation constant is computed on demand and cached.
class PointSet2 {
public:
    PointSet2() : window_radius_(1.0) {}
    PointSet2(std::vector<Vec2> points, double window_radius,
              std::optional<GeneratorConfig> source = std::nullopt);

    const std::vector<Vec2>& points() const { return points_; }
    double window_radius() const { return window_radius_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const std::optional<GeneratorConfig>& source() const { return source_; }
    std::optional<double> cached_separation() const { return separation_; }

    /// Minimum pairwise distance; requires >= 2 points.
    double separation_constant() const;

private:
    std::vector<Vec2> points_;
    double window_radius_;
    std::optional<GeneratorConfig> source_;
    mutable std::optional<double> separation_;
};

/// Materialize the configured set inside [-R, R]^2.
PointSet2 gen(const GeneratorConfig& config, double R);

/// Window of the configured (conceptually infinite) set around `center`,
/// already translated back to the origin: returns (Lambda - center) on
/// [-R, R]^2.  Only the indices near the window are visited, so far translate
/// probes are cheap even when `center` is enormous.
PointSet2 gen_translated_window(const GeneratorConfig& config, const Vec2& center, double R);

/// {p - v} re-windowed to [-R, R]^2 with R the source window radius.  Points
/// leaving the window are dropped; callers must use source windows large
/// enough to fill the region they care about.
PointSet2 translate(const PointSet2& s, const Vec2& v);

/// Largest radius r <= probe_radius such that some disc of radius r fully
/// inside [-R/2, R/2]^2 contains no point of the set, estimated on a fine grid
/// of disc centers.  Small gap means relatively dense at this scale.
double relative_density_gap(const PointSet2& s, double probe_radius);

/// Two-sided open-box inclusion on the subwindow (-R, R)^2:
///   first  <=>  A cap (-R,R)^2  subset of  B + (-eps,eps)^2
///   second <=>  B cap (-R,R)^2  subset of  A + (-eps,eps)^2
std::pair<bool, bool> weak_inclusion_check(const PointSet2& a, const PointSet2& b,
                                           double R, double eps);

/// Windowed translates S - v for each probe direction v; finite stand-ins for
/// weak limits of translates.  Empty windows are returned as empty sets (the
/// caller treats them as a failed nonemptiness requirement, not an error).
std::vector<PointSet2> translate_limit_probe(const PointSet2& s, const std::vector<Vec2>& directions,
                                             double R, double eps);

/// Probe windows for condition-(A) scoring.  Generator-backed sets get full
/// windows regenerated around each probe center (so arbitrarily distant
/// translates are available); other sets fall back to translate_limit_probe
/// on the stored points.
std::vector<PointSet2> make_probe_windows(const PointSet2& s, const std::vector<Vec2>& directions,
                                          double R);

// --- text / JSON interop -------------------------------------------------

PointSet2 load_points(const std::string& path, double window_radius = 0.0);
void save_points(const PointSet2& s, const std::string& path, const std::string& header = {});

std::string pointset_to_json(const PointSet2& s);
PointSet2 pointset_from_json(const std::string& json_text);

} // namespace stsamp
