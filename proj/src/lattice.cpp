#include "stsamp/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <json.hpp>

#include "stsamp/rng.hpp"

namespace stsamp {

namespace {

// Fixed probe cloud for the degeneracy test.  Definition parameters such as
// xi1 = 0 with r1 = r2, t1 = t2 make the residual vanish identically; every
// set would lie on such a lattice, so those parameter vectors are rejected.
const std::vector<Vec2>& degeneracy_probes() {
    static const std::vector<Vec2> probes = [] {
        std::vector<Vec2> p;
        Rng rng(0x5eedu);
        for (int i = 0; i < 64; ++i) p.push_back({rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)});
        return p;
    }();
    return probes;
}

double raw_residual(const Vec2& t, const Vec2& xi, const Vec2& r, const Vec2& p) {
    const double a1 = p.x * xi.x + p.y * xi.y + t.x;
    const double a2 = -p.x * xi.x + p.y * xi.y + t.y;
    return r.x * std::cos(a1) - r.y * std::cos(a2);
}

bool is_degenerate(const Vec2& t, const Vec2& xi, const Vec2& r) {
    for (const Vec2& p : degeneracy_probes())
        if (std::fabs(raw_residual(t, xi, r, p)) > 1e-10) return false;
    return true;
}

// Sup of the residual over the probe cloud.  A residual function this close
// to the identically-zero configurations fits every point set at its own
// amplitude, so the fit excludes such candidates: the same zero set is always
// realized by an amplitude-normalized parameter vector (e.g. phase offset pi
// instead of a tiny offset), so no genuine lattice is lost.
double probe_sup(const Vec2& t, const Vec2& xi, const Vec2& r) {
    double sup = 0.0;
    for (const Vec2& p : degeneracy_probes())
        sup = std::max(sup, std::fabs(raw_residual(t, xi, r, p)));
    return sup;
}

constexpr double kEffectiveDegeneracySup = 0.05;

} // namespace

CurvilinearLattice::CurvilinearLattice(Vec2 t, Vec2 xi, Vec2 r) : t_(t), xi_(xi), r_(r) {
    if (std::fabs(r.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("CurvilinearLattice: |r| must be 1 within 1e-12");
    if (is_degenerate(t, xi, r))
        throw std::invalid_argument("CurvilinearLattice: residual is identically zero (degenerate parameters)");
}

double residual(const CurvilinearLattice& l, const Vec2& p) {
    return raw_residual(l.t(), l.xi(), l.r(), p);
}

bool contains(const CurvilinearLattice& l, const Vec2& p, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("contains: tol must be positive");
    return std::fabs(residual(l, p)) <= tol;
}

namespace {

// Parameter vector (t1, t2, xi1, xi2, theta); r = (cos theta, sin theta).
struct Params {
    double v[5];
};

double eval_residual(const Params& p, const Vec2& pt) {
    const double a1 = pt.x * p.v[2] + pt.y * p.v[3] + p.v[0];
    const double a2 = -pt.x * p.v[2] + pt.y * p.v[3] + p.v[1];
    return std::cos(p.v[4]) * std::cos(a1) - std::sin(p.v[4]) * std::cos(a2);
}

void eval_residuals(const Params& p, const std::vector<Vec2>& pts, Eigen::VectorXd& r) {
    const double ct = std::cos(p.v[4]), st = std::sin(p.v[4]);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double a1 = pts[i].x * p.v[2] + pts[i].y * p.v[3] + p.v[0];
        const double a2 = -pts[i].x * p.v[2] + pts[i].y * p.v[3] + p.v[1];
        r[static_cast<int>(i)] = ct * std::cos(a1) - st * std::cos(a2);
    }
}

void eval_jacobian(const Params& p, const std::vector<Vec2>& pts, Eigen::MatrixXd& J) {
    const double ct = std::cos(p.v[4]), st = std::sin(p.v[4]);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double a1 = pts[i].x * p.v[2] + pts[i].y * p.v[3] + p.v[0];
        const double a2 = -pts[i].x * p.v[2] + pts[i].y * p.v[3] + p.v[1];
        const double s1 = std::sin(a1), s2 = std::sin(a2);
        const int row = static_cast<int>(i);
        J(row, 0) = -ct * s1;
        J(row, 1) = st * s2;
        J(row, 2) = -pts[i].x * (ct * s1 + st * s2);
        J(row, 3) = -pts[i].y * (ct * s1 - st * s2);
        J(row, 4) = -st * std::cos(a1) - ct * std::cos(a2);
    }
}

void clamp_params(Params& p, double xi_max) {
    const auto wrap = [](double a) {
        a = std::fmod(a, kTwoPi);
        if (a < 0.0) a += kTwoPi;
        return a;
    };
    p.v[0] = wrap(p.v[0]);
    p.v[1] = wrap(p.v[1]);
    p.v[2] = std::clamp(p.v[2], -xi_max, xi_max);
    p.v[3] = std::clamp(p.v[3], -xi_max, xi_max);
    p.v[4] = wrap(p.v[4]);
}

double max_abs(const Eigen::VectorXd& r) { return r.cwiseAbs().maxCoeff(); }

// Damped least squares on sum of squared residuals (optionally weighted).
void levenberg_marquardt(Params& p, const std::vector<Vec2>& pts, double xi_max,
                         const Eigen::VectorXd* weights, int max_iter) {
    const int m = static_cast<int>(pts.size());
    Eigen::VectorXd r(m), rtrial(m);
    Eigen::MatrixXd J(m, 5);
    eval_residuals(p, pts, r);
    double cost = weights ? r.cwiseProduct(weights->cwiseSqrt()).squaredNorm() : r.squaredNorm();
    double mu = 1e-3;
    for (int iter = 0; iter < max_iter; ++iter) {
        eval_jacobian(p, pts, J);
        Eigen::MatrixXd Jw = J;
        Eigen::VectorXd rw = r;
        if (weights) {
            const Eigen::VectorXd sw = weights->cwiseSqrt();
            Jw = sw.asDiagonal() * J;
            rw = sw.asDiagonal() * r;
        }
        Eigen::Matrix<double, 5, 5> H = Jw.transpose() * Jw;
        Eigen::Matrix<double, 5, 1> g = Jw.transpose() * rw;
        if (g.norm() < 1e-14) break;
        bool stepped = false;
        for (int tries = 0; tries < 8 && !stepped; ++tries) {
            Eigen::Matrix<double, 5, 5> Hd = H;
            for (int d = 0; d < 5; ++d) Hd(d, d) += mu * std::max(H(d, d), 1e-12);
            Eigen::Matrix<double, 5, 1> step = Hd.ldlt().solve(-g);
            Params trial = p;
            for (int d = 0; d < 5; ++d) trial.v[d] += step[d];
            clamp_params(trial, xi_max);
            eval_residuals(trial, pts, rtrial);
            const double ctrial =
                weights ? rtrial.cwiseProduct(weights->cwiseSqrt()).squaredNorm() : rtrial.squaredNorm();
            if (ctrial < cost) {
                p = trial;
                r = rtrial;
                const double gain = (cost - ctrial) / std::max(cost, 1e-300);
                cost = ctrial;
                mu = std::max(mu * 0.3, 1e-12);
                stepped = true;
                if (gain < 1e-14) return;
            } else {
                mu *= 4.0;
            }
        }
        if (!stepped) break;
    }
}

// Soft-max polish: reweighted least squares with weights concentrating on the
// worst residuals, ramping the sharpness.  Drives the max norm down once LM
// has found the right basin.
void softmax_polish(Params& p, const std::vector<Vec2>& pts, double xi_max) {
    const int m = static_cast<int>(pts.size());
    Eigen::VectorXd r(m), w(m);
    for (double beta : {2.0, 8.0, 32.0, 128.0}) {
        eval_residuals(p, pts, r);
        const double rmax2 = r.cwiseAbs2().maxCoeff();
        if (rmax2 < 1e-28) return;
        for (int i = 0; i < m; ++i) w[i] = std::exp(beta * (r[i] * r[i] / rmax2 - 1.0));
        levenberg_marquardt(p, pts, xi_max, &w, 20);
    }
}

struct Candidate {
    Params p;
    double max_res = std::numeric_limits<double>::infinity();
    double rms = 0.0;
    double xi_norm = std::numeric_limits<double>::infinity();
    int start_index = -1;
    bool valid = false;
};

// Canonical starts hit the small-frequency lattices that structured inputs
// tend to lie on; the remainder of the schedule is seeded uniform sampling.
std::vector<Params> make_starts(int count, double xi_max, std::uint64_t seed) {
    std::vector<Params> starts;
    const double th_eq = kPi / 4.0;
    const std::vector<Vec2> xis = {{1, 1}, {1, -1}, {0, 1}, {1, 0}, {2, 1}, {1, 2}, {0.5, 0.5}, {2, 2}};
    for (const Vec2& xi : xis) {
        for (double th : {th_eq, std::atan2(3.0, 1.0), std::atan2(1.0, 3.0)}) {
            if (static_cast<int>(starts.size()) >= count) break;
            starts.push_back({{0.0, 0.0, xi.x, xi.y, th}});
        }
    }
    Rng rng(seed);
    while (static_cast<int>(starts.size()) < count) {
        starts.push_back({{rng.uniform(0.0, kTwoPi), rng.uniform(0.0, kTwoPi),
                           rng.uniform(-xi_max, xi_max), rng.uniform(-xi_max, xi_max),
                           rng.uniform(0.0, kTwoPi)}});
    }
    return starts;
}

} // namespace

LatticeFit fit(const PointSet2& points, const FitConfig& config) {
    if (points.empty()) throw std::invalid_argument("fit: point set is empty");
    if (!(config.xi_max > 0.0)) throw std::invalid_argument("fit: xi_max must be positive");
    if (config.starts < 1) throw std::invalid_argument("fit: need at least one start");

    const std::vector<Vec2>& pts = points.points();
    const std::vector<Params> starts = make_starts(config.starts, config.xi_max, config.seed);
    std::vector<Candidate> results(starts.size());

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < static_cast<int>(starts.size()); ++i) {
        Params p = starts[static_cast<std::size_t>(i)];
        levenberg_marquardt(p, pts, config.xi_max, nullptr, 80);
        softmax_polish(p, pts, config.xi_max);
        Candidate c;
        c.p = p;
        c.start_index = i;
        const Vec2 t{p.v[0], p.v[1]}, xi{p.v[2], p.v[3]}, r{std::cos(p.v[4]), std::sin(p.v[4])};
        if (probe_sup(t, xi, r) >= kEffectiveDegeneracySup) {
            Eigen::VectorXd res(static_cast<int>(pts.size()));
            eval_residuals(p, pts, res);
            c.max_res = max_abs(res);
            c.rms = std::sqrt(res.squaredNorm() / static_cast<double>(pts.size()));
            c.xi_norm = xi.norm();
            c.valid = true;
        }
        results[static_cast<std::size_t>(i)] = c;
    }

    // Deterministic reduction: best max-residual, ties (within tol) broken by
    // smaller |xi|, then by start index.
    const Candidate* best = nullptr;
    for (const Candidate& c : results) {
        if (!c.valid) continue;
        if (!best) {
            best = &c;
            continue;
        }
        const double tie = std::max(config.tol, 1e-12);
        if (c.max_res < best->max_res - tie ||
            (std::fabs(c.max_res - best->max_res) <= tie &&
             (c.xi_norm < best->xi_norm - 1e-9 ||
              (std::fabs(c.xi_norm - best->xi_norm) <= 1e-9 && c.start_index < best->start_index)))) {
            best = &c;
        }
    }
    if (!best) throw std::runtime_error("fit: no nondegenerate lattice found");

    LatticeFit out{CurvilinearLattice({best->p.v[0], best->p.v[1]}, {best->p.v[2], best->p.v[3]},
                                      {std::cos(best->p.v[4]), std::sin(best->p.v[4])}),
                   best->max_res, best->rms, static_cast<int>(starts.size())};
    return out;
}

double condition_a_score(const PointSet2& s, const std::vector<Vec2>& probe_directions,
                         const FitConfig& config) {
    std::vector<Vec2> dirs = probe_directions;
    const bool has_identity =
        std::any_of(dirs.begin(), dirs.end(), [](const Vec2& v) { return v.x == 0.0 && v.y == 0.0; });
    if (!has_identity) dirs.insert(dirs.begin(), Vec2{0.0, 0.0});
    std::vector<PointSet2> probes = translate_limit_probe(s, dirs, s.window_radius(), 1e-9);
    return condition_a_score(probes, config);
}

double condition_a_score(const std::vector<PointSet2>& probe_sets, const FitConfig& config) {
    double score = std::numeric_limits<double>::infinity();
    for (const PointSet2& probe : probe_sets) {
        if (probe.empty()) return 0.0; // condition (A) needs nonempty weak limits
        score = std::min(score, fit(probe, config).max_residual);
    }
    return std::isfinite(score) ? score : 0.0;
}

std::string lattice_fit_to_json(const LatticeFit& f) {
    nlohmann::json j;
    j["t"] = {f.lattice.t().x, f.lattice.t().y};
    j["xi"] = {f.lattice.xi().x, f.lattice.xi().y};
    j["r"] = {f.lattice.r().x, f.lattice.r().y};
    j["max_residual"] = f.max_residual;
    j["rms_residual"] = f.rms_residual;
    j["starts_used"] = f.starts_used;
    return j.dump(2);
}

} // namespace stsamp
