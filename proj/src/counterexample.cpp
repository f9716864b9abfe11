#include "stsamp/counterexample.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace stsamp {

using cd = std::complex<double>;

BandlimitedField build_g(const CurvilinearLattice& l, const SpectralGrid& grid) {
    const auto mode = grid.mode_of_freq(l.xi(), 1e-9);
    if (!mode) {
        const double dxi = grid.dxi();
        std::ostringstream msg;
        msg << "build_g: xi = (" << l.xi().x << ", " << l.xi().y
            << ") is not on the mode grid; nearest grid frequency is ("
            << dxi * std::lround(l.xi().x / dxi) << ", " << dxi * std::lround(l.xi().y / dxi) << ")";
        throw std::invalid_argument(msg.str());
    }
    const auto [k1, k2] = *mode;
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(grid.size());
    const cd half1 = 0.5 * l.r().x * std::exp(cd{0.0, l.t().x});
    const cd half2 = 0.5 * l.r().y * std::exp(cd{0.0, l.t().y});
    c[grid.index(k1, k2)] += half1;
    c[grid.index(-k1, -k2)] += std::conj(half1);
    c[grid.index(-k1, k2)] -= half2; // ~xi mode
    c[grid.index(k1, -k2)] -= std::conj(half2);
    return BandlimitedField(grid, std::move(c), true);
}

BandlimitedField build_f(const BandlimitedField& g, double eps, const Vec2& v) {
    const SpectralGrid& gg = g.grid();
    const double dxi = gg.dxi();
    const double ratio = eps / dxi;
    const int p = static_cast<int>(std::lround(ratio));
    if (p < 1 || std::fabs(ratio - p) > 1e-9)
        throw std::invalid_argument("build_f: eps must be a positive integer multiple of the mode spacing");

    // Nonzero support of g per axis.
    int kg = 0;
    for (int idx = 0; idx < gg.size(); ++idx) {
        if (std::abs(g.coeffs()[idx]) == 0.0) continue;
        auto [k1, k2] = gg.mode(idx);
        kg = std::max({kg, std::abs(k1), std::abs(k2)});
    }
    const SpectralGrid enlarged = SpectralGrid::with_kmax(kg + p, gg.half_period());

    // Fourier coefficients of the periodized sinc box: interior dxi/(2 eps),
    // endpoints halved (the series of a spectrum with jumps takes midpoints);
    // this also makes Phi(0) = 1 exact.
    std::vector<double> box(static_cast<std::size_t>(2 * p + 1));
    for (int mth = -p; mth <= p; ++mth)
        box[static_cast<std::size_t>(mth + p)] = (std::abs(mth) == p ? 0.5 : 1.0) / (2.0 * p);

    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(enlarged.size());
    for (int idx = 0; idx < gg.size(); ++idx) {
        const cd gc = g.coeffs()[idx];
        if (std::abs(gc) == 0.0) continue;
        auto [k1, k2] = gg.mode(idx);
        for (int m1 = -p; m1 <= p; ++m1)
            for (int m2 = -p; m2 <= p; ++m2) {
                const double w = box[static_cast<std::size_t>(m1 + p)] * box[static_cast<std::size_t>(m2 + p)];
                out[enlarged.index(k1 + m1, k2 + m2)] += gc * w;
            }
    }
    // Shift the product field to v: coefficients pick up e^{-i xi . v}.
    for (int idx = 0; idx < enlarged.size(); ++idx) {
        const Vec2 xi = enlarged.freq(idx);
        out[idx] *= std::exp(cd{0.0, -xi.dot(v)});
    }
    return BandlimitedField(enlarged, std::move(out), g.real_flag());
}

double sample_sup(const BandlimitedField& f, const PointSet2& s, const IndexRect& I) {
    double best = 0.0;
    for (const AlphaNode& node : I.quadrature()) {
        const GaussianKernel k(node.a1, node.a2);
        for (const Vec2& p : s.points())
            best = std::max(best, std::abs(convolve_eval(f, k, p)));
    }
    return best;
}

std::vector<Vec2> lattice_points_by_bisection(const CurvilinearLattice& l, int count,
                                              double x_lo, double x_hi) {
    std::vector<Vec2> roots;
    const int n_lines = std::max(count, 8);
    for (int i = 0; i < n_lines && static_cast<int>(roots.size()) < count; ++i) {
        const double x = x_lo + (x_hi - x_lo) * (i + 0.5) / n_lines;
        // scan y for sign changes, then bisect to near machine precision
        const int scan = 256;
        double prev_y = -8.0;
        double prev_r = residual(l, {x, prev_y});
        for (int j = 1; j <= scan && static_cast<int>(roots.size()) < count; ++j) {
            const double y = -8.0 + 16.0 * j / scan;
            const double r = residual(l, {x, y});
            if (prev_r == 0.0) roots.push_back({x, prev_y});
            else if (prev_r * r < 0.0) {
                double a = prev_y, b = y;
                for (int it = 0; it < 200; ++it) {
                    const double mid = 0.5 * (a + b);
                    const double rm = residual(l, {x, mid});
                    if (rm == 0.0) { a = b = mid; break; }
                    if (rm * prev_r < 0.0) b = mid; else a = mid;
                    if (b - a < 1e-15) break;
                }
                roots.push_back({x, 0.5 * (a + b)});
            }
            prev_y = y;
            prev_r = r;
        }
    }
    return roots;
}

SweepReport run_sweep(const CurvilinearLattice& l, const PointSet2& s, const IndexRect& I,
                      const SpectralGrid& grid, const std::vector<double>& eps_list,
                      const Vec2& v) {
    SweepReport rep;
    const BandlimitedField g = build_g(l, grid);
    for (double eps : eps_list) {
        const BandlimitedField f = build_f(g, eps, v);
        SweepRow row;
        row.eps = eps;
        row.sup_norm = sup_norm_estimate(f, 8);
        row.sample_sup = sample_sup(f, s, I);
        row.ratio = row.sup_norm > 0.0 ? row.sample_sup / row.sup_norm : 0.0;
        row.deficiency = bernstein_deficiency(f, s, I);

        // Window split at radius 1/eps^2 around the localization center.
        const double Rsplit = 1.0 / (eps * eps);
        std::vector<Vec2> inner, outer;
        for (const Vec2& p : s.points())
            ((p - v).norm_inf() <= Rsplit ? inner : outer).push_back(p);
        if (!inner.empty())
            row.inner_sup = sample_sup(f, PointSet2(inner, s.window_radius()), I);
        if (!outer.empty())
            row.outer_sup = sample_sup(f, PointSet2(outer, s.window_radius()), I);
        rep.rows.push_back(row);
    }
    rep.ratio_decreasing = true;
    rep.deficiency_increasing = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        if (!(rep.rows[i].ratio < rep.rows[i - 1].ratio)) rep.ratio_decreasing = false;
        if (!(rep.rows[i].deficiency > rep.rows[i - 1].deficiency)) rep.deficiency_increasing = false;
    }
    return rep;
}

std::string sweep_to_csv(const SweepReport& rep) {
    std::ostringstream out;
    out.precision(12);
    out << "eps,sup_norm,sample_sup,ratio,deficiency,inner_sup,outer_sup\n";
    for (const SweepRow& r : rep.rows)
        out << r.eps << "," << r.sup_norm << "," << r.sample_sup << "," << r.ratio << ","
            << r.deficiency << "," << r.inner_sup << "," << r.outer_sup << "\n";
    return out.str();
}

} // namespace stsamp
