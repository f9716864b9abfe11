#pragma once
//
// Shared fixtures and independent oracles for the test suites.  The oracles
// deliberately avoid the library's multiplier path: spatial convolution is
// panel Gauss-Legendre quadrature against pointwise Gaussian values.
//

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "stsamp/geometry.hpp"
#include "stsamp/quadrature.hpp"
#include "stsamp/rng.hpp"
#include "stsamp/signal.hpp"

namespace stsamp::testing {

/// Random real field: conjugate-symmetric coefficients with about `nnz`
/// active representative modes.
inline BandlimitedField random_real_field(const SpectralGrid& grid, Rng& rng, int nnz) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(grid.size());
    int placed = 0;
    while (placed < nnz) {
        const int k1 = static_cast<int>(rng.below(2 * grid.kmax() + 1)) - grid.kmax();
        const int k2 = static_cast<int>(rng.below(2 * grid.kmax() + 1)) - grid.kmax();
        const std::complex<double> v{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        c[grid.index(k1, k2)] += 0.5 * v;
        c[grid.index(-k1, -k2)] += 0.5 * std::conj(v);
        ++placed;
    }
    return BandlimitedField(grid, std::move(c), true);
}

/// Spatial-quadrature oracle for (f * G_alpha)(p): tensor panel quadrature of
/// f(p - s) exp(-a1 s1^2 - a2 s2^2) truncated at |s|_inf <= 12/sqrt(min a).
/// Periodization is inherited from f itself (the field is exactly periodic),
/// so the truncated integral carries the full image sum up to the Gaussian
/// tail below 1e-14 of the leading scale.
inline std::complex<double> convolve_oracle(const BandlimitedField& f, const GaussianKernel& k,
                                            const Vec2& p) {
    const double T = 12.0 / std::sqrt(std::min(k.a1, k.a2));
    const int panels = static_cast<int>(std::ceil(2.0 * T));
    const int order = 12;
    const QuadRule base = gauss_legendre(order);
    // per-axis nodes and Gaussian weights over [-T, T]
    std::vector<double> s1, w1, s2, w2;
    for (int pa = 0; pa < panels; ++pa) {
        const double lo = -T + 2.0 * T * pa / panels, hi = -T + 2.0 * T * (pa + 1) / panels;
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (int i = 0; i < order; ++i) {
            const double s = mid + half * base.nodes[i];
            s1.push_back(s);
            w1.push_back(half * base.weights[i] * std::exp(-k.a1 * s * s));
            s2.push_back(s);
            w2.push_back(half * base.weights[i] * std::exp(-k.a2 * s * s));
        }
    }
    // f(p - s) on the tensor grid
    std::vector<double> x1(s1.size()), x2(s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i) x1[i] = p.x - s1[i];
    for (std::size_t j = 0; j < s2.size(); ++j) x2[j] = p.y - s2[j];
    const Eigen::MatrixXcd vals = f.eval_grid(x1, x2);
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < s1.size(); ++i) {
        std::complex<double> row = 0.0;
        for (std::size_t j = 0; j < s2.size(); ++j) row += vals(static_cast<int>(i), static_cast<int>(j)) * w2[j];
        acc += w1[i] * row;
    }
    return acc;
}

/// Symmetric Hausdorff distance between two finite point lists.
inline double hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    const auto one_sided = [](const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
        double worst = 0.0;
        for (const Vec2& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const Vec2& q : to) best = std::min(best, dist(p, q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

} // namespace stsamp::testing
