#pragma once
//
// Executable obstruction: from a curvilinear lattice, build the four-mode
// field g whose space-time samples vanish exactly on the lattice, localize it
// with a periodized tensor sinc into f, and measure how the sampled suprema
// collapse while the field's sup norm stays put.
//

#include <string>
#include <vector>

#include "stsamp/frame.hpp"
#include "stsamp/lattice.hpp"
#include "stsamp/signal.hpp"

namespace stsamp {

/// g(x) = r1 cos(xi.x + t1) - r2 cos(~xi.x + t2) on the given grid.
/// Every space-time sample factors as kernel_transform * residual, so g's
/// samples vanish wherever the lattice residual does.  Throws if xi is not
/// grid-exact, naming the nearest grid frequency.
BandlimitedField build_g(const CurvilinearLattice& l, const SpectralGrid& grid);

/// f(x) = Phi_eps(x - v) g(x - v) with Phi_eps the periodized tensor sinc
/// sin(eps u)/(eps u) per axis.  eps must be an integer multiple of the mode
/// spacing so the box spectrum is grid-exact; the result lives on the grid
/// enlarged by eps per axis.
BandlimitedField build_f(const BandlimitedField& g, double eps, const Vec2& v);

/// max over points of S and alpha on the quadrature grid of I of the
/// space-time sample magnitude |(f * G_alpha)(p)|.
double sample_sup(const BandlimitedField& f, const PointSet2& s, const IndexRect& I);

/// Lattice points found by bisection of the residual along vertical lines
/// x = const; tangency cases (no sign change) are skipped.
std::vector<Vec2> lattice_points_by_bisection(const CurvilinearLattice& l, int count,
                                              double x_lo, double x_hi);

struct SweepRow {
    double eps = 0.0;
    double sup_norm = 0.0;
    double sample_sup = 0.0;
    double ratio = 0.0;      // sample_sup / sup_norm
    double deficiency = 0.0; // bernstein_deficiency of f
    double inner_sup = 0.0;  // samples with |p - v|_inf <= 1/eps^2
    double outer_sup = 0.0;  // remaining samples
};

struct SweepReport {
    std::vector<SweepRow> rows;
    bool ratio_decreasing = false;
    bool deficiency_increasing = false;
};

/// One row per eps (decreasing); flags report the expected monotonicity.
SweepReport run_sweep(const CurvilinearLattice& l, const PointSet2& s, const IndexRect& I,
                      const SpectralGrid& grid, const std::vector<double>& eps_list,
                      const Vec2& v = {0.0, 0.0});

std::string sweep_to_csv(const SweepReport& rep);

} // namespace stsamp
