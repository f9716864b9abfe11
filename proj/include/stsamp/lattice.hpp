#pragma once
//
// Curvilinear lattices: zero sets of
//     rho(p) = r1 cos(p.xi + t1) - r2 cos(~p.xi + t2),   ~p = (-p1, p2),
// residual evaluation, membership tests, and a multistart minimax fit that
// serves as the computable witness search for condition (A).
//

#include <optional>
#include <string>
#include <vector>

#include "stsamp/geometry.hpp"
#include "stsamp/pointset.hpp"

namespace stsamp {

class CurvilinearLattice {
public:
    /// Throws if |r| deviates from 1 by more than 1e-12 or if the residual is
    /// degenerate (identically zero within 1e-10 on 64 fixed probe points).
    CurvilinearLattice(Vec2 t, Vec2 xi, Vec2 r);

    static CurvilinearLattice from_angle(Vec2 t, Vec2 xi, double theta) {
        return CurvilinearLattice(t, xi, {std::cos(theta), std::sin(theta)});
    }

    const Vec2& t() const { return t_; }
    const Vec2& xi() const { return xi_; }
    const Vec2& r() const { return r_; }

private:
    Vec2 t_, xi_, r_;
};

/// r1 cos(p.xi + t1) - r2 cos(~p.xi + t2).
double residual(const CurvilinearLattice& l, const Vec2& p);

/// |residual| <= tol.
bool contains(const CurvilinearLattice& l, const Vec2& p, double tol);

struct FitConfig {
    int starts = 256;
    double xi_max = 8.0;
    double tol = 1e-9;
    std::uint64_t seed = 0;
};

struct LatticeFit {
    CurvilinearLattice lattice;
    double max_residual = 0.0;
    double rms_residual = 0.0;
    int starts_used = 0;
};

/// Minimize max |residual| over (t, xi, r = (cos th, sin th)) by multistart
/// damped least squares followed by soft-max polishing.  Deterministic for a
/// given seed; ties between equal-residual fits prefer smaller |xi|.
LatticeFit fit(const PointSet2& points, const FitConfig& config);

/// min over translate probes (identity included) of fit(...).max_residual;
/// returns 0 if any probe window is empty.  Large score is consistent with
/// condition (A); a score near zero exhibits a witness lattice.
double condition_a_score(const PointSet2& s, const std::vector<Vec2>& probe_directions,
                         const FitConfig& config);

/// Same, over pre-built probe windows (callers supply the identity window).
double condition_a_score(const std::vector<PointSet2>& probe_sets, const FitConfig& config);

std::string lattice_fit_to_json(const LatticeFit& f);

} // namespace stsamp
