#pragma once
//
// Auxiliary localization functions: the layered radial profile whose Fourier
// transform has unit sup norm, growing L2 norm and vanishing gradient norm as
// the support shrinks, plus the sinc families that show why a plain tensor
// product fails in two dimensions.  All norms have closed forms per annulus;
// spatial quadrature validators cross-check them.
//

#include <vector>

#include "stsamp/geometry.hpp"

namespace stsamp {

/// Piecewise-constant radial profile supported in 2^{-2m-1} <= |x| <= 2^{-m},
/// with level 2^{2n}/n on the annulus (2^{-n-1}, 2^{-n}], n = m..2m, where
/// m = floor(log2(1/eps)).
struct LayeredRadialProfile {
    double epsilon = 0.0;
    int m = 0;
    std::vector<double> levels;      // a_n, n = m..2m
    std::vector<double> outer_radii; // 2^{-n}
    double inner_radius = 0.0;       // 2^{-2m-1}

    double value(double s) const;     // radial evaluation
    double integral() const;          // (3 pi / 4) sum 1/n
    double l2_norm() const;           // sqrt((3 pi / 4) sum 4^n / n^2)
    double weighted_l2_norm() const;  // sqrt((15 pi / 32) sum 1/n^2)
};

/// Throws unless eps is small enough that m >= 2 (eps < 1/4).
LayeredRadialProfile build_psi(double eps);

struct PsiReport {
    double eps = 0.0;
    double integral = 0.0;
    double l2 = 0.0;
    double weighted = 0.0;
    bool p1_support = false;   // support inside B_eps, nonnegative levels
    bool p2_integral = false;  // integral within [1.0, 2.5]
    bool p3_l2 = false;        // l2 * eps^{3/4} >= 1 (asserted for eps <= 2^-6)
    bool p4_weighted = false;  // weighted <= 3 / sqrt(log2(1/eps))
    bool pass = false;
};

PsiReport verify_psi(double eps);

/// Normalized Fourier transform of the layered profile: real, radial,
/// phi(0) = 1, evaluated per annulus through Bessel J1.
struct AuxFunction {
    LayeredRadialProfile profile;
    double c_psi = 1.0; // integral of the profile

    double radial(double s) const;
    double operator()(const Vec2& x) const { return radial(x.norm()); }

    double l2_norm() const;      // (2 pi / c_psi) * ||Psi||_2   (Parseval)
    double grad_l2_norm() const; // (2 pi / c_psi) * || |t| Psi ||_2
};

AuxFunction build_phi(double eps);

struct ConditionBRow {
    double eps = 0.0;
    double psi_integral = 0.0;
    double psi_l2 = 0.0;
    double psi_weighted = 0.0;
    double phi_l2 = 0.0;
    double grad_l2 = 0.0;
};

struct ConditionBReport {
    std::vector<ConditionBRow> rows;
    bool phi_l2_increasing = false;  // strictly, along decreasing eps
    bool grad_l2_decreasing = false; // strictly, along decreasing eps
    double loglog_slope_phi = 0.0;   // regression of log ||phi|| on log eps
};

/// eps_list must be strictly decreasing with at least 4 entries spanning two
/// decades.
ConditionBReport verify_condition_B(const std::vector<double>& eps_list);

struct SincReport {
    int dim = 1;
    double eps = 0.0;
    double l2 = 0.0;       // ||phi||_2
    double deriv_l2 = 0.0; // ||phi'||_2 (1-D) or ||grad phi||_2 (2-D)
};

/// Parseval norms of sin(eps x)/(eps x) and its 2-D tensor square:
/// 1-D: ||phi||^2 = pi/eps, ||phi'||^2 = pi eps / 3;
/// 2-D: ||phi||^2 = (pi/eps)^2, ||grad phi||^2 = 2 pi^2 / 3 (eps-independent).
SincReport sinc_family(double eps, int dim);

// --- spatial validators (slow paths for the invariant tests) -------------

/// 2 pi int_0^S |phi|^2 s ds plus an asymptotic tail estimate; the cutoff is
/// chosen so the tail stays below half of rel_target of the spectral value.
double phi_l2_spatial(const AuxFunction& phi, double rel_target = 1e-3, double* tail_out = nullptr);

/// Same for |grad phi| via central finite differences of the radial part.
double phi_grad_l2_spatial(const AuxFunction& phi, double rel_target = 1e-2, double* tail_out = nullptr);

double psi_integral_quadrature(const LayeredRadialProfile& psi);
double psi_l2_quadrature(const LayeredRadialProfile& psi);

} // namespace stsamp
