#include "stsamp/auxfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stsamp/quadrature.hpp"

namespace stsamp {

namespace {
constexpr double k3Pi4 = 3.0 * kPi / 4.0;
constexpr double k15Pi32 = 15.0 * kPi / 32.0;
} // namespace

double LayeredRadialProfile::value(double s) const {
    if (s < inner_radius || s > outer_radii.front()) return 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const double outer = outer_radii[i];
        const double inner = 0.5 * outer;
        if (s <= outer && s > inner) return levels[i];
    }
    // s == inner_radius exactly: innermost annulus is closed below
    return s == inner_radius ? levels.back() : 0.0;
}

double LayeredRadialProfile::integral() const {
    double sum = 0.0;
    for (int n = m; n <= 2 * m; ++n) sum += 1.0 / static_cast<double>(n);
    return k3Pi4 * sum;
}

double LayeredRadialProfile::l2_norm() const {
    double sum = 0.0;
    for (int n = m; n <= 2 * m; ++n) sum += std::exp2(2.0 * n) / (static_cast<double>(n) * n);
    return std::sqrt(k3Pi4 * sum);
}

double LayeredRadialProfile::weighted_l2_norm() const {
    double sum = 0.0;
    for (int n = m; n <= 2 * m; ++n) sum += 1.0 / (static_cast<double>(n) * n);
    return std::sqrt(k15Pi32 * sum);
}

LayeredRadialProfile build_psi(double eps) {
    if (!(eps > 0.0 && eps < 0.25))
        throw std::invalid_argument("build_psi: eps must lie in (0, 1/4) so that m >= 2");
    LayeredRadialProfile psi;
    psi.epsilon = eps;
    psi.m = static_cast<int>(std::floor(std::log2(1.0 / eps)));
    for (int n = psi.m; n <= 2 * psi.m; ++n) {
        psi.levels.push_back(std::exp2(2.0 * n) / static_cast<double>(n));
        psi.outer_radii.push_back(std::exp2(-static_cast<double>(n)));
    }
    psi.inner_radius = std::exp2(-(2.0 * psi.m + 1.0));
    return psi;
}

PsiReport verify_psi(double eps) {
    const LayeredRadialProfile psi = build_psi(eps);
    PsiReport rep;
    rep.eps = eps;
    rep.integral = psi.integral();
    rep.l2 = psi.l2_norm();
    rep.weighted = psi.weighted_l2_norm();
    rep.p1_support = psi.outer_radii.front() <= eps &&
                     std::all_of(psi.levels.begin(), psi.levels.end(), [](double a) { return a > 0.0; });
    rep.p2_integral = rep.integral >= 1.0 && rep.integral <= 2.5;
    rep.p3_l2 = eps > std::exp2(-6.0) || rep.l2 * std::pow(eps, 0.75) >= 1.0;
    rep.p4_weighted = rep.weighted <= 3.0 / std::sqrt(std::log2(1.0 / eps));
    rep.pass = rep.p1_support && rep.p2_integral && rep.p3_l2 && rep.p4_weighted;
    return rep;
}

double AuxFunction::radial(double s) const {
    // (2 pi / c) sum_n a_n (rho_o J1(s rho_o) - rho_i J1(s rho_i)) / s,
    // from int_annulus J0(s rho) rho drho = [rho J1(s rho) / s].
    if (s < 1e-12) return 1.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < profile.levels.size(); ++i) {
        const double ro = profile.outer_radii[i];
        const double ri = 0.5 * ro;
        sum += profile.levels[i] *
               (ro * std::cyl_bessel_j(1, s * ro) - ri * std::cyl_bessel_j(1, s * ri));
    }
    return kTwoPi / c_psi * sum / s;
}

double AuxFunction::l2_norm() const { return kTwoPi / c_psi * profile.l2_norm(); }

double AuxFunction::grad_l2_norm() const { return kTwoPi / c_psi * profile.weighted_l2_norm(); }

AuxFunction build_phi(double eps) {
    AuxFunction phi;
    phi.profile = build_psi(eps);
    phi.c_psi = phi.profile.integral();
    return phi;
}

ConditionBReport verify_condition_B(const std::vector<double>& eps_list) {
    if (eps_list.size() < 4)
        throw std::invalid_argument("verify_condition_B: need at least 4 eps values");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("verify_condition_B: eps_list must be strictly decreasing");
    if (!(eps_list.front() / eps_list.back() >= 100.0))
        throw std::invalid_argument("verify_condition_B: eps_list must span at least two decades");

    ConditionBReport rep;
    for (double eps : eps_list) {
        const AuxFunction phi = build_phi(eps);
        ConditionBRow row;
        row.eps = eps;
        row.psi_integral = phi.c_psi;
        row.psi_l2 = phi.profile.l2_norm();
        row.psi_weighted = phi.profile.weighted_l2_norm();
        row.phi_l2 = phi.l2_norm();
        row.grad_l2 = phi.grad_l2_norm();
        rep.rows.push_back(row);
    }
    rep.phi_l2_increasing = true;
    rep.grad_l2_decreasing = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        if (!(rep.rows[i].phi_l2 > rep.rows[i - 1].phi_l2)) rep.phi_l2_increasing = false;
        if (!(rep.rows[i].grad_l2 < rep.rows[i - 1].grad_l2)) rep.grad_l2_decreasing = false;
    }
    // Least squares slope of log ||phi|| against log eps.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(rep.rows.size());
    for (const ConditionBRow& r : rep.rows) {
        const double x = std::log(r.eps), y = std::log(r.phi_l2);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    rep.loglog_slope_phi = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return rep;
}

SincReport sinc_family(double eps, int dim) {
    if (!(eps > 0.0)) throw std::invalid_argument("sinc_family: eps must be positive");
    if (dim != 1 && dim != 2) throw std::invalid_argument("sinc_family: dim must be 1 or 2");
    SincReport rep;
    rep.dim = dim;
    rep.eps = eps;
    if (dim == 1) {
        rep.l2 = std::sqrt(kPi / eps);
        rep.deriv_l2 = std::sqrt(kPi * eps / 3.0);
    } else {
        rep.l2 = kPi / eps;
        rep.deriv_l2 = std::sqrt(2.0 / 3.0) * kPi;
    }
    return rep;
}

namespace {

// Asymptotic mean-square tail of 2 pi int_S^inf |phi|^2 s ds.  The radial
// part behaves like s^{-3/2} times a trigonometric sum with dyadic
// frequencies rho = 2^{-j}; distinct frequencies decorrelate, leaving
// (1/2) sum c_j^2 as the mean square of the bracket.
double phi_tail_estimate(const AuxFunction& phi, double S) {
    const LayeredRadialProfile& psi = phi.profile;
    const int m = psi.m;
    double sum_c2 = 0.0;
    for (int j = m; j <= 2 * m + 1; ++j) {
        const double rho = std::exp2(-static_cast<double>(j));
        double coeff = 0.0;
        if (j <= 2 * m) coeff += std::exp2(2.0 * j) / static_cast<double>(j);           // outer of annulus j
        if (j - 1 >= m) coeff -= std::exp2(2.0 * (j - 1)) / static_cast<double>(j - 1); // inner of annulus j-1
        sum_c2 += rho * coeff * coeff;
    }
    const double front = kTwoPi / phi.c_psi;
    return 2.0 * front * front * sum_c2 / S;
}

// Same construction for the gradient: each frequency coefficient picks up a
// factor rho from d/ds J1(s rho) asymptotics.
double grad_tail_estimate(const AuxFunction& phi, double S) {
    const LayeredRadialProfile& psi = phi.profile;
    const int m = psi.m;
    double sum_c2 = 0.0;
    for (int j = m; j <= 2 * m + 1; ++j) {
        const double rho = std::exp2(-static_cast<double>(j));
        double coeff = 0.0;
        if (j <= 2 * m) coeff += std::exp2(2.0 * j) / static_cast<double>(j);
        if (j - 1 >= m) coeff -= std::exp2(2.0 * (j - 1)) / static_cast<double>(j - 1);
        sum_c2 += rho * rho * rho * coeff * coeff;
    }
    const double front = kTwoPi / phi.c_psi;
    return 2.0 * front * front * sum_c2 / S;
}

template <typename F>
double radial_integral(F&& f2_times_s, double S, double panel, int order) {
    const QuadRule base = gauss_legendre(order);
    double acc = 0.0;
    for (double lo = 0.0; lo < S; lo += panel) {
        const double hi = std::min(lo + panel, S);
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (int i = 0; i < order; ++i) {
            const double s = mid + half * base.nodes[i];
            acc += half * base.weights[i] * f2_times_s(s);
        }
    }
    return kTwoPi * acc;
}

} // namespace

double phi_l2_spatial(const AuxFunction& phi, double rel_target, double* tail_out) {
    const double spec2 = phi.l2_norm() * phi.l2_norm();
    double S = 1e3;
    while (phi_tail_estimate(phi, S) > 0.4 * rel_target * spec2 && S < 4e5) S *= 2.0;
    const double period = kTwoPi / phi.profile.outer_radii.front();
    const double panel = period / 8.0;
    const double trunk = radial_integral(
        [&](double s) {
            const double v = phi.radial(s);
            return v * v * s;
        },
        S, panel, 8);
    const double tail = phi_tail_estimate(phi, S);
    if (tail_out) *tail_out = tail;
    return std::sqrt(trunk + tail);
}

double phi_grad_l2_spatial(const AuxFunction& phi, double rel_target, double* tail_out) {
    const double spec2 = phi.grad_l2_norm() * phi.grad_l2_norm();
    double S = 1e3;
    while (grad_tail_estimate(phi, S) > 0.4 * rel_target * spec2 && S < 4e5) S *= 2.0;
    const double period = kTwoPi / phi.profile.outer_radii.front();
    const double panel = period / 8.0;
    const double h = 1e-4;
    const double trunk = radial_integral(
        [&](double s) {
            const double d = (phi.radial(s + h) - phi.radial(std::max(s - h, 0.0))) /
                             (s - h > 0.0 ? 2.0 * h : h);
            return d * d * s;
        },
        S, panel, 8);
    const double tail = grad_tail_estimate(phi, S);
    if (tail_out) *tail_out = tail;
    return std::sqrt(trunk + tail);
}

double psi_integral_quadrature(const LayeredRadialProfile& psi) {
    double acc = 0.0;
    const QuadRule base = gauss_legendre(32);
    for (std::size_t i = 0; i < psi.levels.size(); ++i) {
        const double ro = psi.outer_radii[i], ri = 0.5 * ro;
        const double mid = 0.5 * (ri + ro), half = 0.5 * (ro - ri);
        for (int k = 0; k < 32; ++k) {
            const double s = mid + half * base.nodes[k];
            acc += half * base.weights[k] * psi.levels[i] * s;
        }
    }
    return kTwoPi * acc;
}

double psi_l2_quadrature(const LayeredRadialProfile& psi) {
    double acc = 0.0;
    const QuadRule base = gauss_legendre(32);
    for (std::size_t i = 0; i < psi.levels.size(); ++i) {
        const double ro = psi.outer_radii[i], ri = 0.5 * ro;
        const double mid = 0.5 * (ri + ro), half = 0.5 * (ro - ri);
        for (int k = 0; k < 32; ++k) {
            const double s = mid + half * base.nodes[k];
            acc += half * base.weights[k] * psi.levels[i] * psi.levels[i] * s;
        }
    }
    return std::sqrt(kTwoPi * acc);
}

} // namespace stsamp
