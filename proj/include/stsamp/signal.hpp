#pragma once
//
// Bandlimited fields on a periodized window.  A field is a trigonometric sum
//     f(x) = sum_k c_k exp(i xi_k . x),   xi_k = (pi/R) k,  |xi_k|_inf <= sigma,
// which models PW^2_sigma on the cell [-R, R]^2: convolution with Gaussians,
// norms, symmetrization, and the heat semigroup all become exact finite
// linear algebra on the coefficients.
//

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stsamp/geometry.hpp"
#include "stsamp/index_rect.hpp"

namespace stsamp {

struct GaussianKernel {
    double a1 = 1.0; // exp(-a1 x1^2 - a2 x2^2); both strictly positive
    double a2 = 1.0;

    GaussianKernel() = default;
    GaussianKernel(double alpha1, double alpha2) : a1(alpha1), a2(alpha2) {
        if (!(a1 > 0.0 && a2 > 0.0)) throw std::invalid_argument("GaussianKernel: alpha must be positive");
    }
    static GaussianKernel radial(double alpha) { return GaussianKernel(alpha, alpha); }
};

/// Exact Fourier transform of the kernel under the e^{-i xi.x} convention:
/// (pi / sqrt(a1 a2)) exp(-xi1^2/(4 a1) - xi2^2/(4 a2)).
double kernel_transform(const GaussianKernel& k, const Vec2& xi);

/// Square mode grid: all xi = (pi/R)(k1, k2) with |xi|_inf <= sigma.
class SpectralGrid {
public:
    SpectralGrid(double sigma, double R);
    static SpectralGrid with_kmax(int kmax, double R);

    double sigma() const { return sigma_; }
    double half_period() const { return R_; }
    double dxi() const { return dxi_; }
    int kmax() const { return kmax_; }
    int per_axis() const { return 2 * kmax_ + 1; }
    int size() const { return per_axis() * per_axis(); }

    int index(int k1, int k2) const;
    std::pair<int, int> mode(int idx) const;
    Vec2 freq(int idx) const { auto [k1, k2] = mode(idx); return {dxi_ * k1, dxi_ * k2}; }

    /// Grid indices of an off-grid frequency, if it is grid-exact within tol.
    std::optional<std::pair<int, int>> mode_of_freq(const Vec2& xi, double tol = 1e-9) const;

    bool operator==(const SpectralGrid& o) const {
        return kmax_ == o.kmax_ && R_ == o.R_;
    }

private:
    double sigma_, R_, dxi_;
    int kmax_;
};

class BandlimitedField {
public:
    BandlimitedField(SpectralGrid grid, Eigen::VectorXcd coeffs, bool real_flag = false);

    static BandlimitedField zero(const SpectralGrid& grid, bool real_flag = false);
    /// Single mode exp(i xi_{k1,k2} . x) with the given coefficient.
    static BandlimitedField single_mode(const SpectralGrid& grid, int k1, int k2,
                                        std::complex<double> coeff = 1.0);
    /// r1 cos(xi.x + t1) with xi = dxi*(k1,k2); real by construction.
    static BandlimitedField cosine(const SpectralGrid& grid, int k1, int k2, double amplitude,
                                   double phase);

    const SpectralGrid& grid() const { return grid_; }
    const Eigen::VectorXcd& coeffs() const { return coeffs_; }
    bool real_flag() const { return real_flag_; }

    std::complex<double> eval(const Vec2& x) const;
    /// Field values on the tensor grid {x1_i} x {x2_j}; row i, column j.
    Eigen::MatrixXcd eval_grid(const std::vector<double>& x1, const std::vector<double>& x2) const;

    /// Parseval norm over one period cell: sqrt((2R)^2 sum |c_k|^2).
    double l2_norm() const;

private:
    SpectralGrid grid_;
    Eigen::VectorXcd coeffs_;
    bool real_flag_;
};

/// sum_k c_k Ghat(xi_k) e^{i xi_k . p}: the space-time sample (f * G)(p).
std::complex<double> convolve_eval(const BandlimitedField& f, const GaussianKernel& k, const Vec2& p);

/// Max of |f| over an (oversample * modes-per-axis)^2 uniform grid on the
/// cell; a lower bound on the cell sup with O(1/oversample^2) defect.
double sup_norm_estimate(const BandlimitedField& f, int oversample = 8);

/// Sf(x) = f(x) + f(~x) + f(-~x) + f(-x), as an orbit sum on coefficients.
BandlimitedField symmetrize(const BandlimitedField& f);

/// f(. - v): coefficients pick up e^{-i xi_k . v}.
BandlimitedField translate(const BandlimitedField& f, const Vec2& v);

/// Heat evolution u(., alpha) with spectral multiplier e^{-alpha sdiff |xi|^2}.
/// Sampling u at (p, alpha) equals, up to the factor pi/sqrt(a1 a2) of the
/// kernel transform, sampling f * G_a with a = 1/(4 alpha sdiff) per axis.
BandlimitedField heat_state(const BandlimitedField& f, double alpha, double sigma_diff);

/// Discrete two-sided check of the symmetrized-translate identity
///   S f_lambda(x) = 2 sum_k cos(xi_k.x) Re(e^{-i xi_k.lambda} c_k
///                                          + e^{-i xi_k.~lambda} c_{~k});
/// returns the absolute difference of the two sides (contract: <= 1e-10).
double lemma2_identity_check(const BandlimitedField& f, const Vec2& lambda, const Vec2& x);

struct HermiteReport {
    std::vector<double> inner_products; // <h, m_ab>/|m_ab| for 2a+2b <= degrees
    std::vector<std::pair<int, int>> exponents;
    double h_norm = 0.0;                // weighted L2 norm of h
    double max_abs_product = 0.0;
    bool pass = false;
};

/// Orthogonality of h(x) = Sg(x) e^{-|x|^2/4} to even monomials in
/// L^2(exp(-|x|^2/2)), via Gauss-Hermite quadrature.  Requires the space-time
/// samples of g at the origin to vanish on the quadrature grid of I (within
/// 1e-8); throws otherwise, naming the failing alpha.
HermiteReport hermite_orthogonality_check(const BandlimitedField& g, const IndexRect& I, int degrees);

std::string field_to_json(const BandlimitedField& f);
BandlimitedField field_from_json(const std::string& json_text);

} // namespace stsamp
