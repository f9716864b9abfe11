#pragma once
//
// Discretized space-time sampling operator and frame bound estimation.
//
// The operator maps spectral coefficients c (field f = sum c_k e^{i xi_k.x})
// to weighted samples over (point, alpha-node) pairs:
//
//     A[(p, j), k] = sqrt(w_j) Ghat_{alpha_j}(xi_k) e^{i xi_k . p} / (2R),
//
// so that |A c|^2 is the Gauss-Legendre approximation of
// sum_p int_I |(f*G_alpha)(p)|^2 dalpha divided by the cell Parseval factor
// (2R)^2; the Rayleigh quotient |Ac|^2 / |c|^2 therefore equals the model
// frame quotient, and D1 = sigma_min(A)^2, D2 = sigma_max(A)^2.
//
// Rows are ordered point-major: row = point_index * n_alpha + alpha_index.
//
// Singular values are computed through the Gram matrix in a real orthonormal
// cosine/sine mode basis (the operator is real there because the multiplier
// is even per axis), which factors as an elementwise product of a phase Gram
// and a multiplier Gram; the dense row matrix is never needed.
//

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stsamp/geometry.hpp"
#include "stsamp/index_rect.hpp"
#include "stsamp/pointset.hpp"
#include "stsamp/signal.hpp"

namespace stsamp {

struct FrameReport {
    double D1 = 0.0;
    double D2 = 0.0;
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    // discretization metadata
    double sigma = 0.0;
    double R = 0.0;
    double dxi = 0.0;
    std::size_t n_points = 0;
    int n_modes = 0;
    int quad_order = 0;
    std::size_t rows = 0;
    std::string method;
};

class SamplingOperator {
public:
    SamplingOperator(PointSet2 points, IndexRect I, SpectralGrid grid);

    std::size_t rows() const { return points_.size() * nodes_.size(); }
    int cols() const { return grid_.size(); }

    const PointSet2& sample_points() const { return points_; }
    const IndexRect& index_rect() const { return I_; }
    const SpectralGrid& grid() const { return grid_; }
    const std::vector<AlphaNode>& alpha_nodes() const { return nodes_; }

    /// Single matrix entry (row = point_index * n_alpha + alpha_index).
    std::complex<double> entry(std::size_t row, int col) const;

    /// y = A c over all rows.
    Eigen::VectorXcd apply(const Eigen::VectorXcd& c) const;

    /// A^H y.
    Eigen::VectorXcd adjoint_apply(const Eigen::VectorXcd& y) const;

    /// Dense materialization for small problems; throws above the guard.
    Eigen::MatrixXcd dense(std::size_t max_entries = 4'000'000) const;

    // --- real cosine/sine basis -----------------------------------------

    /// Gram matrix A_r^T A_r in the real basis (same spectrum as A^H A).
    Eigen::MatrixXd gram_real() const;

    /// Real-basis coordinates d with A c = A_r d (unitary change of basis;
    /// d is complex for general c and real for conjugate-symmetric c).
    Eigen::VectorXcd to_real_coords(const Eigen::VectorXcd& c) const;
    Eigen::VectorXcd from_real_coords(const Eigen::VectorXcd& d) const;

    /// A_r^T y for complex sample vectors.
    Eigen::VectorXcd adjoint_apply_real(const Eigen::VectorXcd& y) const;

    /// G d without materializing G (for the iterative path above the cap).
    Eigen::VectorXd gram_apply_real(const Eigen::VectorXd& d) const;

private:
    void ensure_factors() const;

    PointSet2 points_;
    IndexRect I_;
    SpectralGrid grid_;
    std::vector<AlphaNode> nodes_;

    // Lazily built factors: real phase matrix (points x cols) and per-node
    // multiplier matrix (cols x n_alpha), both in the real basis.
    mutable Eigen::MatrixXd B_;
    mutable Eigen::MatrixXd D_;
    mutable bool factors_ready_ = false;
};

/// Column cap guards the dense-spectrum path; raise it only deliberately.
SamplingOperator assemble(const PointSet2& s, const IndexRect& I, const SpectralGrid& grid,
                          int column_cap = 4225);

/// D1 = sigma_min^2 and D2 = sigma_max^2.  Dense symmetric eigensolve up to
/// 4225 columns; above that a deterministic seeded Lanczos estimates the
/// extreme eigenvalues (method field says which path ran).
FrameReport frame_bounds(const SamplingOperator& a);

struct BesselLevel {
    double R = 0.0;
    std::size_t n_points = 0;
    double d2 = 0.0;
};

struct BesselReport {
    std::vector<BesselLevel> levels;
    double final_rel_increase = 0.0;
    bool stable = false;
};

/// D2 across successive window doublings of a generator-backed set (grid
/// periodization follows the window).  Stable when the final relative
/// increase is at most 5%.
BesselReport bessel_check(const PointSet2& s, const IndexRect& I, const SpectralGrid& grid,
                          int refinements);

struct ReconstructionResult {
    BandlimitedField field;
    double relative_residual = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    bool rank_deficient = false;
};

/// Ridge-regularized least squares min |Ac - y|^2 + ridge |c|^2, solved by an
/// eigendecomposition of the Gram matrix with spectral cutoff when ridge = 0.
ReconstructionResult reconstruct(const Eigen::VectorXcd& samples, const SamplingOperator& a,
                                 double ridge);

/// sup|f| divided by the largest space-time sample magnitude over S and the
/// quadrature grid of I; +infinity when every sample underflows.
double bernstein_deficiency(const BandlimitedField& f, const PointSet2& s, const IndexRect& I);

std::string frame_report_to_json(const FrameReport& r);

} // namespace stsamp
