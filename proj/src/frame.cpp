#include "stsamp/frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include <json.hpp>

#include "stsamp/rng.hpp"

#ifdef STSAMP_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace stsamp {

using cd = std::complex<double>;

namespace {

// Real basis layout: column 0 is the zero mode; each representative pair
// {k, -k} (k1 > 0, or k1 == 0 and k2 > 0) contributes a cosine and a sine
// column.  Enumeration follows the flat complex index of the representative.
struct RealBasis {
    struct Entry {
        int k1, k2;  // representative (or 0,0)
        int kind;    // 0 = zero mode, 1 = cos, 2 = sin
    };
    std::vector<Entry> cols;
    std::vector<int> pair_col; // complex index -> first (cos) column of its pair, or 0 for zero mode

    explicit RealBasis(const SpectralGrid& g) {
        cols.reserve(static_cast<std::size_t>(g.size()));
        pair_col.assign(static_cast<std::size_t>(g.size()), -1);
        cols.push_back({0, 0, 0});
        pair_col[static_cast<std::size_t>(g.index(0, 0))] = 0;
        for (int idx = 0; idx < g.size(); ++idx) {
            auto [k1, k2] = g.mode(idx);
            if (k1 > 0 || (k1 == 0 && k2 > 0)) {
                pair_col[static_cast<std::size_t>(idx)] = static_cast<int>(cols.size());
                cols.push_back({k1, k2, 1});
                cols.push_back({k1, k2, 2});
            }
        }
    }
};

const RealBasis& real_basis_for(const SpectralGrid& g) {
    thread_local std::unique_ptr<RealBasis> cache;
    thread_local int cached_kmax = -1;
    thread_local double cached_R = -1.0;
    if (!cache || cached_kmax != g.kmax() || cached_R != g.half_period()) {
        cache = std::make_unique<RealBasis>(g);
        cached_kmax = g.kmax();
        cached_R = g.half_period();
    }
    return *cache;
}

// Symmetric eigenvalues, ascending; A is destroyed.
Eigen::VectorXd sym_eigenvalues(Eigen::MatrixXd& A) {
    const int n = static_cast<int>(A.rows());
#ifdef STSAMP_HAVE_LAPACKE
    Eigen::VectorXd w(n);
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, A.data(), n, w.data());
    if (info != 0) throw std::runtime_error("frame_bounds: dsyevd failed");
    return w;
#else
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
#endif
}

// Full eigensystem; on return A holds the eigenvectors (columns, ascending).
Eigen::VectorXd sym_eigensystem(Eigen::MatrixXd& A) {
    const int n = static_cast<int>(A.rows());
#ifdef STSAMP_HAVE_LAPACKE
    Eigen::VectorXd w(n);
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, A.data(), n, w.data());
    if (info != 0) throw std::runtime_error("reconstruct: dsyevd failed");
    return w;
#else
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    Eigen::VectorXd w = es.eigenvalues();
    A = es.eigenvectors();
    return w;
#endif
}

} // namespace

SamplingOperator::SamplingOperator(PointSet2 points, IndexRect I, SpectralGrid grid)
    : points_(std::move(points)), I_(I), grid_(grid), nodes_(I.quadrature()) {
    if (points_.empty()) throw std::invalid_argument("SamplingOperator: point set is empty");
}

std::complex<double> SamplingOperator::entry(std::size_t row, int col) const {
    const std::size_t q = nodes_.size();
    const Vec2& p = points_.points()[row / q];
    const AlphaNode& node = nodes_[row % q];
    const Vec2 xi = grid_.freq(col);
    const double mult = kernel_transform(GaussianKernel(node.a1, node.a2), xi);
    return std::sqrt(node.weight) * mult / (2.0 * grid_.half_period()) *
           std::exp(cd{0.0, xi.dot(p)});
}

void SamplingOperator::ensure_factors() const {
    if (factors_ready_) return;
    const RealBasis& basis = real_basis_for(grid_);
    const int n = grid_.size();
    const auto npts = static_cast<int>(points_.size());
    const auto q = static_cast<int>(nodes_.size());
    const double dxi = grid_.dxi();
    const double inv2R = 1.0 / (2.0 * grid_.half_period());
    const double sqrt2 = std::sqrt(2.0);

    B_.resize(npts, n);
    for (int i = 0; i < npts; ++i) {
        const Vec2& p = points_.points()[static_cast<std::size_t>(i)];
        for (int c = 0; c < n; ++c) {
            const auto& e = basis.cols[static_cast<std::size_t>(c)];
            const double phase = dxi * (e.k1 * p.x + e.k2 * p.y);
            B_(i, c) = e.kind == 0 ? 1.0 : (e.kind == 1 ? sqrt2 * std::cos(phase) : -sqrt2 * std::sin(phase));
        }
    }

    D_.resize(n, q);
    for (int c = 0; c < n; ++c) {
        const auto& e = basis.cols[static_cast<std::size_t>(c)];
        const Vec2 xi{dxi * e.k1, dxi * e.k2};
        for (int j = 0; j < q; ++j) {
            const AlphaNode& node = nodes_[static_cast<std::size_t>(j)];
            D_(c, j) = std::sqrt(node.weight) * inv2R *
                       kernel_transform(GaussianKernel(node.a1, node.a2), xi);
        }
    }
    factors_ready_ = true;
}

Eigen::VectorXcd SamplingOperator::apply(const Eigen::VectorXcd& c) const {
    if (c.size() != cols()) throw std::invalid_argument("apply: coefficient size mismatch");
    ensure_factors();
    const Eigen::VectorXcd d = to_real_coords(c);
    const auto npts = static_cast<int>(points_.size());
    const auto q = static_cast<int>(nodes_.size());
    Eigen::VectorXcd y(static_cast<int>(rows()));
    // Row block for node j is B * (D_col_j .* d).
    Eigen::MatrixXcd X(cols(), q);
    for (int j = 0; j < q; ++j) X.col(j) = D_.col(j).cast<cd>().cwiseProduct(d);
    Eigen::MatrixXcd Y = B_.cast<cd>() * X; // npts x q
    for (int i = 0; i < npts; ++i)
        for (int j = 0; j < q; ++j) y[i * q + j] = Y(i, j);
    return y;
}

Eigen::VectorXcd SamplingOperator::adjoint_apply(const Eigen::VectorXcd& y) const {
    return from_real_coords(adjoint_apply_real(y));
}

Eigen::VectorXcd SamplingOperator::adjoint_apply_real(const Eigen::VectorXcd& y) const {
    if (y.size() != static_cast<Eigen::Index>(rows()))
        throw std::invalid_argument("adjoint_apply: sample size mismatch");
    ensure_factors();
    const auto npts = static_cast<int>(points_.size());
    const auto q = static_cast<int>(nodes_.size());
    Eigen::MatrixXcd Y(npts, q);
    for (int i = 0; i < npts; ++i)
        for (int j = 0; j < q; ++j) Y(i, j) = y[i * q + j];
    const Eigen::MatrixXcd Z = B_.transpose().cast<cd>() * Y; // n x q
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(cols());
    for (int j = 0; j < q; ++j) out += D_.col(j).cast<cd>().cwiseProduct(Z.col(j));
    return out;
}

Eigen::MatrixXcd SamplingOperator::dense(std::size_t max_entries) const {
    if (rows() * static_cast<std::size_t>(cols()) > max_entries)
        throw std::invalid_argument("dense: operator too large to materialize");
    Eigen::MatrixXcd A(static_cast<int>(rows()), cols());
    for (std::size_t r = 0; r < rows(); ++r)
        for (int c = 0; c < cols(); ++c) A(static_cast<int>(r), c) = entry(r, c);
    return A;
}

Eigen::MatrixXd SamplingOperator::gram_real() const {
    ensure_factors();
    const int n = cols();
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n, n);
    E.selfadjointView<Eigen::Lower>().rankUpdate(B_.transpose());
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    M.selfadjointView<Eigen::Lower>().rankUpdate(D_);
    E.array() *= M.array(); // Hadamard: (B^T B) .* (D D^T)
    E.triangularView<Eigen::StrictlyUpper>() = E.transpose();
    return E;
}

Eigen::VectorXcd SamplingOperator::to_real_coords(const Eigen::VectorXcd& c) const {
    const RealBasis& basis = real_basis_for(grid_);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::VectorXcd d(cols());
    for (int col = 0; col < cols(); ++col) {
        const auto& e = basis.cols[static_cast<std::size_t>(col)];
        if (e.kind == 0) {
            d[col] = c[grid_.index(0, 0)];
        } else {
            const cd cp = c[grid_.index(e.k1, e.k2)];
            const cd cm = c[grid_.index(-e.k1, -e.k2)];
            d[col] = e.kind == 1 ? (cp + cm) * inv_sqrt2 : cd{0.0, -1.0} * (cp - cm) * inv_sqrt2;
        }
    }
    return d;
}

Eigen::VectorXcd SamplingOperator::from_real_coords(const Eigen::VectorXcd& d) const {
    const RealBasis& basis = real_basis_for(grid_);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(cols());
    for (int col = 0; col < cols(); ++col) {
        const auto& e = basis.cols[static_cast<std::size_t>(col)];
        if (e.kind == 0) {
            c[grid_.index(0, 0)] += d[col];
        } else if (e.kind == 1) {
            c[grid_.index(e.k1, e.k2)] += d[col] * inv_sqrt2;
            c[grid_.index(-e.k1, -e.k2)] += d[col] * inv_sqrt2;
        } else {
            c[grid_.index(e.k1, e.k2)] += cd{0.0, 1.0} * d[col] * inv_sqrt2;
            c[grid_.index(-e.k1, -e.k2)] -= cd{0.0, 1.0} * d[col] * inv_sqrt2;
        }
    }
    return c;
}

Eigen::VectorXd SamplingOperator::gram_apply_real(const Eigen::VectorXd& d) const {
    ensure_factors();
    const auto q = static_cast<int>(nodes_.size());
    Eigen::MatrixXd X(cols(), q);
    for (int j = 0; j < q; ++j) X.col(j) = D_.col(j).cwiseProduct(d);
    const Eigen::MatrixXd Y = B_ * X;
    const Eigen::MatrixXd Z = B_.transpose() * Y;
    Eigen::VectorXd out = Eigen::VectorXd::Zero(cols());
    for (int j = 0; j < q; ++j) out += D_.col(j).cwiseProduct(Z.col(j));
    return out;
}

SamplingOperator assemble(const PointSet2& s, const IndexRect& I, const SpectralGrid& grid,
                          int column_cap) {
    I.validate();
    if (s.empty()) throw std::invalid_argument("assemble: point set is empty");
    if (grid.size() > column_cap)
        throw std::invalid_argument(
            "assemble: mode grid exceeds the column cap; use a smaller sigma or a coarser grid "
            "(larger mode spacing), or raise the cap explicitly");
    return SamplingOperator(s, I, grid);
}

namespace {

// Deterministic Lanczos with full reorthogonalization; returns extreme Ritz
// values of the Gram operator.
std::pair<double, double> lanczos_extremes(const SamplingOperator& a, int max_iter) {
    const int n = a.cols();
    const int m = std::min(max_iter, n);
    Rng rng(0x1a2b3c4dULL);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
    v.normalize();
    Eigen::MatrixXd V(n, m);
    Eigen::VectorXd alpha(m), beta(m);
    Eigen::VectorXd w;
    int k = 0;
    for (; k < m; ++k) {
        V.col(k) = v;
        w = a.gram_apply_real(v);
        alpha[k] = v.dot(w);
        w -= alpha[k] * v;
        if (k > 0) w -= beta[k - 1] * V.col(k - 1);
        // full reorthogonalization, twice
        for (int pass = 0; pass < 2; ++pass)
            w -= V.leftCols(k + 1) * (V.leftCols(k + 1).transpose() * w);
        beta[k] = w.norm();
        if (beta[k] < 1e-13) { ++k; break; }
        v = w / beta[k];
    }
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
        T(i, i) = alpha[i];
        if (i + 1 < k) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
    return {es.eigenvalues()[0], es.eigenvalues()[k - 1]};
}

} // namespace

FrameReport frame_bounds(const SamplingOperator& a) {
    FrameReport rep;
    rep.sigma = a.grid().sigma();
    rep.R = a.grid().half_period();
    rep.dxi = a.grid().dxi();
    rep.n_points = a.sample_points().size();
    rep.n_modes = a.cols();
    rep.quad_order = a.index_rect().quad_order;
    rep.rows = a.rows();

    if (a.cols() <= 4225) {
        Eigen::MatrixXd G = a.gram_real();
        const Eigen::VectorXd evals = sym_eigenvalues(G);
        rep.D1 = std::max(evals[0], 0.0);
        rep.D2 = std::max(evals[evals.size() - 1], 0.0);
        rep.method = "dense-eig";
    } else {
        // Extreme Ritz values; the lower end is an upper bound on D1 and is
        // reported with that caveat in the method tag.
        auto [lo, hi] = lanczos_extremes(a, 300);
        rep.D1 = std::max(lo, 0.0);
        rep.D2 = std::max(hi, 0.0);
        rep.method = "lanczos-300";
    }
    if (static_cast<Eigen::Index>(a.rows()) < a.cols()) rep.D1 = 0.0; // rank-deficient by shape
    rep.sigma_min = std::sqrt(rep.D1);
    rep.sigma_max = std::sqrt(rep.D2);
    return rep;
}

BesselReport bessel_check(const PointSet2& s, const IndexRect& I, const SpectralGrid& grid,
                          int refinements) {
    if (refinements < 2) throw std::invalid_argument("bessel_check: need at least two levels");
    if (!s.source() || s.source()->kind == GeneratorConfig::Kind::from_file)
        throw std::invalid_argument("bessel_check: point set has no generator backing; cannot enlarge");

    BesselReport rep;
    for (int level = 0; level < refinements; ++level) {
        const double R = s.window_radius() * std::exp2(level);
        const PointSet2 sl = gen(*s.source(), R);
        const SpectralGrid gl(grid.sigma(), R);
        const FrameReport fr = frame_bounds(assemble(sl, I, gl));
        rep.levels.push_back({R, sl.size(), fr.D2});
    }
    const double prev = rep.levels[rep.levels.size() - 2].d2;
    const double last = rep.levels.back().d2;
    rep.final_rel_increase = (last - prev) / prev;
    rep.stable = rep.final_rel_increase <= 0.05;
    return rep;
}

ReconstructionResult reconstruct(const Eigen::VectorXcd& samples, const SamplingOperator& a,
                                 double ridge) {
    if (samples.size() != static_cast<Eigen::Index>(a.rows()))
        throw std::invalid_argument("reconstruct: sample vector does not match operator rows");
    if (ridge < 0.0) throw std::invalid_argument("reconstruct: ridge must be nonnegative");

    Eigen::MatrixXd G = a.gram_real();
    const Eigen::VectorXd evals = sym_eigensystem(G); // G now holds eigenvectors
    const double lmax = std::max(evals[evals.size() - 1], 0.0);
    const Eigen::VectorXcd rhs = a.adjoint_apply_real(samples);

    // Spectral filter: ridge shift when given, relative cutoff otherwise.
    const double cutoff = lmax * 1e-12;
    const Eigen::VectorXcd proj = G.transpose().cast<cd>() * rhs;
    Eigen::VectorXcd scaled = Eigen::VectorXcd::Zero(proj.size());
    for (int i = 0; i < proj.size(); ++i) {
        const double lam = evals[i];
        if (ridge > 0.0)
            scaled[i] = proj[i] / (lam + ridge);
        else if (lam > cutoff)
            scaled[i] = proj[i] / lam;
    }
    const Eigen::VectorXcd d = G.cast<cd>() * scaled;
    const Eigen::VectorXcd c = a.from_real_coords(d);

    ReconstructionResult res{BandlimitedField(a.grid(), c), 0.0,
                             std::max(evals[0], 0.0), lmax,
                             evals[0] <= lmax * 1e-10};
    const double ynorm = samples.norm();
    res.relative_residual = ynorm > 0.0 ? (a.apply(c) - samples).norm() / ynorm : 0.0;
    return res;
}

double bernstein_deficiency(const BandlimitedField& f, const PointSet2& s, const IndexRect& I) {
    const double sup = sup_norm_estimate(f, 8);
    if (sup == 0.0) throw std::invalid_argument("bernstein_deficiency: field is zero");
    double best = 0.0;
    for (const AlphaNode& node : I.quadrature()) {
        const GaussianKernel k(node.a1, node.a2);
        for (const Vec2& p : s.points())
            best = std::max(best, std::abs(convolve_eval(f, k, p)));
    }
    if (best < 1e-300) return std::numeric_limits<double>::infinity();
    return sup / best;
}

std::string frame_report_to_json(const FrameReport& r) {
    nlohmann::json j;
    j["D1"] = r.D1;
    j["D2"] = r.D2;
    j["sigma_min"] = r.sigma_min;
    j["sigma_max"] = r.sigma_max;
    j["sigma"] = r.sigma;
    j["R"] = r.R;
    j["dxi"] = r.dxi;
    j["n_points"] = r.n_points;
    j["n_modes"] = r.n_modes;
    j["quad_order"] = r.quad_order;
    j["rows"] = r.rows;
    j["method"] = r.method;
    return j.dump(2);
}

} // namespace stsamp
