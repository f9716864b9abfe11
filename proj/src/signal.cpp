#include "stsamp/signal.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "stsamp/quadrature.hpp"

namespace stsamp {

using cd = std::complex<double>;

double kernel_transform(const GaussianKernel& k, const Vec2& xi) {
    return kPi / std::sqrt(k.a1 * k.a2) *
           std::exp(-xi.x * xi.x / (4.0 * k.a1) - xi.y * xi.y / (4.0 * k.a2));
}

SpectralGrid::SpectralGrid(double sigma, double R) : sigma_(sigma), R_(R) {
    if (!(sigma > 0.0) || !(R > 0.0)) throw std::invalid_argument("SpectralGrid: sigma and R must be positive");
    dxi_ = kPi / R_;
    // Relative nudge keeps quotients like (2 * 16pi) / pi from flooring down.
    kmax_ = static_cast<int>(std::floor(sigma_ / dxi_ * (1.0 + 1e-12)));
}

SpectralGrid SpectralGrid::with_kmax(int kmax, double R) {
    if (kmax < 0 || !(R > 0.0)) throw std::invalid_argument("SpectralGrid: bad kmax or R");
    SpectralGrid g((kmax + 0.5) * kPi / R, R);
    g.kmax_ = kmax;
    g.sigma_ = kmax * g.dxi_;
    if (g.sigma_ <= 0.0) g.sigma_ = g.dxi_ * 0.5; // kmax == 0: only the zero mode
    return g;
}

int SpectralGrid::index(int k1, int k2) const {
    if (std::abs(k1) > kmax_ || std::abs(k2) > kmax_)
        throw std::out_of_range("SpectralGrid: mode index outside grid");
    return (k1 + kmax_) * per_axis() + (k2 + kmax_);
}

std::pair<int, int> SpectralGrid::mode(int idx) const {
    if (idx < 0 || idx >= size()) throw std::out_of_range("SpectralGrid: flat index outside grid");
    return {idx / per_axis() - kmax_, idx % per_axis() - kmax_};
}

std::optional<std::pair<int, int>> SpectralGrid::mode_of_freq(const Vec2& xi, double tol) const {
    const double k1 = xi.x / dxi_, k2 = xi.y / dxi_;
    const int i1 = static_cast<int>(std::lround(k1)), i2 = static_cast<int>(std::lround(k2));
    if (std::fabs(k1 - i1) > tol || std::fabs(k2 - i2) > tol) return std::nullopt;
    if (std::abs(i1) > kmax_ || std::abs(i2) > kmax_) return std::nullopt;
    return std::make_pair(i1, i2);
}

BandlimitedField::BandlimitedField(SpectralGrid grid, Eigen::VectorXcd coeffs, bool real_flag)
    : grid_(grid), coeffs_(std::move(coeffs)), real_flag_(real_flag) {
    if (coeffs_.size() != grid_.size())
        throw std::invalid_argument("BandlimitedField: coefficient count does not match grid");
    if (real_flag_) {
        for (int idx = 0; idx < grid_.size(); ++idx) {
            auto [k1, k2] = grid_.mode(idx);
            const cd diff = coeffs_[idx] - std::conj(coeffs_[grid_.index(-k1, -k2)]);
            if (std::abs(diff) > 1e-12 * (1.0 + coeffs_.cwiseAbs().maxCoeff()))
                throw std::invalid_argument("BandlimitedField: real_flag set but coefficients lack conjugate symmetry");
        }
    }
}

BandlimitedField BandlimitedField::zero(const SpectralGrid& grid, bool real_flag) {
    return BandlimitedField(grid, Eigen::VectorXcd::Zero(grid.size()), real_flag);
}

BandlimitedField BandlimitedField::single_mode(const SpectralGrid& grid, int k1, int k2, cd coeff) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(grid.size());
    c[grid.index(k1, k2)] = coeff;
    return BandlimitedField(grid, std::move(c));
}

BandlimitedField BandlimitedField::cosine(const SpectralGrid& grid, int k1, int k2, double amplitude,
                                          double phase) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(grid.size());
    const cd half = 0.5 * amplitude * std::exp(cd{0.0, phase});
    c[grid.index(k1, k2)] += half;
    c[grid.index(-k1, -k2)] += std::conj(half);
    return BandlimitedField(grid, std::move(c), true);
}

std::complex<double> BandlimitedField::eval(const Vec2& x) const {
    // Separable accumulation: phases e^{i dxi k x} built once per axis.
    const int pa = grid_.per_axis();
    const int K = grid_.kmax();
    const cd w1 = std::exp(cd{0.0, grid_.dxi() * x.x});
    const cd w2 = std::exp(cd{0.0, grid_.dxi() * x.y});
    std::vector<cd> p1(pa), p2(pa);
    p1[K] = p2[K] = 1.0;
    for (int k = 1; k <= K; ++k) {
        p1[K + k] = p1[K + k - 1] * w1;
        p1[K - k] = std::conj(p1[K + k]);
        p2[K + k] = p2[K + k - 1] * w2;
        p2[K - k] = std::conj(p2[K + k]);
    }
    cd acc = 0.0;
    for (int i = 0; i < pa; ++i) {
        cd row = 0.0;
        const int base = i * pa;
        for (int j = 0; j < pa; ++j) row += coeffs_[base + j] * p2[j];
        acc += p1[i] * row;
    }
    return acc;
}

Eigen::MatrixXcd BandlimitedField::eval_grid(const std::vector<double>& x1,
                                             const std::vector<double>& x2) const {
    const int pa = grid_.per_axis();
    const int K = grid_.kmax();
    Eigen::MatrixXcd E1(static_cast<int>(x1.size()), pa), E2(static_cast<int>(x2.size()), pa);
    for (int i = 0; i < E1.rows(); ++i)
        for (int k = -K; k <= K; ++k) E1(i, k + K) = std::exp(cd{0.0, grid_.dxi() * k * x1[i]});
    for (int j = 0; j < E2.rows(); ++j)
        for (int k = -K; k <= K; ++k) E2(j, k + K) = std::exp(cd{0.0, grid_.dxi() * k * x2[j]});
    Eigen::MatrixXcd C(pa, pa);
    for (int i = 0; i < pa; ++i)
        for (int j = 0; j < pa; ++j) C(i, j) = coeffs_[i * pa + j];
    return E1 * C * E2.transpose();
}

double BandlimitedField::l2_norm() const {
    const double cell = 2.0 * grid_.half_period();
    return cell * std::sqrt(coeffs_.squaredNorm());
}

std::complex<double> convolve_eval(const BandlimitedField& f, const GaussianKernel& k, const Vec2& p) {
    const SpectralGrid& g = f.grid();
    const int pa = g.per_axis();
    const int K = g.kmax();
    // Per-axis multiplier factors: pi/sqrt(a1 a2) * e^{-xi1^2/4a1} * e^{-xi2^2/4a2}.
    std::vector<double> m1(pa), m2(pa);
    for (int kk = -K; kk <= K; ++kk) {
        const double xi = g.dxi() * kk;
        m1[kk + K] = std::exp(-xi * xi / (4.0 * k.a1));
        m2[kk + K] = std::exp(-xi * xi / (4.0 * k.a2));
    }
    const double front = kPi / std::sqrt(k.a1 * k.a2);
    const cd w1 = std::exp(cd{0.0, g.dxi() * p.x});
    const cd w2 = std::exp(cd{0.0, g.dxi() * p.y});
    std::vector<cd> p1(pa), p2(pa);
    p1[K] = p2[K] = 1.0;
    for (int kk = 1; kk <= K; ++kk) {
        p1[K + kk] = p1[K + kk - 1] * w1;
        p1[K - kk] = std::conj(p1[K + kk]);
        p2[K + kk] = p2[K + kk - 1] * w2;
        p2[K - kk] = std::conj(p2[K + kk]);
    }
    cd acc = 0.0;
    const auto& c = f.coeffs();
    for (int i = 0; i < pa; ++i) {
        cd row = 0.0;
        const int base = i * pa;
        for (int j = 0; j < pa; ++j) row += c[base + j] * m2[j] * p2[j];
        acc += m1[i] * p1[i] * row;
    }
    return front * acc;
}

double sup_norm_estimate(const BandlimitedField& f, int oversample) {
    if (oversample < 4) throw std::invalid_argument("sup_norm_estimate: oversample must be >= 4");
    const SpectralGrid& g = f.grid();
    const int n = oversample * g.per_axis();
    const double R = g.half_period();
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = -R + (2.0 * R * i) / n;
    const Eigen::MatrixXcd vals = f.eval_grid(xs, xs);
    return vals.cwiseAbs().maxCoeff();
}

BandlimitedField symmetrize(const BandlimitedField& f) {
    const SpectralGrid& g = f.grid();
    Eigen::VectorXcd out(g.size());
    for (int idx = 0; idx < g.size(); ++idx) {
        auto [k1, k2] = g.mode(idx);
        out[idx] = f.coeffs()[g.index(k1, k2)] + f.coeffs()[g.index(-k1, k2)] +
                   f.coeffs()[g.index(k1, -k2)] + f.coeffs()[g.index(-k1, -k2)];
    }
    return BandlimitedField(g, std::move(out), f.real_flag());
}

BandlimitedField translate(const BandlimitedField& f, const Vec2& v) {
    const SpectralGrid& g = f.grid();
    Eigen::VectorXcd out(g.size());
    for (int idx = 0; idx < g.size(); ++idx) {
        const Vec2 xi = g.freq(idx);
        out[idx] = f.coeffs()[idx] * std::exp(cd{0.0, -xi.dot(v)});
    }
    return BandlimitedField(g, std::move(out), f.real_flag());
}

BandlimitedField heat_state(const BandlimitedField& f, double alpha, double sigma_diff) {
    if (!(alpha > 0.0)) throw std::invalid_argument("heat_state: alpha must be positive");
    if (sigma_diff == 0.0) throw std::invalid_argument("heat_state: sigma_diff must be nonzero");
    const SpectralGrid& g = f.grid();
    Eigen::VectorXcd out(g.size());
    for (int idx = 0; idx < g.size(); ++idx) {
        const Vec2 xi = g.freq(idx);
        out[idx] = f.coeffs()[idx] * std::exp(-alpha * sigma_diff * xi.norm2());
    }
    return BandlimitedField(g, std::move(out), f.real_flag());
}

double lemma2_identity_check(const BandlimitedField& f, const Vec2& lambda, const Vec2& x) {
    if (!f.real_flag()) throw std::invalid_argument("lemma2_identity_check: field must be real");

    // Left side through the coefficient machinery.
    const double lhs = std::real(symmetrize(translate(f, lambda)).eval(x));

    // Right side as the cosine sum, computed independently mode by mode.
    const SpectralGrid& g = f.grid();
    const Vec2 lt = tilde(lambda);
    double rhs = 0.0;
    for (int idx = 0; idx < g.size(); ++idx) {
        auto [k1, k2] = g.mode(idx);
        const Vec2 xi = g.freq(idx);
        const cd ck = f.coeffs()[idx];
        const cd ckt = f.coeffs()[g.index(-k1, k2)];
        const cd term = std::exp(cd{0.0, -xi.dot(lambda)}) * ck + std::exp(cd{0.0, -xi.dot(lt)}) * ckt;
        rhs += 2.0 * std::cos(xi.dot(x)) * std::real(term);
    }
    return std::fabs(lhs - rhs);
}

HermiteReport hermite_orthogonality_check(const BandlimitedField& g, const IndexRect& I, int degrees) {
    if (!g.real_flag()) throw std::invalid_argument("hermite_orthogonality_check: field must be real");
    if (degrees < 0) throw std::invalid_argument("hermite_orthogonality_check: degrees must be >= 0");

    // Precondition: the origin samples vanish across the quadrature grid.
    for (const AlphaNode& node : I.quadrature()) {
        const cd s = convolve_eval(g, GaussianKernel(node.a1, node.a2), Vec2{0.0, 0.0});
        if (std::abs(s) > 1e-8) {
            std::ostringstream msg;
            msg << "hermite_orthogonality_check: (g*G_alpha)(0,0) = " << std::abs(s)
                << " at alpha = (" << node.a1 << ", " << node.a2 << ")";
            throw std::invalid_argument(msg.str());
        }
    }

    const BandlimitedField sg = symmetrize(g);

    // Inner products <h, x^{2a} y^{2b}> in L^2(e^{-|x|^2/2}) with
    // h = Sg e^{-|x|^2/4} collapse to integrals of Sg x^{2a} y^{2b} e^{-3|x|^2/4};
    // substitute x = 2t/sqrt(3) to reach the Gauss-Hermite weight e^{-t^2}.
    const int n_gh = 64;
    const QuadRule gh = gauss_hermite(n_gh);
    const double scale = 2.0 / std::sqrt(3.0);
    std::vector<double> xs(n_gh);
    for (int i = 0; i < n_gh; ++i) xs[i] = scale * gh.nodes[i];
    const Eigen::MatrixXcd vals = sg.eval_grid(xs, xs);

    HermiteReport report;
    for (int a = 0; 2 * a <= degrees; ++a)
        for (int b = 0; 2 * (a + b) <= degrees; ++b) report.exponents.push_back({a, b});

    // Monomials are normalized in the weighted space so the products are
    // comparable across degrees (high powers would otherwise amplify noise).
    const auto monomial_norm = [&](int a, int b) {
        double m1 = 0.0, m2 = 0.0;
        for (int i = 0; i < n_gh; ++i) {
            m1 += std::pow(xs[i], 4 * a) * gh.weights[i];
            m2 += std::pow(xs[i], 4 * b) * gh.weights[i];
        }
        return std::sqrt(m1 * m2 * scale * scale);
    };

    for (auto [a, b] : report.exponents) {
        double acc = 0.0;
        for (int i = 0; i < n_gh; ++i) {
            const double xa = std::pow(xs[i], 2 * a) * gh.weights[i];
            for (int j = 0; j < n_gh; ++j)
                acc += xa * std::pow(xs[j], 2 * b) * gh.weights[j] * std::real(vals(i, j));
        }
        report.inner_products.push_back(acc * scale * scale / monomial_norm(a, b));
    }

    // Weighted norm of h: integral of |Sg|^2 e^{-|x|^2}; substitute x = t.
    double norm2 = 0.0;
    std::vector<double> ts(n_gh);
    for (int i = 0; i < n_gh; ++i) ts[i] = gh.nodes[i];
    const Eigen::MatrixXcd vals_n = sg.eval_grid(ts, ts);
    for (int i = 0; i < n_gh; ++i)
        for (int j = 0; j < n_gh; ++j)
            norm2 += gh.weights[i] * gh.weights[j] * std::norm(vals_n(i, j));
    report.h_norm = std::sqrt(std::max(norm2, 0.0));

    report.max_abs_product = 0.0;
    for (double v : report.inner_products)
        report.max_abs_product = std::max(report.max_abs_product, std::fabs(v));
    // absolute allowance covers quadrature roundoff when h vanishes
    report.pass = report.max_abs_product <= 1e-6 * report.h_norm + 1e-14;
    return report;
}

std::string field_to_json(const BandlimitedField& f) {
    nlohmann::json j;
    j["sigma"] = f.grid().sigma();
    j["R"] = f.grid().half_period();
    j["kmax"] = f.grid().kmax();
    j["real"] = f.real_flag();
    auto& arr = j["coeffs"] = nlohmann::json::array();
    for (int i = 0; i < f.coeffs().size(); ++i)
        arr.push_back({f.coeffs()[i].real(), f.coeffs()[i].imag()});
    return j.dump();
}

BandlimitedField field_from_json(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    SpectralGrid grid = SpectralGrid::with_kmax(j.at("kmax").get<int>(), j.at("R").get<double>());
    const auto& arr = j.at("coeffs");
    Eigen::VectorXcd c(static_cast<int>(arr.size()));
    for (int i = 0; i < c.size(); ++i)
        c[i] = cd{arr[i].at(0).get<double>(), arr[i].at(1).get<double>()};
    return BandlimitedField(grid, std::move(c), j.value("real", false));
}

} // namespace stsamp
