#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "stsamp/counterexample.hpp"
#include "stsamp/frame.hpp"
#include "stsamp/lattice.hpp"
#include "stsamp/rng.hpp"
#include "test_helpers.hpp"

using namespace stsamp;
using cd = std::complex<double>;

namespace {

PointSet2 lattice2pi(double R) {
    GeneratorConfig cfg;
    cfg.kind = GeneratorConfig::Kind::rect_lattice;
    cfg.spacing = kTwoPi;
    return gen(cfg, R);
}

PointSet2 jittered(double R, double jitter, std::uint64_t seed) {
    GeneratorConfig cfg;
    cfg.kind = GeneratorConfig::Kind::jittered_delone;
    cfg.spacing = kTwoPi;
    cfg.jitter = jitter;
    cfg.seed = seed;
    return gen(cfg, R);
}

// small operator shared by several property tests: 4 pi window, sigma 1
SamplingOperator small_op(const PointSet2& pts, int quad = 8) {
    return assemble(pts, IndexRect::product(0.5, 1.0, 0.5, 1.0, quad), SpectralGrid(1.0, 4.0 * kPi));
}

} // namespace

TEST_CASE("single point single mode closed form") {
    const PointSet2 s({{0.0, 0.0}}, 0.5);
    const SpectralGrid grid(1.0, 0.5); // one mode
    REQUIRE(grid.size() == 1);
    const FrameReport fr = frame_bounds(assemble(s, IndexRect::product(0.5, 1.0, 0.5, 1.0, 32), grid));
    const double expect = kPi * kPi * std::log(2.0) * std::log(2.0);
    CHECK(fr.D1 == doctest::Approx(expect).epsilon(1e-10));
    CHECK(fr.D2 == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("quadrature order is converged") {
    const PointSet2 s({{0.3, -0.1}, {1.7, 2.3}}, 4.0 * kPi);
    const SpectralGrid grid(1.0, 4.0 * kPi);
    Rng rng(3);
    Eigen::VectorXcd c(grid.size());
    for (int i = 0; i < c.size(); ++i) c[i] = cd{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    c /= c.norm();
    const auto q16 = assemble(s, IndexRect::product(0.5, 1.0, 0.5, 1.0, 16), grid);
    const auto q32 = assemble(s, IndexRect::product(0.5, 1.0, 0.5, 1.0, 32), grid);
    const double f16 = q16.apply(c).squaredNorm();
    const double f32 = q32.apply(c).squaredNorm();
    CHECK(std::fabs(f16 - f32) <= 1e-12 * std::max(1.0, f32));
}

TEST_CASE("assembly guards") {
    const PointSet2 s({{0.0, 0.0}}, 1.0);
    IndexRect bad = IndexRect::product(0.5, 1.0, 0.5, 1.0, 4);
    bad.quad_order = 0; // empty alpha quadrature
    CHECK_THROWS_AS(assemble(s, bad, SpectralGrid(1.0, 1.0)), std::invalid_argument);
    CHECK_THROWS_WITH_AS(assemble(s, IndexRect::product(0.5, 1.0, 0.5, 1.0, 4),
                                  SpectralGrid(10.0, 40.0)),
                         doctest::Contains("cap"), std::invalid_argument);
    CHECK_THROWS_AS(assemble(PointSet2(std::vector<Vec2>{}, 1.0),
                             IndexRect::product(0.5, 1.0, 0.5, 1.0, 4), SpectralGrid(1.0, 1.0)),
                    std::invalid_argument);
}

TEST_CASE("entries, dense materialization and apply are consistent") {
    const PointSet2 s({{0.4, 0.2}, {-1.0, 2.0}, {3.1, -0.7}}, 4.0 * kPi);
    const SamplingOperator A = small_op(s, 3);
    const Eigen::MatrixXcd D = A.dense();
    Rng rng(4);
    Eigen::VectorXcd c(A.cols());
    for (int i = 0; i < c.size(); ++i) c[i] = cd{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const Eigen::VectorXcd y1 = A.apply(c);
    const Eigen::VectorXcd y2 = D * c;
    CHECK((y1 - y2).norm() <= 1e-12 * y2.norm());

    // adjoint consistency
    Eigen::VectorXcd y(A.rows());
    for (int i = 0; i < y.size(); ++i) y[i] = cd{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const Eigen::VectorXcd at1 = A.adjoint_apply(y);
    const Eigen::VectorXcd at2 = D.adjoint() * y;
    CHECK((at1 - at2).norm() <= 1e-12 * at2.norm());

    // entry accessor matches the dense materialization
    CHECK(std::abs(A.entry(5, 7) - D(5, 7)) < 1e-15);
}

TEST_CASE("real basis is unitary and reproduces the Gram matrix") {
    const PointSet2 s = jittered(4.0 * kPi, 0.4, 3);
    const SamplingOperator A = small_op(s);
    Rng rng(5);
    Eigen::VectorXcd c(A.cols());
    for (int i = 0; i < c.size(); ++i) c[i] = cd{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const Eigen::VectorXcd d = A.to_real_coords(c);
    CHECK(d.norm() == doctest::Approx(c.norm()).epsilon(1e-13));
    CHECK((A.from_real_coords(d) - c).norm() <= 1e-12 * c.norm());

    const Eigen::MatrixXd G = A.gram_real();
    // quadratic form through the factored Gram equals |A c|^2
    Eigen::VectorXd dr(A.cols());
    for (int i = 0; i < dr.size(); ++i) dr[i] = rng.uniform(-1.0, 1.0);
    const double through_gram = dr.dot(G * dr);
    const double through_apply = A.apply(A.from_real_coords(dr.cast<cd>())).squaredNorm();
    CHECK(through_gram == doctest::Approx(through_apply).epsilon(1e-11));

    // factored application agrees with the materialized Gram
    const Eigen::VectorXd gd = A.gram_apply_real(dr);
    CHECK((gd - G * dr).norm() <= 1e-11 * gd.norm());
}

TEST_CASE("null-space certificate on the 2pi lattice") {
    const PointSet2 s = lattice2pi(4.0 * kPi);
    const SamplingOperator A = small_op(s);
    const FrameReport fr = frame_bounds(A);
    CHECK(fr.D1 <= 1e-16 * fr.D2);

    const auto L = CurvilinearLattice::from_angle({0, 0}, {1, 1}, kPi / 4.0);
    Eigen::VectorXcd gvec = build_g(L, A.grid()).coeffs();
    CHECK(A.apply(gvec).norm() <= 1e-10 * fr.sigma_max * gvec.norm());
}

TEST_CASE("jittered window keeps a positive lower bound at small bandwidth") {
    // conditioning is alpha-family limited: at sigma = 0.5 the measured ratio
    // is 1.29e-8, frozen here with an order of magnitude of headroom
    const PointSet2 s = jittered(4.0 * kPi, 0.3, 7);
    const FrameReport fr =
        frame_bounds(assemble(s, IndexRect::product(0.5, 1.0, 0.5, 1.0, 8), SpectralGrid(0.5, 4.0 * kPi)));
    CHECK(fr.D1 > 1e-9 * fr.D2);
    CHECK(fr.method == "dense-eig");
}

TEST_CASE("frame sandwich with extremal vectors") {
    const PointSet2 s = jittered(4.0 * kPi, 0.3, 1);
    const SamplingOperator A = small_op(s);
    const FrameReport fr = frame_bounds(A);
    Rng rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::VectorXcd c(A.cols());
        for (int i = 0; i < c.size(); ++i) c[i] = cd{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const double q = A.apply(c).squaredNorm();
        CHECK(q >= fr.D1 * c.squaredNorm() - 1e-10 * fr.D2 * c.squaredNorm());
        CHECK(q <= fr.D2 * c.squaredNorm() * (1.0 + 1e-10));
    }
    // extremal eigenvectors achieve the bounds
    Eigen::MatrixXd G = A.gram_real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    const Eigen::VectorXcd cmin = A.from_real_coords(es.eigenvectors().col(0).cast<cd>());
    const Eigen::VectorXcd cmax =
        A.from_real_coords(es.eigenvectors().col(G.rows() - 1).cast<cd>());
    CHECK(A.apply(cmin).squaredNorm() ==
          doctest::Approx(fr.D1 * cmin.squaredNorm()).epsilon(1e-8).scale(fr.D2));
    CHECK(A.apply(cmax).squaredNorm() ==
          doctest::Approx(fr.D2 * cmax.squaredNorm()).epsilon(1e-8));
}

TEST_CASE("conjugate mode columns and real quadratic forms") {
    const PointSet2 s({{0.7, -0.3}, {2.0, 1.0}}, 4.0 * kPi);
    const SamplingOperator A = small_op(s, 3);
    const SpectralGrid& g = A.grid();
    for (std::size_t row = 0; row < A.rows(); row += 5) {
        for (int k1 = -g.kmax(); k1 <= g.kmax(); ++k1)
            for (int k2 = -g.kmax(); k2 <= g.kmax(); ++k2) {
                const cd a = A.entry(row, g.index(k1, k2));
                const cd b = A.entry(row, g.index(-k1, -k2));
                CHECK(std::abs(a - std::conj(b)) < 1e-15);
            }
    }
    // real fields produce real samples
    Rng rng(7);
    const BandlimitedField f = testing::random_real_field(g, rng, 5);
    const Eigen::VectorXcd y = A.apply(f.coeffs());
    CHECK(y.imag().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("monotonicity in the sampling set and the index rectangle") {
    const PointSet2 small_set = lattice2pi(4.0 * kPi);
    std::vector<Vec2> more = small_set.points();
    more.push_back({1.1, 0.4});
    more.push_back({-2.3, 3.3});
    const PointSet2 big_set(more, 4.0 * kPi);
    const FrameReport a = frame_bounds(small_op(small_set));
    const FrameReport b = frame_bounds(small_op(big_set));
    CHECK(b.D1 >= a.D1 - 1e-12 * a.D2);
    CHECK(b.D2 >= a.D2 * (1.0 - 1e-12));

    const PointSet2 s = jittered(4.0 * kPi, 0.3, 2);
    const SpectralGrid grid(1.0, 4.0 * kPi);
    const FrameReport inner =
        frame_bounds(assemble(s, IndexRect::product(0.5, 1.0, 0.5, 1.0, 12), grid));
    const FrameReport outer =
        frame_bounds(assemble(s, IndexRect::product(0.4, 1.1, 0.4, 1.1, 12), grid));
    CHECK(outer.D1 >= inner.D1 * (1.0 - 1e-10));
    CHECK(outer.D2 >= inner.D2 * (1.0 - 1e-10));
}

TEST_CASE("bessel stability across window doublings") {
    const PointSet2 base = lattice2pi(4.0 * kPi);
    const IndexRect I = IndexRect::product(0.5, 1.0, 0.5, 1.0, 8);
    const BesselReport rep = bessel_check(base, I, SpectralGrid(1.0, 4.0 * kPi), 3);
    REQUIRE(rep.levels.size() == 3);
    CHECK(rep.levels[0].R == doctest::Approx(4.0 * kPi));
    CHECK(rep.levels[2].R == doctest::Approx(16.0 * kPi));
    CHECK(rep.stable);
    CHECK(std::fabs(rep.final_rel_increase) <= 0.05);

    // no generator backing
    const PointSet2 loose({{0.0, 0.0}, {1.0, 1.0}}, 2.0);
    CHECK_THROWS_WITH_AS(bessel_check(loose, I, SpectralGrid(1.0, 2.0), 2),
                         doctest::Contains("generator"), std::invalid_argument);
}

TEST_CASE("bessel bound is additive in points and monotone in density") {
    const IndexRect I = IndexRect::product(0.5, 1.0, 0.5, 1.0, 8);
    const SpectralGrid grid(1.0, 4.0 * kPi);
    const PointSet2 one({{0.0, 0.0}}, 4.0 * kPi);
    std::vector<Vec2> quad = {{0.0, 0.0}, {kTwoPi, 0.0}, {0.0, kTwoPi}, {kTwoPi, kTwoPi}};
    const PointSet2 four(quad, 4.0 * kPi);
    const double d2_1 = frame_bounds(assemble(one, I, grid)).D2;
    const double d2_4 = frame_bounds(assemble(four, I, grid)).D2;
    CHECK(d2_4 <= 4.0 * d2_1 * (1.0 + 1e-12));

    // halving the spacing adds rows and cannot decrease D2
    GeneratorConfig dense_cfg;
    dense_cfg.kind = GeneratorConfig::Kind::rect_lattice;
    dense_cfg.spacing = kPi;
    const PointSet2 denser = gen(dense_cfg, 4.0 * kPi);
    const double d2_dense = frame_bounds(assemble(denser, I, grid)).D2;
    const double d2_coarse = frame_bounds(assemble(lattice2pi(4.0 * kPi), I, grid)).D2;
    CHECK(d2_dense >= d2_coarse * (1.0 - 1e-12));
}

TEST_CASE("reconstruction round trip and the degenerate direction") {
    const PointSet2 s = jittered(4.0 * kPi, 0.3, 7);
    const SamplingOperator A =
        assemble(s, IndexRect::product(0.5, 1.0, 0.5, 1.0, 8), SpectralGrid(0.5, 4.0 * kPi));
    Rng rng(8);
    Eigen::VectorXcd c(A.cols());
    for (int i = 0; i < c.size(); ++i) c[i] = cd{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    c /= c.norm();
    const ReconstructionResult rec = reconstruct(A.apply(c), A, 0.0);
    CHECK((rec.field.coeffs() - c).norm() <= 1e-8);
    CHECK(rec.relative_residual <= 1e-10);
    CHECK_FALSE(rec.rank_deficient);

    // zero data reconstructs the zero field
    const ReconstructionResult zero = reconstruct(Eigen::VectorXcd::Zero(A.rows()), A, 0.0);
    CHECK(zero.field.coeffs().norm() == 0.0);

    // lattice-degenerate direction: data vanishes, the component is lost
    const PointSet2 lat = lattice2pi(4.0 * kPi);
    const SamplingOperator Al = small_op(lat);
    const auto L = CurvilinearLattice::from_angle({0, 0}, {1, 1}, kPi / 4.0);
    Eigen::VectorXcd gvec = build_g(L, Al.grid()).coeffs();
    gvec /= gvec.norm();
    const ReconstructionResult recl = reconstruct(Al.apply(gvec), Al, 0.0);
    CHECK(recl.rank_deficient);
    CHECK(std::abs((recl.field.coeffs() - gvec).dot(gvec)) >= 0.99);

    Eigen::VectorXcd wrong(A.rows() + 1);
    CHECK_THROWS_AS(reconstruct(wrong, A, 0.0), std::invalid_argument);
}

TEST_CASE("ridge shifts the spectrum without blowing up") {
    // ridge trades coefficient error in the weak directions for a small,
    // stable residual; only the residual is contract-checked here
    const PointSet2 s = jittered(4.0 * kPi, 0.3, 9);
    const SamplingOperator A = small_op(s);
    Rng rng(9);
    Eigen::VectorXcd c(A.cols());
    for (int i = 0; i < c.size(); ++i) c[i] = cd{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const Eigen::VectorXcd y = A.apply(c);
    const ReconstructionResult rec = reconstruct(y, A, 1e-6);
    CHECK(rec.relative_residual <= 1e-2);
    CHECK((rec.field.coeffs() - c).norm() / c.norm() <= 1.0);
}

TEST_CASE("bernstein deficiency basics") {
    const SpectralGrid grid(1.0, 0.5);
    const IndexRect I = IndexRect::product(0.5, 1.0, 0.5, 1.0, 8);
    const PointSet2 origin({{0.0, 0.0}}, 0.5);
    const BandlimitedField constant = BandlimitedField::single_mode(grid, 0, 0, 1.0);
    const double def = bernstein_deficiency(constant, origin, I);
    CHECK(def <= 1.0 / kPi + 1e-12);

    CHECK(bernstein_deficiency(BandlimitedField(grid, 2.0 * constant.coeffs()), origin, I) ==
          doctest::Approx(def).epsilon(1e-15));

    CHECK_THROWS_AS(bernstein_deficiency(BandlimitedField::zero(grid), origin, I),
                    std::invalid_argument);
}

TEST_CASE("iterative path agrees with converged power iteration above the cap") {
    // tiny point set, large mode grid: cols > 4225 forces the Lanczos path
    const PointSet2 s = jittered(4.0 * kPi, 0.4, 11);
    std::vector<Vec2> few(s.points().begin(), s.points().begin() + 6);
    const PointSet2 sparse(few, 4.0 * kPi);
    const SpectralGrid grid(8.5, 4.0 * kPi); // kmax 34 -> 69^2 = 4761 modes
    REQUIRE(grid.size() > 4225);
    const SamplingOperator A = assemble(sparse, IndexRect::product(0.5, 1.0, 0.5, 1.0, 4), grid,
                                        /*column_cap=*/5000);
    const FrameReport fr = frame_bounds(A);
    CHECK(fr.method.rfind("lanczos", 0) == 0);

    Rng rng(10);
    Eigen::VectorXd v(A.cols());
    for (int i = 0; i < v.size(); ++i) v[i] = rng.uniform(-1.0, 1.0);
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < 400; ++it) {
        Eigen::VectorXd w = A.gram_apply_real(v);
        lambda = v.dot(w);
        v = w / w.norm();
    }
    CHECK(fr.D2 == doctest::Approx(lambda).epsilon(1e-4));
    CHECK(fr.D1 >= 0.0);
    CHECK(fr.D1 <= fr.D2);
}

TEST_CASE("frame report JSON shape") {
    const PointSet2 s({{0.0, 0.0}}, 0.5);
    const FrameReport fr =
        frame_bounds(assemble(s, IndexRect::product(0.5, 1.0, 0.5, 1.0, 8), SpectralGrid(1.0, 0.5)));
    const std::string j = frame_report_to_json(fr);
    CHECK(j.find("\"D1\"") != std::string::npos);
    CHECK(j.find("\"method\"") != std::string::npos);
}
