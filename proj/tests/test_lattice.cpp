#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stsamp/counterexample.hpp"
#include "stsamp/lattice.hpp"
#include "stsamp/pointset.hpp"
#include "stsamp/rng.hpp"

using namespace stsamp;

namespace {

CurvilinearLattice canonical() { return CurvilinearLattice::from_angle({0, 0}, {1, 1}, kPi / 4.0); }

CurvilinearLattice figure1() {
    return CurvilinearLattice::from_angle({0, 0}, {1, 1}, std::atan2(3.0, 1.0));
}

PointSet2 lattice2pi(double R) {
    GeneratorConfig cfg;
    cfg.kind = GeneratorConfig::Kind::rect_lattice;
    cfg.spacing = kTwoPi;
    return gen(cfg, R);
}

} // namespace

TEST_CASE("residual closed-form values") {
    const CurvilinearLattice equal = canonical();
    CHECK(residual(equal, {0.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-15));

    const CurvilinearLattice f1 = figure1();
    CHECK(std::fabs(residual(f1, {0.0, kPi / 2.0})) < 1e-15);

    for (int m = -3; m <= 3; ++m)
        for (int n = -3; n <= 3; ++n)
            CHECK(std::fabs(residual(equal, {kTwoPi * m, kTwoPi * n})) < 1e-12);
}

TEST_CASE("contains uses the tolerance") {
    const CurvilinearLattice f1 = figure1();
    CHECK(contains(f1, {0.0, kPi / 2.0}, 1e-9));
    // residual at the origin is (1 - 3)/sqrt(10)
    CHECK(residual(f1, {0.0, 0.0}) == doctest::Approx(-2.0 / std::sqrt(10.0)).epsilon(1e-14));
    CHECK_FALSE(contains(f1, {0.0, 0.0}, 1e-3));

    Rng rng(3);
    for (int i = 0; i < 50; ++i)
        CHECK(contains(f1, {rng.uniform(-30.0, 30.0), rng.uniform(-30.0, 30.0)}, 10.0));
}

TEST_CASE("constructor invariants") {
    CHECK_THROWS_AS(CurvilinearLattice({0, 0}, {1, 1}, {0.8, 0.7}), std::invalid_argument);
    // xi1 = 0 with equal weights and phases: residual is identically zero
    CHECK_THROWS_AS(CurvilinearLattice({0.3, 0.3}, {0.0, 1.0},
                                       {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}),
                    std::invalid_argument);
}

TEST_CASE("fit recovers the figure lattice from curve samples") {
    const CurvilinearLattice f1 = figure1();
    const auto pts = lattice_points_by_bisection(f1, 40, -6.0, 6.0);
    REQUIRE(pts.size() == 40);
    for (const Vec2& p : pts) CHECK(std::fabs(residual(f1, p)) < 1e-12);

    FitConfig cfg;
    cfg.seed = 7;
    const LatticeFit fit_res = fit(PointSet2(pts, 10.0), cfg);
    CHECK(fit_res.max_residual <= 1e-6);
    const double ratio = std::max(std::fabs(fit_res.lattice.r().y / fit_res.lattice.r().x),
                                  std::fabs(fit_res.lattice.r().x / fit_res.lattice.r().y));
    CHECK(ratio == doctest::Approx(3.0).epsilon(1e-3 / 3.0));
}

TEST_CASE("fit finds an exact lattice for the 2pi lattice window") {
    FitConfig cfg;
    cfg.seed = 7;
    const LatticeFit f = fit(lattice2pi(20.0), cfg);
    CHECK(f.max_residual <= 1e-9);
    CHECK(f.rms_residual <= f.max_residual + 1e-18);
}

TEST_CASE("fit floor on seeded random points") {
    Rng rng(42);
    std::vector<Vec2> pts;
    while (pts.size() < 200) {
        const Vec2 p{rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)};
        bool ok = true;
        for (const Vec2& q : pts)
            if (dist(p, q) < 0.5) {
                ok = false;
                break;
            }
        if (ok) pts.push_back(p);
    }
    FitConfig cfg;
    cfg.seed = 7;
    const LatticeFit f = fit(PointSet2(pts, 20.0), cfg);
    CHECK(f.max_residual >= 0.05);
}

TEST_CASE("fit rejects empty input") {
    FitConfig cfg;
    CHECK_THROWS_AS(fit(PointSet2(std::vector<Vec2>{}, 1.0), cfg), std::invalid_argument);
}

TEST_CASE("condition-a score separates structured from jittered sets") {
    FitConfig cfg;
    cfg.seed = 7;

    CHECK(condition_a_score(lattice2pi(20.0), {}, cfg) <= 1e-9);

    GeneratorConfig jit;
    jit.kind = GeneratorConfig::Kind::jittered_delone;
    jit.spacing = kTwoPi;
    jit.jitter = 0.3;
    jit.seed = 7;
    const PointSet2 js = gen(jit, 16.0 * kPi);
    CHECK(condition_a_score(js, {{kTwoPi, 0.0}, {0.0, kTwoPi}}, cfg) >= 0.02);

    // circles: distant radial probes approach parallel lines
    GeneratorConfig circ;
    circ.kind = GeneratorConfig::Kind::concentric_circles;
    circ.arc_spacing = 1.0;
    std::vector<PointSet2> probes;
    probes.push_back(gen_translated_window(circ, {0.0, kTwoPi * 1e4}, 8.0));
    CHECK(condition_a_score(probes, cfg) <= 1e-3);
}

TEST_CASE("empty probe window forces score zero") {
    FitConfig cfg;
    std::vector<PointSet2> probes;
    probes.push_back(PointSet2(std::vector<Vec2>{}, 1.0));
    CHECK(condition_a_score(probes, cfg) == 0.0);
}

TEST_CASE("invariant: residual parameter symmetries") {
    Rng rng(11);
    const Vec2 t{0.7, 2.1}, xi{1.3, -0.8};
    const double th = 0.9;
    const auto base = CurvilinearLattice::from_angle(t, xi, th);
    const auto shifted = CurvilinearLattice::from_angle({t.x + kTwoPi, t.y - 2.0 * kTwoPi}, xi, th);
    const auto negated = CurvilinearLattice::from_angle({-t.x, -t.y}, {-xi.x, -xi.y}, th);
    const auto flipped = CurvilinearLattice::from_angle({t.x + kPi, t.y + kPi}, xi, th + kPi);
    for (int i = 0; i < 100; ++i) {
        const Vec2 p{rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)};
        const double r0 = residual(base, p);
        CHECK(std::fabs(residual(shifted, p) - r0) < 1e-12);
        CHECK(std::fabs(residual(negated, p) - r0) < 1e-12);
        CHECK(std::fabs(residual(flipped, p) - r0) < 1e-12);
    }
}

TEST_CASE("invariant: reflection swaps the two cosines up to sign") {
    Rng rng(12);
    const auto L = CurvilinearLattice::from_angle({0.4, 1.9}, {1.2, 0.7}, 1.1);
    const auto swapped = CurvilinearLattice({1.9, 0.4}, {1.2, 0.7},
                                            {L.r().y, L.r().x});
    for (int i = 0; i < 100; ++i) {
        const Vec2 p{rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)};
        CHECK(std::fabs(residual(L, tilde(p)) + residual(swapped, p)) < 1e-12);
    }
}

TEST_CASE("invariant: residual bounded by sqrt(2)") {
    Rng rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        const auto L = CurvilinearLattice::from_angle(
            {rng.uniform(0.0, kTwoPi), rng.uniform(0.0, kTwoPi)},
            {rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0)}, rng.uniform(0.0, kTwoPi));
        double sup = 0.0;
        for (int i = 0; i < 10000; ++i)
            sup = std::max(sup, std::fabs(residual(L, {rng.uniform(-50.0, 50.0),
                                                       rng.uniform(-50.0, 50.0)})));
        CHECK(sup <= std::sqrt(2.0) + 1e-15);
    }
}

TEST_CASE("invariant: fit is monotone under adding points") {
    FitConfig cfg;
    cfg.seed = 7;

    // lattice-resident base plus off-lattice extensions
    const PointSet2 base = lattice2pi(15.0);
    std::vector<Vec2> extended = base.points();
    extended.push_back({1.0, 2.0});
    extended.push_back({-3.0, 0.7});
    const double small = fit(base, cfg).max_residual;
    const double big = fit(PointSet2(extended, 15.0), cfg).max_residual;
    CHECK(big >= small - 1e-9);

    // random nested pair with the same multistart schedule
    Rng rng(5);
    std::vector<Vec2> forty;
    while (forty.size() < 40) {
        const Vec2 p{rng.uniform(-15.0, 15.0), rng.uniform(-15.0, 15.0)};
        bool ok = true;
        for (const Vec2& q : forty)
            if (dist(p, q) < 1.0) {
                ok = false;
                break;
            }
        if (ok) forty.push_back(p);
    }
    std::vector<Vec2> sixty = forty;
    while (sixty.size() < 60) {
        const Vec2 p{rng.uniform(-15.0, 15.0), rng.uniform(-15.0, 15.0)};
        bool ok = true;
        for (const Vec2& q : sixty)
            if (dist(p, q) < 1.0) {
                ok = false;
                break;
            }
        if (ok) sixty.push_back(p);
    }
    const double f40 = fit(PointSet2(forty, 15.0), cfg).max_residual;
    const double f60 = fit(PointSet2(sixty, 15.0), cfg).max_residual;
    CHECK(f60 >= f40 - 1e-9);
}

TEST_CASE("lattice fit JSON shape") {
    FitConfig cfg;
    cfg.seed = 1;
    cfg.starts = 32;
    const LatticeFit f = fit(lattice2pi(15.0), cfg);
    const std::string j = lattice_fit_to_json(f);
    CHECK(j.find("max_residual") != std::string::npos);
    CHECK(j.find("starts_used") != std::string::npos);
}
