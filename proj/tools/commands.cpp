#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "stsamp/auxfun.hpp"
#include "stsamp/counterexample.hpp"
#include "stsamp/frame.hpp"
#include "stsamp/lattice.hpp"
#include "stsamp/pointset.hpp"
#include "stsamp/rng.hpp"
#include "stsamp/signal.hpp"
#include "stsamp/svg.hpp"

namespace stsamp::cli {

namespace fs = std::filesystem;

namespace {

std::string join_path(const std::string& dir, const std::string& file) {
    fs::create_directories(dir);
    return (fs::path(dir) / file).string();
}

GeneratorConfig config_from(const std::string& kind, double spacing, double arc, double jitter,
                            std::uint64_t seed) {
    GeneratorConfig cfg;
    if (kind == "rect") cfg.kind = GeneratorConfig::Kind::rect_lattice;
    else if (kind == "perturbed") cfg.kind = GeneratorConfig::Kind::perturbed_lattice;
    else if (kind == "circles") cfg.kind = GeneratorConfig::Kind::concentric_circles;
    else if (kind == "jittered") cfg.kind = GeneratorConfig::Kind::jittered_delone;
    else throw std::invalid_argument("unknown generator kind: " + kind);
    cfg.spacing = spacing;
    cfg.arc_spacing = arc;
    cfg.jitter = jitter;
    cfg.seed = seed;
    return cfg;
}

PointSet2 build_set(const std::string& set, const std::string& input, double R, double spacing,
                    double arc, double jitter, std::uint64_t seed) {
    if (set == "file") {
        if (input.empty()) throw std::invalid_argument("--input required for --set file");
        return load_points(input, R);
    }
    if (set == "lattice2pi") return gen(config_from("rect", kTwoPi, arc, 0.0, seed), R);
    return gen(config_from(set, spacing, arc, jitter, seed), R);
}

std::string describe(const GeneratorConfig& cfg) {
    std::ostringstream out;
    switch (cfg.kind) {
        case GeneratorConfig::Kind::rect_lattice:
            out << "kind=rect spacing=" << cfg.spacing;
            break;
        case GeneratorConfig::Kind::perturbed_lattice:
            out << "kind=perturbed (dyadic perturbation of the 2pi lattice)";
            break;
        case GeneratorConfig::Kind::concentric_circles:
            out << "kind=circles arc=" << cfg.arc_spacing << " (radii in 2pi*Z)";
            break;
        case GeneratorConfig::Kind::jittered_delone:
            out << "kind=jittered spacing=" << cfg.spacing << " jitter=" << cfg.jitter
                << " seed=" << cfg.seed;
            break;
        case GeneratorConfig::Kind::from_file:
            out << "kind=file path=" << cfg.path;
            break;
    }
    return out.str();
}

// Default probe schedule: identity plus radial sweeps.  Generator-backed sets
// get genuinely distant probes (windows are regenerated around each center);
// point-list sets fall back to in-window translates.
std::vector<PointSet2> default_probes(const PointSet2& s) {
    std::vector<PointSet2> probes;
    if (s.source() && s.source()->kind != GeneratorConfig::Kind::from_file) {
        std::vector<Vec2> dirs{{0.0, 0.0}};
        for (double mag : {kTwoPi * 100.0, kTwoPi * 1e4}) {
            dirs.push_back({mag, 0.0});
            dirs.push_back({0.0, mag});
            dirs.push_back({mag, mag});
        }
        const double Rp = std::min(s.window_radius(), 8.0 * kPi);
        for (const Vec2& v : dirs) probes.push_back(gen_translated_window(*s.source(), v, Rp));
    } else {
        const double R = s.window_radius();
        std::vector<Vec2> dirs{{0.0, 0.0}, {R / 4.0, 0.0}, {0.0, R / 4.0}, {R / 4.0, R / 4.0}};
        for (const Vec2& v : dirs) {
            auto ps = translate_limit_probe(s, {v}, R - v.norm_inf(), 1e-9);
            probes.push_back(std::move(ps.front()));
        }
    }
    return probes;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << text;
}

} // namespace

std::vector<double> parse_eps_spec(const std::string& spec) {
    std::vector<double> eps;
    const auto dots = spec.find("..");
    if (dots != std::string::npos) {
        const auto parse_dyadic = [](const std::string& s) {
            if (s.rfind("2^", 0) == 0) return std::exp2(std::stod(s.substr(2)));
            return std::stod(s);
        };
        const double lo = parse_dyadic(spec.substr(0, dots));
        const double hi = parse_dyadic(spec.substr(dots + 2));
        double v = lo;
        while (v >= hi * (1.0 - 1e-12)) {
            eps.push_back(v);
            v *= 0.5;
        }
    } else {
        std::istringstream in(spec);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            if (tok.rfind("2^", 0) == 0) eps.push_back(std::exp2(std::stod(tok.substr(2))));
            else eps.push_back(std::stod(tok));
        }
    }
    if (eps.empty()) throw std::invalid_argument("empty eps spec");
    for (std::size_t i = 1; i < eps.size(); ++i)
        if (!(eps[i] < eps[i - 1])) throw std::invalid_argument("eps spec must be strictly decreasing");
    return eps;
}

int cmd_gen(const GenArgs& args) {
    const GeneratorConfig cfg =
        config_from(args.kind, args.spacing, args.arc, args.jitter, args.common.seed);
    const PointSet2 s = gen(cfg, args.R);
    const std::string path = join_path(args.common.out_dir, args.out);
    save_points(s, path, describe(cfg));
    if (!args.svg.empty()) write_svg(join_path(args.common.out_dir, args.svg), s, std::nullopt);
    std::cout << "wrote " << s.size() << " points to " << path << "\n";
    return 0;
}

int cmd_fit(const FitArgs& args) {
    const PointSet2 s = load_points(args.input);
    FitConfig cfg;
    cfg.starts = args.starts;
    cfg.xi_max = args.xi_max;
    cfg.tol = args.tol;
    cfg.seed = args.common.seed;
    const LatticeFit f = fit(s, cfg);
    const std::string path = join_path(args.common.out_dir, args.out);
    write_text(path, lattice_fit_to_json(f) + "\n");
    std::cout << "max_residual " << f.max_residual << " rms " << f.rms_residual << " -> " << path
              << "\n";
    return 0;
}

int cmd_condition_a(const ConditionAArgs& args) {
    const PointSet2 s =
        build_set(args.set, args.input, args.R, args.spacing, args.arc, args.jitter, args.common.seed);
    FitConfig fcfg;
    fcfg.starts = args.starts;
    fcfg.xi_max = args.xi_max;
    fcfg.seed = args.common.seed;

    const std::vector<PointSet2> probes = default_probes(s);
    const double score = condition_a_score(probes, fcfg);

    const IndexRect I = IndexRect::product(args.Ia, args.Ib, args.Ic, args.Id, args.quad);
    const SpectralGrid grid(args.sigma, args.R);
    const FrameReport fr = frame_bounds(assemble(s, I, grid));

    bool bessel_ok = true;
    nlohmann::json jb;
    if (s.source() && s.source()->kind != GeneratorConfig::Kind::from_file && args.bessel_levels >= 2) {
        const PointSet2 base = gen(*s.source(), args.R / 2.0);
        const SpectralGrid bgrid(args.sigma, args.R / 2.0);
        const BesselReport br = bessel_check(base, I, bgrid, args.bessel_levels);
        bessel_ok = br.stable;
        jb["stable"] = br.stable;
        jb["final_rel_increase"] = br.final_rel_increase;
        for (const BesselLevel& lv : br.levels)
            jb["levels"].push_back({{"R", lv.R}, {"n_points", lv.n_points}, {"D2", lv.d2}});
    }

    nlohmann::json j;
    j["set"] = args.set;
    j["n_points"] = s.size();
    j["condition_a_score"] = score;
    j["frame"] = nlohmann::json::parse(frame_report_to_json(fr));
    if (!jb.is_null()) j["bessel"] = jb;
    const std::string path = join_path(args.common.out_dir, args.out);
    write_text(path, j.dump(2) + "\n");

    std::cout << "set=" << args.set << " score=" << score << " D1=" << fr.D1 << " D2=" << fr.D2
              << " D1/D2=" << (fr.D2 > 0 ? fr.D1 / fr.D2 : 0.0) << " bessel_stable=" << bessel_ok
              << "\n";
    return bessel_ok ? 0 : 2;
}

int cmd_frame_bounds(const FrameBoundsArgs& args) {
    const PointSet2 s =
        build_set(args.set, args.input, args.R, args.spacing, args.arc, args.jitter, args.common.seed);
    const IndexRect I = args.radial ? IndexRect::radial_interval(args.Ia, args.Ib, args.quad)
                                    : IndexRect::product(args.Ia, args.Ib, args.Ic, args.Id, args.quad);
    if (!args.sigma_sweep.empty()) {
        std::ostringstream csv;
        csv.precision(12);
        csv << "sigma,D1,D2\n";
        for (double s_v : args.sigma_sweep) {
            const FrameReport fr = frame_bounds(assemble(s, I, SpectralGrid(s_v, args.R)));
            csv << s_v << "," << fr.D1 << "," << fr.D2 << "\n";
        }
        const std::string path = join_path(args.common.out_dir, args.out);
        write_text(path, csv.str());
        std::cout << "sigma sweep -> " << path << "\n";
        return 0;
    }
    const FrameReport fr = frame_bounds(assemble(s, I, SpectralGrid(args.sigma, args.R)));
    const std::string path = join_path(args.common.out_dir, args.out);
    write_text(path, frame_report_to_json(fr) + "\n");
    std::cout << "D1=" << fr.D1 << " D2=" << fr.D2 << " (" << fr.method << ") -> " << path << "\n";
    return 0;
}

int cmd_counterexample(const CounterexampleArgs& args) {
    if (args.lattice.size() != 5)
        throw std::invalid_argument("--lattice needs t1,t2,xi1,xi2,theta");
    const CurvilinearLattice L =
        CurvilinearLattice::from_angle({args.lattice[0], args.lattice[1]},
                                       {args.lattice[2], args.lattice[3]}, args.lattice[4]);
    const PointSet2 s = build_set(args.set, args.input, args.R, kTwoPi, 1.0, args.jitter,
                                  args.common.seed);
    const IndexRect I = IndexRect::product(args.Ia, args.Ib, args.Ic, args.Id, args.quad);

    // Grid whose mode spacing makes xi grid-exact; sigma covers xi plus the
    // widest localization box.
    const SpectralGrid probe(1.0, args.R);
    const double dxi = probe.dxi();
    const double ximax = std::max(std::fabs(args.lattice[2]), std::fabs(args.lattice[3]));
    const int kxi = static_cast<int>(std::lround(ximax / dxi));
    const SpectralGrid grid = SpectralGrid::with_kmax(kxi, args.R);

    std::vector<double> eps;
    for (double e : args.eps_list) eps.push_back(e * dxi);

    const SweepReport rep = run_sweep(L, s, I, grid, eps, {args.v1, args.v2});
    const std::string path = join_path(args.common.out_dir, args.out);
    write_text(path, sweep_to_csv(rep));
    if (!args.svg.empty()) write_svg(join_path(args.common.out_dir, args.svg), s, L);

    std::cout << "ratio";
    for (const SweepRow& r : rep.rows) std::cout << " " << r.ratio;
    std::cout << " decreasing=" << rep.ratio_decreasing << " -> " << path << "\n";
    if (args.check && (!rep.ratio_decreasing || !rep.deficiency_increasing)) return 2;
    return 0;
}

int cmd_auxfun(const AuxfunArgs& args) {
    const std::vector<double> eps = parse_eps_spec(args.eps);
    const ConditionBReport rep = verify_condition_B(eps);
    bool all_pass = rep.phi_l2_increasing && rep.grad_l2_decreasing;

    std::ostringstream csv;
    csv.precision(12);
    csv << "eps,psi_integral,psi_l2,psi_weighted_l2,phi_l2,grad_phi_l2,sinc2d_grad_l2\n";
    for (const ConditionBRow& r : rep.rows) {
        const PsiReport pr = verify_psi(r.eps);
        all_pass = all_pass && pr.pass;
        csv << r.eps << "," << r.psi_integral << "," << r.psi_l2 << "," << r.psi_weighted << ","
            << r.phi_l2 << "," << r.grad_l2 << "," << sinc_family(r.eps, 2).deriv_l2 << "\n";
    }
    const std::string path = join_path(args.common.out_dir, args.out);
    write_text(path, csv.str());
    std::cout << "phi_l2 increasing=" << rep.phi_l2_increasing
              << " grad decreasing=" << rep.grad_l2_decreasing << " slope=" << rep.loglog_slope_phi
              << " -> " << path << "\n";
    return all_pass ? 0 : 2;
}

int cmd_heat_demo(const HeatDemoArgs& args) {
    const PointSet2 s = build_set(args.set, "", args.R, kTwoPi, 1.0, args.jitter, args.common.seed);
    const SpectralGrid grid(args.sigma, args.R);
    const IndexRect I = IndexRect::radial_interval(args.Ia, args.Ib, args.quad);
    const SamplingOperator A = assemble(s, I, grid);

    // Initial field: random conjugate-symmetric coefficients, or the exact
    // kernel direction of the canonical lattice on lattice sets.
    Eigen::VectorXcd c_true = Eigen::VectorXcd::Zero(grid.size());
    bool lattice_mode = args.set == "lattice2pi";
    if (lattice_mode) {
        const CurvilinearLattice L = CurvilinearLattice::from_angle({0, 0}, {1, 1}, kPi / 4.0);
        c_true = build_g(L, grid).coeffs();
        c_true /= c_true.norm();
    } else {
        Rng rng(args.common.seed + 17);
        for (int idx = 0; idx < grid.size(); ++idx) {
            auto [k1, k2] = grid.mode(idx);
            if (k1 > 0 || (k1 == 0 && k2 >= 0)) {
                const std::complex<double> val{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
                c_true[idx] += 0.5 * val;
                c_true[grid.index(-k1, -k2)] += 0.5 * std::conj(val);
            }
        }
        c_true /= c_true.norm();
    }
    const BandlimitedField f(grid, c_true, true);

    // Heat states at the quadrature nodes: Gaussian width a corresponds to
    // diffusion time alpha = 1/(4 a sigma_diff); the sample row is
    // sqrt(w) / (2R) * (pi / a) * u(p, alpha).
    Eigen::VectorXcd y(static_cast<int>(A.rows()));
    const auto& nodes = A.alpha_nodes();
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const double a = nodes[j].a1;
        const double tau = 1.0 / (4.0 * a * args.sigma_diff);
        const BandlimitedField u = heat_state(f, tau, args.sigma_diff);
        const double scale = std::sqrt(nodes[j].weight) / (2.0 * grid.half_period()) * kPi / a;
        for (std::size_t i = 0; i < s.size(); ++i)
            y[static_cast<int>(i * nodes.size() + j)] = scale * u.eval(s.points()[i]);
    }

    const ReconstructionResult rec = reconstruct(y, A, args.ridge);
    const double rel_err = (rec.field.coeffs() - c_true).norm() / c_true.norm();
    const double kernel_dir_err =
        lattice_mode ? std::abs((rec.field.coeffs() - c_true).dot(c_true)) : 0.0;

    nlohmann::json j;
    j["set"] = args.set;
    j["sigma"] = args.sigma;
    j["R"] = args.R;
    j["n_points"] = s.size();
    j["n_modes"] = grid.size();
    j["rel_coeff_error"] = rel_err;
    j["rel_residual"] = rec.relative_residual;
    j["d1"] = rec.d1;
    j["d2"] = rec.d2;
    j["rank_deficient"] = rec.rank_deficient;
    if (lattice_mode) j["kernel_direction_error"] = kernel_dir_err;
    const std::string path = join_path(args.common.out_dir, args.out);
    write_text(path, j.dump(2) + "\n");
    std::cout << "rel_coeff_error=" << rel_err << " rank_deficient=" << rec.rank_deficient;
    if (lattice_mode) std::cout << " kernel_direction_error=" << kernel_dir_err;
    std::cout << " -> " << path << "\n";
    return 0;
}

} // namespace stsamp::cli
