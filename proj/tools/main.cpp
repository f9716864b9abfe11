//
// stsamp command line: generation and analysis of planar sampling sets for
// reconstruction from Gaussian space-time samples.
//
// Exit codes: 0 success, 1 usage or runtime error, 2 assertion-style check
// failure inside a command.
//

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace stsamp;

    CLI::App app{"planar space-time sampling toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    cli::CommonArgs common;
    app.add_option("--out-dir", common.out_dir, "output directory");
    app.add_option("--format", common.format, "json|csv");
    app.add_option("--seed", common.seed, "global seed");

    cli::GenArgs gen_args;
    auto* c_gen = app.add_subcommand("gen", "generate a point set");
    c_gen->add_option("--kind", gen_args.kind, "rect|perturbed|circles|jittered");
    c_gen->add_option("--R", gen_args.R, "window radius");
    c_gen->add_option("--spacing", gen_args.spacing, "lattice spacing");
    c_gen->add_option("--arc", gen_args.arc, "arc spacing for circles");
    c_gen->add_option("--jitter", gen_args.jitter, "jitter amplitude");
    c_gen->add_option("--out", gen_args.out, "output file");
    c_gen->add_option("--svg", gen_args.svg, "optional scatter SVG");

    cli::FitArgs fit_args;
    auto* c_fit = app.add_subcommand("fit-lattice", "fit a curvilinear lattice to a point file");
    c_fit->add_option("--input", fit_args.input, "point file")->required();
    c_fit->add_option("--starts", fit_args.starts, "multistart count");
    c_fit->add_option("--xi-max", fit_args.xi_max, "frequency search box");
    c_fit->add_option("--tol", fit_args.tol, "tie-break tolerance");
    c_fit->add_option("--out", fit_args.out, "output JSON");

    cli::ConditionAArgs ca_args;
    auto* c_ca = app.add_subcommand("condition-a", "combined analysis: score, frame bounds, Bessel stability");
    c_ca->add_option("--set", ca_args.set, "rect|perturbed|circles|jittered|lattice2pi|file");
    c_ca->add_option("--input", ca_args.input, "point file for --set file");
    c_ca->add_option("--R", ca_args.R, "window radius");
    c_ca->add_option("--spacing", ca_args.spacing, "lattice spacing");
    c_ca->add_option("--arc", ca_args.arc, "arc spacing");
    c_ca->add_option("--jitter", ca_args.jitter, "jitter amplitude");
    c_ca->add_option("--sigma", ca_args.sigma, "bandwidth");
    c_ca->add_option("--I", [&ca_args](const std::vector<std::string>& vals) {
        return CLI::detail::lexical_cast(vals[0], ca_args.Ia) &&
               CLI::detail::lexical_cast(vals[1], ca_args.Ib) &&
               CLI::detail::lexical_cast(vals[2], ca_args.Ic) &&
               CLI::detail::lexical_cast(vals[3], ca_args.Id);
    }, "index rectangle a b c d")->expected(4);
    c_ca->add_option("--quad", ca_args.quad, "quadrature order per axis");
    c_ca->add_option("--starts", ca_args.starts, "multistart count");
    c_ca->add_option("--xi-max", ca_args.xi_max, "frequency search box");
    c_ca->add_option("--bessel-levels", ca_args.bessel_levels, "window doublings (0 disables)");
    c_ca->add_option("--out", ca_args.out, "output JSON");

    cli::FrameBoundsArgs fb_args;
    auto* c_fb = app.add_subcommand("frame-bounds", "frame bounds of the sampling operator");
    c_fb->add_option("--set", fb_args.set, "generator kind or file");
    c_fb->add_option("--input", fb_args.input, "point file");
    c_fb->add_option("--R", fb_args.R, "window radius");
    c_fb->add_option("--spacing", fb_args.spacing, "lattice spacing");
    c_fb->add_option("--arc", fb_args.arc, "arc spacing");
    c_fb->add_option("--jitter", fb_args.jitter, "jitter amplitude");
    c_fb->add_option("--sigma", fb_args.sigma, "bandwidth");
    c_fb->add_option("--I", [&fb_args](const std::vector<std::string>& vals) {
        bool ok = CLI::detail::lexical_cast(vals[0], fb_args.Ia) &&
                  CLI::detail::lexical_cast(vals[1], fb_args.Ib);
        if (vals.size() == 4) {
            ok = ok && CLI::detail::lexical_cast(vals[2], fb_args.Ic) &&
                 CLI::detail::lexical_cast(vals[3], fb_args.Id);
        } else {
            fb_args.radial = true;
        }
        return ok;
    }, "index rectangle a b c d, or a b for the radial kernel")->expected(2, 4);
    c_fb->add_option("--quad", fb_args.quad, "quadrature order per axis");
    c_fb->add_option("--sigma-sweep", fb_args.sigma_sweep, "CSV sweep over sigma");
    c_fb->add_option("--out", fb_args.out, "output file");

    cli::CounterexampleArgs ce_args;
    auto* c_ce = app.add_subcommand("counterexample", "localization sweep on a lattice-resident set");
    c_ce->add_option("--lattice", ce_args.lattice, "t1 t2 xi1 xi2 theta")->expected(5);
    c_ce->add_option("--set", ce_args.set, "lattice2pi|jittered|file");
    c_ce->add_option("--input", ce_args.input, "point file");
    c_ce->add_option("--R", ce_args.R, "window radius");
    c_ce->add_option("--jitter", ce_args.jitter, "jitter for the control set");
    c_ce->add_option("--eps-list", ce_args.eps_list, "localization widths in mode-spacing units");
    c_ce->add_option("--I", [&ce_args](const std::vector<std::string>& vals) {
        return CLI::detail::lexical_cast(vals[0], ce_args.Ia) &&
               CLI::detail::lexical_cast(vals[1], ce_args.Ib) &&
               CLI::detail::lexical_cast(vals[2], ce_args.Ic) &&
               CLI::detail::lexical_cast(vals[3], ce_args.Id);
    }, "index rectangle a b c d")->expected(4);
    c_ce->add_option("--quad", ce_args.quad, "quadrature order per axis");
    c_ce->add_option("--v", [&ce_args](const std::vector<std::string>& vals) {
        return CLI::detail::lexical_cast(vals[0], ce_args.v1) &&
               CLI::detail::lexical_cast(vals[1], ce_args.v2);
    }, "localization center")->expected(2);
    c_ce->add_option("--out", ce_args.out, "output CSV");
    c_ce->add_option("--svg", ce_args.svg, "overlay SVG");
    c_ce->add_flag("!--no-check", ce_args.check, "do not fail on missing decay");

    cli::AuxfunArgs af_args;
    auto* c_af = app.add_subcommand("auxfun", "auxiliary function family report");
    c_af->add_option("--eps", af_args.eps, "eps spec, e.g. 2^-4..2^-12");
    c_af->add_option("--out", af_args.out, "output CSV");

    cli::HeatDemoArgs hd_args;
    auto* c_hd = app.add_subcommand("heat-demo", "initial-value recovery from heat states");
    c_hd->add_option("--set", hd_args.set, "jittered|lattice2pi");
    c_hd->add_option("--R", hd_args.R, "window radius");
    c_hd->add_option("--jitter", hd_args.jitter, "jitter amplitude");
    c_hd->add_option("--sigma", hd_args.sigma, "bandwidth");
    c_hd->add_option("--I", [&hd_args](const std::vector<std::string>& vals) {
        return CLI::detail::lexical_cast(vals[0], hd_args.Ia) &&
               CLI::detail::lexical_cast(vals[1], hd_args.Ib);
    }, "radial index interval a b")->expected(2);
    c_hd->add_option("--quad", hd_args.quad, "quadrature order");
    c_hd->add_option("--sigma-diff", hd_args.sigma_diff, "diffusion coefficient");
    c_hd->add_option("--ridge", hd_args.ridge, "ridge parameter");
    c_hd->add_option("--out", hd_args.out, "output JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        gen_args.common = common;
        fit_args.common = common;
        ca_args.common = common;
        fb_args.common = common;
        ce_args.common = common;
        af_args.common = common;
        hd_args.common = common;
        if (c_gen->parsed()) return cli::cmd_gen(gen_args);
        if (c_fit->parsed()) return cli::cmd_fit(fit_args);
        if (c_ca->parsed()) return cli::cmd_condition_a(ca_args);
        if (c_fb->parsed()) return cli::cmd_frame_bounds(fb_args);
        if (c_ce->parsed()) return cli::cmd_counterexample(ce_args);
        if (c_af->parsed()) return cli::cmd_auxfun(af_args);
        if (c_hd->parsed()) return cli::cmd_heat_demo(hd_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
