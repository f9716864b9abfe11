#pragma once
//
// CLI subcommand implementations, kept separate from main() so the test
// suite can invoke them in-process.  Every command is deterministic given
// its argument record; outputs are plain files under out_dir.
//

#include <optional>
#include <string>
#include <vector>

#include "stsamp/geometry.hpp"

namespace stsamp::cli {

struct CommonArgs {
    std::string out_dir = ".";
    std::string format = "json"; // json | csv where applicable
    std::uint64_t seed = 0;
};

struct GenArgs {
    CommonArgs common;
    std::string kind = "rect";   // rect | perturbed | circles | jittered
    double R = 40.0;
    double spacing = kTwoPi;
    double arc = 1.0;
    double jitter = 0.0;
    std::string out = "points.txt";
    std::string svg; // optional scatter plot
};

struct FitArgs {
    CommonArgs common;
    std::string input;
    int starts = 256;
    double xi_max = 8.0;
    double tol = 1e-9;
    std::string out = "fit.json";
};

struct ConditionAArgs {
    CommonArgs common;
    std::string set = "jittered"; // rect | perturbed | circles | jittered | file
    std::string input;            // when set == file
    double R = 16.0 * kPi;
    double spacing = kTwoPi;
    double arc = 1.0;
    double jitter = 0.3;
    double sigma = 1.0;
    double Ia = 0.5, Ib = 1.0, Ic = 0.5, Id = 1.0;
    int quad = 16;
    int starts = 256;
    double xi_max = 8.0;
    int bessel_levels = 3;
    std::string out = "analysis.json";
};

struct FrameBoundsArgs {
    CommonArgs common;
    std::string set = "jittered";
    std::string input;
    double R = 16.0 * kPi;
    double spacing = kTwoPi;
    double arc = 1.0;
    double jitter = 0.3;
    double sigma = 1.0;
    double Ia = 0.5, Ib = 1.0, Ic = 0.5, Id = 1.0;
    bool radial = false;
    int quad = 16;
    std::vector<double> sigma_sweep; // optional: CSV of sigma vs D1, D2
    std::string out = "frame.json";
};

struct CounterexampleArgs {
    CommonArgs common;
    std::vector<double> lattice = {0.0, 0.0, 1.0, 1.0, kPi / 4.0}; // t1,t2,xi1,xi2,theta
    std::string set = "lattice2pi"; // lattice2pi | jittered | file
    std::string input;
    double R = 16.0 * kPi;
    double jitter = 0.3;
    std::vector<double> eps_list = {4.0, 2.0, 1.0}; // units of the mode spacing
    double Ia = 0.5, Ib = 1.0, Ic = 0.5, Id = 1.0;
    int quad = 8;
    double v1 = 0.0, v2 = 0.0;
    std::string out = "sweep.csv";
    std::string svg;
    bool check = true; // exit 2 unless ratio decays and deficiency grows
};

struct AuxfunArgs {
    CommonArgs common;
    std::string eps = "2^-4..2^-12"; // dyadic range or comma list
    std::string out = "auxfun.csv";
};

struct HeatDemoArgs {
    CommonArgs common;
    std::string set = "jittered"; // jittered | lattice2pi
    double R = 16.0 * kPi;
    double jitter = 0.3;
    double sigma = 0.5; // lattice runs need sigma >= 1 so the witness modes exist
    double Ia = 0.5, Ib = 1.0;
    int quad = 12;
    double sigma_diff = 1.0;
    double ridge = 0.0;
    std::string out = "heat.json";
};

int cmd_gen(const GenArgs& args);
int cmd_fit(const FitArgs& args);
int cmd_condition_a(const ConditionAArgs& args);
int cmd_frame_bounds(const FrameBoundsArgs& args);
int cmd_counterexample(const CounterexampleArgs& args);
int cmd_auxfun(const AuxfunArgs& args);
int cmd_heat_demo(const HeatDemoArgs& args);

/// "2^-4..2^-12" or "0.1,0.01,..." -> strictly decreasing list.
std::vector<double> parse_eps_spec(const std::string& spec);

} // namespace stsamp::cli
