#include <CLI11.hpp>

#include <iostream>

#include "csh/cli.hpp"

using namespace csh::cli;

namespace {

void add_schedule(CLI::App* app, RunRequest& r) {
    app->add_option("--n", r.n, "truncation level N (default from the action profile)");
    app->add_option("--b-max", r.b_max, "largest window end, exact fraction")->capture_default_str();
    app->add_option("--a0", r.a0, "first window start (default -b0)");
    app->add_option("--b0", r.b0, "first window end")->capture_default_str();
    app->add_option("--step", r.step, "widening per window")->capture_default_str();
    app->add_option("--count", r.count, "number of windows (default from --b-max)");
    app->add_option("--depth", r.depth, "stabilization depth")->capture_default_str();
    app->add_option("--backend", r.backend, "rank backend")
        ->transform(CLI::CheckedTransformer(std::map<std::string, csh::Backend>{{"reference", csh::Backend::Reference},
                                                                                  {"serial", csh::Backend::Serial},
                                                                                  {"parallel", csh::Backend::Parallel}}));
}

void reject_radius(CLI::App* app) {
    app->add_option_function<std::string>(
           "--radius",
           [](const std::string&) {
               throw CLI::ValidationError("--radius",
                                          "radii are not accepted; pass rho = pi R^2 as an exact fraction");
           },
           "rejected")
        ->group("");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Floer and mirror invariants of disc bundles and annuli"};
    app.require_subcommand(1);
    RunRequest r;
    app.add_option("--output", r.output, "table or json")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Output>{{"table", Output::Table}, {"json", Output::Json}}));

    auto* disc = app.add_subcommand("disc", "symplectic (co)homology of the disc bundle of parameter rho");
    disc->add_option("--rho", r.rho, "rho = pi R^2, exact fraction")->required();
    disc->add_option("--side", r.side, "cohomology or homology")
        ->transform(CLI::CheckedTransformer(std::map<std::string, DiscSide>{{"cohomology", DiscSide::Cohomology},
                                                                             {"homology", DiscSide::Homology}}));
    add_schedule(disc, r);

    auto* annulus = app.add_subcommand("annulus", "cobordism invariant of the annulus between rho1 and rho2");
    annulus->add_option("--rho1", r.rho1, "inner rho, exact fraction")->required();
    annulus->add_option("--rho2", r.rho2, "outer rho, exact fraction")->required();
    add_schedule(annulus, r);

    auto* rab = app.add_subcommand("rabinowitz", "Rabinowitz invariant of the circle bundle at rho");
    rab->add_option("--rho", r.rho, "rho = pi R^2, exact fraction")->required();
    add_schedule(rab, r);

    auto* mirror = app.add_subcommand("mirror", "Jacobian ring of the restricted superpotential");
    mirror->add_option("--m", r.m, "number of line bundle factors")->capture_default_str();
    mirror->add_option("--k", r.k, "degree")->capture_default_str();
    mirror->add_option("--interval", r.interval, "valuation interval a:b");
    mirror->add_option("--rho1", r.rho1, "interval start");
    mirror->add_option("--rho2", r.rho2, "interval end");

    auto* cross = app.add_subcommand("crosscheck", "compare Floer ranks with mirror predictions at m = k = 1");
    std::string grid;
    cross->add_option("--grid", grid, "comma-separated rho1:rho2 pairs, or none (default: all pairs of 1/4,1/2,1,3/2,2)");
    add_schedule(cross, r);

    auto* self = app.add_subcommand("selftest", "quick internal consistency checks");
    add_schedule(self, r);

    for (auto* s : {disc, annulus, rab, mirror, cross, self}) reject_radius(s);
    reject_radius(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (*disc) r.command = Command::Disc;
    else if (*annulus) r.command = Command::Annulus;
    else if (*rab) r.command = Command::Rabinowitz;
    else if (*mirror) r.command = Command::Mirror;
    else if (*cross) r.command = Command::Crosscheck;
    else r.command = Command::Selftest;

    try {
        if (cross->count("--grid")) r.grid = parse_grid(grid);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    RunResult res = run(r);
    if (res.exit_code != 0) {
        std::cerr << "error: " << res.error << '\n';
        if (r.output == Output::Json && !res.document.is_null()) std::cerr << render_json(res);
        return res.exit_code;
    }
    std::cout << (r.output == Output::Json ? render_json(res) : render_table(res));
    return 0;
}
