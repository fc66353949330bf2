// qfp: experiment driver. One subcommand per experiment; every option may
// also come from a TOML/INI file given with --config.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "qfp/harness.hpp"

namespace {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadratic field prime experiments"};
    app.set_config("--config", "", "read options from a TOML/INI file");
    app.require_subcommand(1);

    qfp::ExperimentConfig cfg;
    std::string csv_path, json_path;
    double omega = 0;

    app.add_option("--d", cfg.d, "squarefree d of Q(sqrt d)");
    app.add_option("--ds", cfg.ds, "list of d (field-info, fundamental-unit, class-number)")->delimiter(',');
    app.add_option("--form", cfg.form, "form coefficients a,b,c")->delimiter(',');
    app.add_option("--x", cfg.x, "region size x");
    app.add_option("--xs", cfg.xs, "list of x for sweeps")->delimiter(',');
    app.add_option("--y", cfg.y, "norm window width (default x^theta1)");
    app.add_option("--theta1", cfg.theta1);
    app.add_option("--theta2", cfg.theta2);
    app.add_option("--phi", cfg.phi, "angle window width (default x^-theta2)");
    auto* o_phi0 = app.add_option("--phi0", cfg.phi0, "angle window start");
    auto* o_omega = app.add_option("--omega", omega, "F window start");
    app.add_option("--y1", cfg.y1, "comparison window width (default x/2)");
    app.add_option("--eta", cfg.eta);
    app.add_option("--delta", cfg.delta, "minimum angle to the asymptotes");
    app.add_option("--trials", cfg.trials);
    app.add_option("--seed", cfg.seed);
    app.add_option("--m", cfg.m, "character exponent");
    app.add_option("--target", cfg.target, "target point s,t")->delimiter(',')->expected(2);
    app.add_option("--rmin", cfg.rmin);
    app.add_option("--rmax", cfg.rmax);
    app.add_option("--M", cfg.M, "Fourier truncation (default from x, eta)");
    app.add_option("--T1", cfg.T1, "line integral height (default from x, eta)");
    app.add_option("--model", cfg.model, "coefficients: zero, one, prime, tau, bilinear");
    app.add_option("--limit", cfg.limit, "norm limit for char-eval");
    app.add_option("--cap", cfg.cap, "sieve capacity");
    app.add_option("--max-dev", cfg.max_dev, "ratio-check deviation bound");
    app.add_flag("--assert-truncation", cfg.assert_truncation, "make the Fourier truncation bound an assertion");
    app.add_option("--csv", csv_path, "CSV output (default stdout)");
    app.add_option("--json", json_path, "JSON summary output");

    std::string command;
    for (const auto& name : qfp::command_names()) {
        auto* sub = app.add_subcommand(name);
        sub->fallthrough();
        sub->callback([&command, name] { command = name; });
    }

    CLI11_PARSE(app, argc, argv);
    if (o_omega->count()) cfg.phi0 = omega;
    cfg.phi0_set = o_phi0->count() > 0 || o_omega->count() > 0;

    try {
        const qfp::ExperimentReport r = qfp::run_command(command, cfg);
        if (csv_path.empty()) {
            std::cout << r.csv();
        } else {
            write_file(csv_path, r.csv());
        }
        if (!json_path.empty()) write_file(json_path, r.json() + "\n");
        for (const auto& f : r.failures) std::cerr << "assertion failed: " << f << "\n";
        return r.passed() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
