#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "carpetlab/harnack.hpp"
#include "carpetlab/heatkernel.hpp"
#include "carpetlab/io.hpp"
#include "carpetlab/resistance.hpp"
#include "carpetlab/scaling.hpp"
#include "carpetlab/walk.hpp"

namespace {

using carpetlab::WeightConfig;
using nlohmann::json;

constexpr const char* kVersion = "carpetlab 0.1.0";

struct RunConfig {
    std::string rho = "1";
    char pattern = 'g';
    int grid_k = 9;
    long samples = 0;
    std::uint64_t seed = 1;
    std::string mode = "exact";
    int nmax = 3;
    int threads = 1;
    double tol = 1e-10;
    std::string out;

    WeightConfig weights() const { return WeightConfig(carpetlab::parse_rho(rho)); }

    json resolved(const std::string& subcommand) const {
        return json{{"version", kVersion}, {"subcommand", subcommand},
                    {"rho", rho},           {"pattern", std::string(1, pattern)},
                    {"grid_k", grid_k},     {"samples", samples},
                    {"seed", seed},         {"mode", mode},
                    {"nmax", nmax},         {"threads", threads},
                    {"tol", tol},           {"out", out}};
    }
};

void emit(const RunConfig& rc, const std::string& name, const json& report,
          const std::string& csv = "") {
    json doc{{"config", rc.resolved(name)}, {"report", report}};
    carpetlab::write_json_atomic(rc.out + "/" + name + ".json", doc);
    if (!csv.empty()) carpetlab::write_text_atomic(rc.out + "/" + name + ".csv", csv);
    std::cout << name << ": wrote " << rc.out << "/" << name << ".json\n";
}

int run_resistance(const RunConfig& rc) {
    auto cfg = rc.weights();
    json table = json::array();
    std::string csv = "n,method,R\n";
    int violations = 0;
    for (int n = 1; n <= rc.nmax; ++n) {
        auto grid = carpetlab::grid_resistance(n, cfg, rc.grid_k, rc.tol);
        auto g = carpetlab::cross_graph_resistance(n, cfg, rc.tol);
        auto d = carpetlab::diag_graph_resistance(n, cfg, rc.tol);
        table.push_back(json{{"n", n},
                             {"grid", grid.resistance},
                             {"G", g.resistance},
                             {"D", d.resistance},
                             {"residual", std::max({grid.residual, g.residual, d.residual})}});
        csv += std::to_string(n) + ",grid," + std::to_string(grid.resistance) + "\n";
        csv += std::to_string(n) + ",G," + std::to_string(g.resistance) + "\n";
        csv += std::to_string(n) + ",D," + std::to_string(d.resistance) + "\n";
        if (d.resistance > g.resistance * (1.0 + 1e-6)) ++violations;
    }
    emit(rc, "resistance", json{{"table", table}, {"violations", violations}}, csv);
    return violations == 0 ? 0 : 1;
}

int run_scaling(const RunConfig& rc) {
    auto cfg = rc.weights();
    auto rep = carpetlab::scaling_report(cfg, rc.nmax, 9, 27, rc.tol);
    int violations = 0;
    for (const auto& e : rep.ledger)
        if (!e.holds) ++violations;
    emit(rc, "scaling", carpetlab::to_json(rep), carpetlab::scaling_csv(rep));
    return violations == 0 ? 0 : 1;
}

int run_walk(const RunConfig& rc) {
    auto cfg = rc.weights();
    auto sq = carpetlab::make_square_config(rc.pattern, 1, cfg);
    const double h = 3.0;
    std::vector<double> xs = {0.05 * h, 0.15 * h, 0.25 * h, 0.35 * h, 0.45 * h};
    int violations = 0;

    auto corner = carpetlab::corner_move_check(sq, xs, rc.grid_k, rc.tol);
    for (const auto& s : corner.samples)
        if (s.p6 < corner.bound - 0.02) ++violations;

    auto knight = carpetlab::knight_move_check(sq, xs, rc.grid_k, rc.tol);
    if (knight.min_p1 <= 0.0) ++violations;

    long transitions = rc.samples > 0 ? rc.samples : 10'000;
    auto ychain = carpetlab::y_chain_simulate(sq, transitions, rc.seed, rc.grid_k);

    json folding = json::array();
    if (!carpetlab::square_filled(sq, 4)) {
        for (int label : {1, 2, 3}) {
            auto f = carpetlab::folding_check(sq, 0.5 * h, label, rc.grid_k, rc.tol);
            folding.push_back(carpetlab::to_json(f));
            if (std::abs(f.lhs - f.rhs) > 0.02) ++violations;
        }
    }

    long mc = rc.mode == "mc" ? (rc.samples > 0 ? rc.samples : 10'000) : 0;
    auto exit = carpetlab::mean_exit_time(carpetlab::Point{26.5, 26.5}, {3.0, 9.0, 27.0}, cfg,
                                          3, mc, rc.seed, rc.tol);

    emit(rc, "walk",
         json{{"corner", carpetlab::to_json(corner)},
              {"knight", carpetlab::to_json(knight)},
              {"ychain", carpetlab::to_json(ychain)},
              {"folding", folding},
              {"exit_time", carpetlab::to_json(exit)},
              {"violations", violations}});
    return violations == 0 ? 0 : 1;
}

int run_harnack(const RunConfig& rc) {
    auto cfg = rc.weights();
    json reports = json::array();
    int violations = 0;
    int mmax = std::min(rc.nmax, 3);
    for (auto [ci, cj] : std::vector<std::pair<std::int64_t, std::int64_t>>{{3, 1}, {2, 1}}) {
        for (int m = 1; m <= mmax; ++m) {
            int mesh = std::max(1, 27 / (m == 1 ? 3 : m == 2 ? 9 : 27));
            auto rep = carpetlab::harnack_constant(ci, cj, m, cfg, mesh, rc.tol);
            reports.push_back(carpetlab::to_json(rep));
            if (!(rep.theta >= 1.0) || !std::isfinite(rep.theta)) ++violations;
        }
    }
    emit(rc, "harnack", json{{"reports", reports}, {"violations", violations}});
    return violations == 0 ? 0 : 1;
}

int run_heatkernel(const RunConfig& rc) {
    auto cfg = rc.weights();
    // Cheap beta estimate from the cross-graph resistance growth.
    std::vector<double> rg;
    for (int n = 1; n <= 4; ++n)
        rg.push_back(carpetlab::cross_graph_resistance(n, cfg, rc.tol).resistance);
    auto lam = carpetlab::estimate_lambda(rg);
    double beta = carpetlab::beta_exponent(cfg.rho, lam.fit);

    int n = std::min(rc.nmax, 4);
    auto coarse = carpetlab::make_kernel_chain(n, cfg, beta);
    auto fine = carpetlab::make_kernel_chain(n + 1, cfg, beta);

    carpetlab::Point x{0.39, 0.39};
    double t0 = 100.0 * coarse.dt;
    std::vector<double> ts = {t0, 2.0 * t0, 4.0 * t0, 7.0 * t0, 10.0 * t0};
    auto profile = carpetlab::diagonal_profile(coarse, x, ts);
    auto fit = carpetlab::envelope_fit(coarse, x, ts);
    auto rescale = carpetlab::rescaling_check(coarse, fine, carpetlab::Point{0.13, 0.13},
                                              carpetlab::Point{0.20, 0.15}, 300.0 * fine.dt);

    int violations = 0;
    if (profile.band_lo <= 0.0 || profile.band_hi / profile.band_lo > 10.0) ++violations;
    if (fit.c2 <= 0.0) ++violations;
    if (rescale.rel_err > 0.01) ++violations;

    emit(rc, "heatkernel",
         json{{"beta", beta},
              {"lambda_fit", lam.fit},
              {"level", n},
              {"diagonal", carpetlab::to_json(profile)},
              {"envelope", carpetlab::to_json(fit)},
              {"rescaling", carpetlab::to_json(rescale)},
              {"violations", violations}});
    return violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for a weighted diffusion on the Sierpinski carpet"};
    app.require_subcommand(1);

    RunConfig rc;
    if (const char* env = std::getenv("CARPETLAB_OUT")) rc.out = env;
    if (rc.out.empty()) rc.out = "out";

    std::vector<std::pair<std::string, int (*)(const RunConfig&)>> pipelines = {
        {"resistance", run_resistance}, {"scaling", run_scaling},   {"walk", run_walk},
        {"harnack", run_harnack},       {"heatkernel", run_heatkernel},
    };

    std::vector<CLI::App*> subs;
    for (const auto& [name, fn] : pipelines) {
        (void)fn;
        subs.push_back(app.add_subcommand(name));
    }
    subs.push_back(app.add_subcommand("all", "run every pipeline"));
    std::string pattern = "g";
    for (CLI::App* sub : subs) {
        sub->add_option("--rho", rc.rho, "cell weight, rational p/q or decimal");
        sub->add_option("--pattern", pattern, "block pattern a..g")
            ->check(CLI::IsMember({"a", "b", "c", "d", "e", "f", "g"}));
        sub->add_option("--grid-k", rc.grid_k, "subcells per unit length");
        sub->add_option("--samples", rc.samples, "Monte Carlo sample count");
        sub->add_option("--seed", rc.seed, "RNG seed");
        sub->add_option("--mode", rc.mode, "exact or mc")
            ->check(CLI::IsMember({"exact", "mc"}));
        sub->add_option("--nmax", rc.nmax, "maximum level");
        sub->add_option("--threads", rc.threads, "worker cap (default 1 for reproducibility)");
        sub->add_option("--tol", rc.tol, "solver tolerance");
        sub->add_option("--out", rc.out, "output directory");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    rc.pattern = pattern[0];

    try {
        int worst = 0;
        for (const auto& [name, fn] : pipelines) {
            if (app.got_subcommand(name) || app.got_subcommand("all"))
                worst = std::max(worst, fn(rc));
        }
        return worst;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
