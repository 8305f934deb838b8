#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "nanopteron/config.hpp"
#include "nanopteron/dispersion.hpp"
#include "nanopteron/error.hpp"
#include "nanopteron/lattice.hpp"
#include "nanopteron/nanopteron_solver.hpp"
#include "nanopteron/run_record.hpp"
#include "nanopteron/validation.hpp"

using namespace nanopteron;

namespace {

enum Exit { kOk = 0, kNoConvergence = 1, kInvalid = 2 };

struct Default {
    const char* key;
    const char* value;
    const char* help;
};

// Every default lives here. Precedence: flag > --config file > this table.
const std::vector<Default> kDefaults = {
    {"kappa", "2", "linear spring ratio (> 1)"},
    {"beta", "1", "quadratic spring ratio"},
    {"n1_coeffs", "", "higher-order coefficients of the odd spring"},
    {"n2_coeffs", "", "higher-order coefficients of the even spring"},
    {"points", "1024", "dispersion: samples on [-pi, pi]"},
    {"eps", "0.1", "long-wave parameter"},
    {"a", "1e-3", "periodic: ripple amplitude"},
    {"periodic_tol", "1e-12", "periodic: sup-norm step tolerance"},
    {"periodic_max_iter", "200", "periodic: iteration cap"},
    {"modes", "32", "periodic: initial cosine modes"},
    {"anderson", "0", "periodic: Anderson acceleration depth, 0 for plain Picard"},
    {"L", "60", "nanopteron: half-length of the line grid"},
    {"n", "4096", "nanopteron: grid points (power of two)"},
    {"tol", "1e-10", "nanopteron: step tolerance"},
    {"max_iter", "200", "nanopteron: iteration cap"},
    {"sweep", "", "nanopteron: list of eps values (overrides eps)"},
    {"threads", "1", "nanopteron: sweep workers"},
    {"form", "new", "nanopteron: fixed-point form, new or original"},
    {"band_width", "0", "nanopteron: resonant band excluded by P, in units of dk"},
    {"init", "nanopteron", "simulate: leading or nanopteron"},
    {"sites", "512", "simulate: lattice sites (even)"},
    {"dt", "0.02", "simulate: RK4 step"},
    {"T", "0", "simulate: horizon, 0 means 20/c_eps"},
    {"snap_every", "50", "simulate: steps between snapshots"},
    {"quick", "0", "validate: skip gates 9-11 when 1"},
};

std::string flag_of(const std::string& key) {
    std::string f = "--";
    for (char ch : key) f += ch == '_' ? '-' : ch;
    return f;
}

std::string eps_tag(double eps) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", eps);
    return buf;
}

class Settings {
public:
    void add(CLI::App* sub, const std::string& key) {
        for (const auto& d : kDefaults)
            if (key == d.key) {
                const std::string help = *d.value ? std::string(d.help) + " (default " + d.value + ")" : d.help;
                opts_[sub].push_back({key, sub->add_option(flag_of(key), raw_[sub][key], help)});
                return;
            }
        throw std::logic_error("no default for " + key);
    }

    KeyValueConfig merge(CLI::App* sub, const std::string& config_path) const {
        KeyValueConfig out;
        for (const auto& d : kDefaults) out.set(d.key, d.value);
        if (!config_path.empty()) {
            const auto file = KeyValueConfig::load(config_path);
            std::vector<std::string> known;
            for (const auto& d : kDefaults) known.push_back(d.key);
            file.require_known(known);
            for (const auto& [k, v] : file.entries()) out.set(k, v);
        }
        auto it = opts_.find(sub);
        if (it != opts_.end())
            for (const auto& [key, opt] : it->second)
                if (opt->count() > 0) out.set(key, raw_.at(sub).at(key));
        return out;
    }

private:
    std::map<CLI::App*, std::vector<std::pair<std::string, CLI::Option*>>> opts_;
    std::map<CLI::App*, std::map<std::string, std::string>> raw_;
};

void echo(RunRecord& rec, const KeyValueConfig& cfg, const std::vector<std::string>& keys) {
    for (const auto& k : keys) rec.config(k, cfg.get_string(k));
}

struct Common {
    std::string out = ".";
    bool no_timings = false;
    std::string path(const std::string& name) const { return (std::filesystem::path(out) / name).string(); }
};

int run_dispersion(const KeyValueConfig& cfg, const Common& c) {
    const DimerParams p = params_from_config(cfg);
    SymbolSet s(p);
    const long N = cfg.get_int("points");
    const double eps = cfg.get_double("eps");
    if (N < 2) throw InvalidParams("points must be >= 2");
    const auto res = s.find_resonance(eps);
    RunRecord rec("dispersion");
    echo(rec, cfg, {"kappa", "beta", "points", "eps"});
    const std::string csv = c.path("dispersion.csv");
    std::FILE* f = std::fopen(csv.c_str(), "w");
    if (!f) throw Error("cannot write " + csv);
    std::fprintf(f, "# schema %s\nk,lambda_minus,lambda_plus,v_minus,v_plus,varpi_c\n", kCsvSchema);
    for (long i = 0; i < N; ++i) {
        const double k = -M_PI + 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(N - 1);
        const auto l = s.lambda_pm(k);
        const auto v = s.eigvec_v_pm(k);
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", k, l.minus, l.plus, v.minus, v.plus,
                     s.varpi_c(res.c_sq, k));
    }
    std::fclose(f);
    rec.output("c_kappa", p.c_kappa());
    rec.output("alpha_kappa", p.alpha_kappa());
    rec.output("Omega", res.Omega);
    rec.output("omega_eps", res.omega);
    rec.output("csv", "dispersion.csv");
    rec.write(c.path("dispersion.json"), !c.no_timings);
    std::printf("c_kappa %.12g  alpha_kappa %.12g  Omega %.12g  omega_eps %.12g\n", p.c_kappa(), p.alpha_kappa(),
                res.Omega, res.omega);
    return kOk;
}

int run_periodic(const KeyValueConfig& cfg, const Common& c) {
    const DimerParams p = params_from_config(cfg);
    PeriodicConfig pc;
    pc.tol = cfg.get_double("periodic_tol");
    pc.max_iter = static_cast<int>(cfg.get_int("periodic_max_iter"));
    pc.modes = static_cast<std::size_t>(cfg.get_int("modes"));
    pc.anderson_depth = static_cast<int>(cfg.get_int("anderson"));
    const double eps = cfg.get_double("eps"), a = cfg.get_double("a");
    const auto t0 = std::chrono::steady_clock::now();
    const PeriodicWave w = solve_periodic(SymbolSet(p), eps, a, pc);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    RunRecord rec("periodic");
    echo(rec, cfg, {"kappa", "beta", "eps", "a", "periodic_tol", "periodic_max_iter", "modes", "anderson"});
    rec.output("omega_eps", w.omega_eps);
    rec.output("omega", w.omega);
    rec.output("t", w.t);
    rec.output("iterations", w.iterations);
    rec.output("residual", w.residual);
    rec.output("max_ratio", w.max_ratio);
    rec.output("modes", w.psi1.size());
    rec.output("csv", "periodic.csv");
    rec.timing("solve", secs);
    write_periodic_csv(c.path("periodic.csv"), {{"psi1", &w.psi1}, {"psi2", &w.psi2}});
    rec.write(c.path("periodic.json"), !c.no_timings);
    std::printf("omega %.15g  iterations %d  residual %.3e  max ratio %.3f\n", w.omega, w.iterations, w.residual,
                w.max_ratio);
    return kOk;
}

int run_nanopteron(const KeyValueConfig& cfg, const Common& c) {
    const DimerParams p = params_from_config(cfg);
    NanopteronConfig nc;
    nc.L = cfg.get_double("L");
    nc.n = static_cast<std::size_t>(cfg.get_int("n"));
    nc.tol = cfg.get_double("tol");
    nc.max_iter = static_cast<int>(cfg.get_int("max_iter"));
    nc.band_width = cfg.get_double("band_width");
    const std::string form = cfg.get_string("form");
    if (form == "new") nc.form = FixedPointForm::New;
    else if (form == "original") nc.form = FixedPointForm::Original;
    else throw InvalidParams("form must be new or original");
    std::vector<double> sweep = cfg.get_list("sweep");
    if (sweep.empty()) sweep.push_back(cfg.get_double("eps"));
    const long threads = cfg.get_int("threads");
    if (threads < 1) throw InvalidParams("threads must be >= 1");

    const SymbolSet symbols(p);
    std::vector<int> codes(sweep.size(), kOk);
    std::vector<std::string> lines(sweep.size());
    std::mutex err_mu;
    std::string first_error;
    auto work = [&](std::size_t i) {
        const double eps = sweep[i];
        const std::string tag = "nanopteron_eps" + eps_tag(eps);
        try {
            const auto sol = solve_nanopteron(symbols, eps, nc);
            RunRecord rec("nanopteron");
            echo(rec, cfg, {"kappa", "beta", "L", "n", "tol", "max_iter", "form", "band_width"});
            rec.config("eps", eps);
            const auto& d = sol.diag;
            rec.output("a", sol.state.a);
            rec.output("iterations", d.iterations);
            rec.output("residual", d.residual);
            rec.output("line_residual", d.line_residual);
            rec.output("periodic_residual", d.periodic_residual);
            rec.output("omega_eps", d.omega_eps);
            rec.output("omega", sol.wave.omega);
            rec.output("upsilon", d.upsilon);
            rec.output("Upsilon", d.Upsilon);
            rec.output("eta_l2", d.eta_l2);
            rec.output("eta_weighted", d.eta_weighted);
            rec.output("weight_q", d.weight_q);
            rec.output("symmetry_defect", d.symmetry_defect);
            rec.output("solvability", d.solvability);
            rec.output("consistency", d.consistency);
            rec.output("wave_solves", d.wave_solves);
            rec.output("step_sizes", d.step_sizes);
            rec.output("csv", tag + ".csv");
            rec.output("ripple_csv", tag + "_ripple.csv");
            rec.timing("solve", d.seconds);
            write_line_csv(c.path(tag + ".csv"),
                           {{"sigma", &sol.sigma}, {"eta1", &sol.state.eta1}, {"eta2", &sol.state.eta2}});
            write_periodic_csv(c.path(tag + "_ripple.csv"), {{"psi1", &sol.wave.psi1}, {"psi2", &sol.wave.psi2}});
            rec.write(c.path(tag + ".json"), !c.no_timings);
            char buf[256];
            std::snprintf(buf, sizeof buf, "eps %-6g a % .6e  residual %.2e  iterations %3d  |eta| %.4e", eps,
                          sol.state.a, d.residual, d.iterations, d.eta_l2);
            lines[i] = buf;
        } catch (const NoConvergence& e) {
            codes[i] = kNoConvergence;
            lines[i] = "eps " + eps_tag(eps) + " no convergence: " + e.what();
        } catch (const InvalidParams& e) {
            codes[i] = kInvalid;
            lines[i] = "eps " + eps_tag(eps) + " invalid: " + e.what();
        } catch (const Error& e) {
            codes[i] = kNoConvergence;
            lines[i] = "eps " + eps_tag(eps) + " failed: " + e.what();
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lk(err_mu);
            if (first_error.empty()) first_error = e.what();
            codes[i] = kNoConvergence;
        }
    };
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex mu;
    for (long t = 0; t < std::min<long>(threads, static_cast<long>(sweep.size())); ++t)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i;
                {
                    std::lock_guard<std::mutex> lk(mu);
                    if (next >= sweep.size()) return;
                    i = next++;
                }
                work(i);
            }
        });
    for (auto& th : pool) th.join();
    if (!first_error.empty()) throw std::runtime_error(first_error);
    int code = kOk;
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        std::printf("%s\n", lines[i].c_str());
        code = std::max(code, codes[i]);
    }
    return code;
}

int run_simulate(const KeyValueConfig& cfg, const Common& c) {
    const DimerParams p = params_from_config(cfg);
    const double eps = cfg.get_double("eps");
    const std::string init = cfg.get_string("init");
    LatticeConfig lc;
    lc.sites = static_cast<std::size_t>(cfg.get_int("sites"));
    lc.dt = cfg.get_double("dt");
    lc.snap_every = static_cast<std::size_t>(cfg.get_int("snap_every"));

    RunRecord rec("simulate");
    echo(rec, cfg, {"kappa", "beta", "eps", "init", "sites", "dt", "T", "snap_every"});
    TravelingProfile prof;
    if (init == "leading") {
        prof = leading_order_profile(p, eps);
    } else if (init == "nanopteron") {
        NanopteronConfig nc;
        nc.L = cfg.get_double("L");
        nc.n = static_cast<std::size_t>(cfg.get_int("n"));
        nc.tol = cfg.get_double("tol");
        nc.max_iter = static_cast<int>(cfg.get_int("max_iter"));
        NanopteronSolver solver(SymbolSet(p), eps, nc);
        const auto sol = solver.solve();
        rec.output("a", sol.state.a);
        rec.output("nanopteron_residual", sol.diag.residual);
        prof = reconstruct_profile(solver.operators().ops(), sol.theta());
    } else {
        throw InvalidParams("init must be leading or nanopteron");
    }
    const double T = cfg.get_double("T");
    lc.T = T > 0.0 ? T : 20.0 / prof.speed;
    Lattice lat(p, lc);
    const auto t0 = std::chrono::steady_clock::now();
    const auto traj = lat.run(lat.reconstruct_initial(prof));
    rec.timing("integrate", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());

    const std::string csv = c.path("trajectory.csv");
    std::FILE* f = std::fopen(csv.c_str(), "w");
    if (!f) throw Error("cannot write " + csv);
    std::fprintf(f, "# schema %s\nt,j,r\n", kCsvSchema);
    double shape = 0.0, drift = 0.0;
    for (std::size_t s = 0; s < traj.times.size(); ++s) {
        for (std::size_t i = 0; i < traj.r[s].size(); ++i)
            std::fprintf(f, "%.17g,%ld,%.17g\n", traj.times[s], traj.first_site + static_cast<long>(i), traj.r[s][i]);
        shape = std::max(shape, shape_error(traj, s, prof));
        drift = std::max(drift, std::abs(traj.energy[s] - traj.energy[0]) / std::abs(traj.energy[0]));
    }
    std::fclose(f);
    const auto snaps = stegoton_diagnostics(traj, 2.0 * std::sqrt(p.alpha_kappa()) / eps);
    std::vector<double> ratios;
    for (const auto& s : snaps) ratios.push_back(s.ratio);
    rec.output("speed", prof.speed);
    rec.output("T", lc.T);
    rec.output("snapshots", traj.times.size());
    rec.output("shape_error", shape);
    rec.output("energy_drift", drift);
    rec.output("snapshot_peak_ratios", ratios);
    rec.output("passage_peak_ratios",
               passage_ratios(traj, 3, static_cast<long>(std::floor(prof.speed * lc.T)) - 3));
    rec.output("csv", "trajectory.csv");
    rec.write(c.path("simulate.json"), !c.no_timings);
    std::printf("speed %.12g  T %.6g  shape error %.3e  energy drift %.2e\n", prof.speed, lc.T, shape, drift);
    return kOk;
}

int run_validate(const KeyValueConfig& cfg, const Common& c) {
    const DimerParams p = params_from_config(cfg);
    const bool full = cfg.get_int("quick") == 0;
    RunRecord rec("validate");
    echo(rec, cfg, {"kappa", "beta", "quick"});
    const auto gates = run_validation(p, full);
    std::printf("%-26s %-6s %9s  %s\n", "gate", "result", "seconds", "detail");
    for (const auto& g : gates) {
        rec.gate(g);
        std::printf("%-26s %-6s %9.3f  %s\n", g.name.c_str(), g.passed ? "PASS" : "FAIL", g.seconds, g.detail.c_str());
    }
    rec.write(c.path("validate.json"), !c.no_timings);
    return rec.all_gates_passed() ? kOk : kNoConvergence;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nanopteron solver suite for spring-dimer FPUT lattices"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    std::string config_path;
    app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
    app.add_option("--out", common.out, "output directory")->capture_default_str();
    app.add_flag("--no-timings", common.no_timings, "omit wall-clock timings from run records");

    Settings settings;
    auto* dispersion = app.add_subcommand("dispersion", "sample the dispersion symbols");
    auto* periodic = app.add_subcommand("periodic", "solve for the periodic ripple");
    auto* nanop = app.add_subcommand("nanopteron", "solve for the nanopteron profile");
    auto* simulate = app.add_subcommand("simulate", "run the lattice from a traveling profile");
    auto* validate = app.add_subcommand("validate", "run the acceptance gates");

    for (auto* sub : {dispersion, periodic, nanop, simulate, validate})
        for (const char* k : {"kappa", "beta"}) settings.add(sub, k);
    for (const char* k : {"points", "eps"}) settings.add(dispersion, k);
    for (const char* k : {"eps", "a", "periodic_tol", "periodic_max_iter", "modes", "anderson"}) settings.add(periodic, k);
    for (const char* k : {"eps", "L", "n", "tol", "max_iter", "sweep", "threads", "form", "band_width"})
        settings.add(nanop, k);
    for (const char* k : {"eps", "init", "sites", "dt", "T", "snap_every", "L", "n", "tol", "max_iter"})
        settings.add(simulate, k);
    settings.add(validate, "quick");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        std::filesystem::create_directories(common.out);
        const KeyValueConfig cfg = settings.merge(sub, config_path);
        if (sub == dispersion) return run_dispersion(cfg, common);
        if (sub == periodic) return run_periodic(cfg, common);
        if (sub == nanop) return run_nanopteron(cfg, common);
        if (sub == simulate) return run_simulate(cfg, common);
        return run_validate(cfg, common);
    } catch (const NoConvergence& e) {
        std::fprintf(stderr, "no convergence: %s\n", e.what());
        return kNoConvergence;
    } catch (const InvalidParams& e) {
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        return kInvalid;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kNoConvergence;
    }
}
