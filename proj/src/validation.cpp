#include "nanopteron/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>

#include "nanopteron/dispersion.hpp"
#include "nanopteron/error.hpp"
#include "nanopteron/kdv.hpp"
#include "nanopteron/lattice.hpp"
#include "nanopteron/nanopteron_solver.hpp"
#include "nanopteron/periodic_solver.hpp"

namespace nanopteron {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(const char* f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

class Timer {
public:
    Timer() : t0_(Clock::now()) {}
    double seconds() const { return std::chrono::duration<double>(Clock::now() - t0_).count(); }

private:
    Clock::time_point t0_;
};

GateResult finish(std::string name, bool ok, const Timer& tm, double limit, std::string detail) {
    GateResult g;
    g.name = std::move(name);
    g.seconds = tm.seconds();
    g.time_limit = limit;
    g.passed = ok && g.seconds <= limit;
    g.detail = std::move(detail);
    if (ok && !g.passed) g.detail += fmt(" [over time limit %.0fs]", limit);
    return g;
}

} // namespace

GateResult gate_dispersion_identities(const std::vector<double>& kappas) {
    Timer tm;
    std::mt19937 rng(20240601);
    std::uniform_real_distribution<double> U(-M_PI, M_PI);
    double worst_trace = 0.0, worst_det = 0.0;
    for (double kap : kappas) {
        SymbolSet s(DimerParams::make(kap, 1.0));
        for (int i = 0; i < 10000; ++i) {
            const double k = U(rng);
            const auto l = s.lambda_pm(k);
            const double sk = std::sin(k);
            worst_trace = std::max(worst_trace, std::abs(l.minus + l.plus - (2.0 + 2.0 * kap)));
            worst_det = std::max(worst_det, std::abs(l.minus * l.plus - 4.0 * kap * sk * sk));
        }
    }
    const bool ok = worst_trace <= 1e-12 && worst_det <= 1e-12;
    return finish("1 dispersion identities", ok, tm, 1.0,
                  fmt("max trace err %.2e, max det err %.2e (tol 1e-12)", worst_trace, worst_det));
}

GateResult gate_derivative_bounds(const std::vector<double>& kappas) {
    Timer tm;
    const int N = 10000;
    const double h = 1e-5, margin = 1e-6;
    double worst_abs = 0.0, worst_lin = -1e300, worst_ratio = 0.0, worst_sq = -1e300;
    for (double kap : kappas) {
        const DimerParams p = DimerParams::make(kap, 1.0);
        SymbolSet s(p);
        const double ck = p.c_kappa();
        for (int i = 0; i < N; ++i) {
            const double k = -M_PI + 2.0 * M_PI * (i + 0.5) / N;
            const auto lp = s.lambda_pm(k + h);
            const auto lm = s.lambda_pm(k - h);
            for (double d : {(lp.minus - lm.minus) / (2 * h), (lp.plus - lm.plus) / (2 * h)}) {
                const double ad = std::abs(d);
                worst_abs = std::max(worst_abs, ad - 2.0);
                worst_lin = std::max(worst_lin, ad - 2.0 * ck * std::abs(k));
                worst_sq = std::max(worst_sq, ad - 2.0 * ck * ck * std::abs(k));
                worst_ratio = std::max(worst_ratio, ad / (2.0 * std::abs(k)) / ck);
            }
        }
    }
    const bool ok = worst_abs <= margin && worst_lin <= margin;
    return finish("2 derivative bounds", ok, tm, 1.0,
                  fmt("max(|l'|-2) %.2e; max(|l'|-2c|k|) %.2e; worst |l'|/(2c|k|) %.4f; "
                      "supplementary max(|l'|-2c^2|k|) %.2e (margin 1e-6)",
                      worst_abs, worst_lin, worst_ratio, worst_sq));
}

GateResult gate_resonance(double kappa, double beta) {
    Timer tm;
    SymbolSet s(DimerParams::make(kappa, beta));
    double worst = 0.0;
    bool inside = true;
    std::string d;
    for (double eps : {0.3, 0.1, 0.03}) {
        const auto r = s.find_resonance(eps);
        const double res = std::abs(r.c_sq * r.Omega * r.Omega - s.lambda_pm(r.Omega).plus);
        worst = std::max(worst, res);
        inside = inside && r.Omega >= r.bracket_lo && r.Omega <= r.bracket_hi;
        d += fmt("eps %.2f Omega %.15f in [%.6f, %.6f] res %.1e; ", eps, r.Omega, r.bracket_lo, r.bracket_hi, res);
    }
    return finish("3 resonance", worst <= 1e-12 && inside, tm, 1.0, d + "(tol 1e-12)");
}

GateResult gate_kdv_core(const std::vector<std::pair<double, double>>& params) {
    Timer tm;
    LineGrid g(40.0, 2048);
    double worst = 0.0;
    for (auto [kap, bet] : params) {
        const DimerParams p = DimerParams::make(kap, bet);
        worst = std::max(worst, kdv_residual(p, Soliton(p).sample(g)).max_abs());
    }
    return finish("4 KdV core", worst <= 1e-10, tm, 1.0, fmt("max residual %.2e (tol 1e-10)", worst));
}

GateResult gate_fp_kernel(const DimerParams& p) {
    Timer tm;
    NanopteronConfig cfg;
    cfg.L = 40.0;
    cfg.n = 4096;
    SolverOperators ops(SymbolSet(p), 0.1, cfg);
    const LineField ds = Soliton(p).sample_derivative(ops.grid());
    const double r = ops.A(ds).max_abs() / ds.max_abs();
    return finish("5 Friesecke-Pego kernel", r <= 1e-6, tm, 5.0, fmt("||A s'||/||s'|| = %.2e (tol 1e-6)", r));
}

GateResult gate_conjugation(const DimerParams& p) {
    Timer tm;
    SymbolSet s(p);
    const Multiplier mu{[s](double k) { return s.varpi_zero(k); }, 1.0};
    LineGrid g(40.0, 1024);
    std::mt19937 rng(7);
    std::normal_distribution<double> N01(0.0, 1.0);
    std::uniform_real_distribution<double> Uk(0.0, 2.0), Us(2.0, 4.0);
    const double qs[] = {0.2, 0.1, 0.05, 0.025};
    bool monotone = true, in_band = true;
    double rmin = 1e300, rmax = 0.0;
    for (int f = 0; f < 20; ++f) {
        double c[3], k[3], w[3];
        for (int i = 0; i < 3; ++i) {
            c[i] = N01(rng);
            k[i] = Uk(rng);
            w[i] = Us(rng);
        }
        const LineField x = LineField::from_function(g, [&](double X) {
            double v = 0.0;
            for (int i = 0; i < 3; ++i) v += c[i] * std::exp(-X * X / (2 * w[i] * w[i])) * std::cos(k[i] * X);
            return v;
        });
        const LineField base = apply_line(mu, x);
        double dev[4];
        for (int i = 0; i < 4; ++i) dev[i] = l2_norm(conjugated_multiplier(mu, qs[i], x) - base) / l2_norm(x);
        for (int i = 0; i < 3; ++i) {
            const double ratio = dev[i] / dev[i + 1];
            monotone = monotone && dev[i + 1] < dev[i];
            in_band = in_band && ratio >= 1.2 && ratio <= 1.7;
            rmin = std::min(rmin, ratio);
            rmax = std::max(rmax, ratio);
        }
    }
    return finish("6 conjugation", monotone && in_band, tm, 5.0,
                  fmt("monotone %s; per-halving ratios in [%.3f, %.3f] (band [1.2, 1.7])",
                      monotone ? "yes" : "no", rmin, rmax));
}

GateResult gate_weighted_norms(const DimerParams&) {
    Timer tm;
    LineGrid g(40.0, 2048);
    std::mt19937 rng(11);
    std::normal_distribution<double> N01(0.0, 1.0);
    std::uniform_real_distribution<double> Uk(0.0, 3.0), Us(0.5, 2.0);
    const NormVariant vs[] = {NormVariant::CoshSobolev, NormVariant::CoshPowSobolev, NormVariant::CoshEndpoints,
                              NormVariant::CoshPowEndpoints};
    double rmin = 1e300, rmax = 0.0;
    for (int f = 0; f < 100; ++f) {
        double c[3], k[3], w[3];
        for (int i = 0; i < 3; ++i) {
            c[i] = N01(rng);
            k[i] = Uk(rng);
            w[i] = Us(rng);
        }
        const LineField x = LineField::from_function(g, [&](double X) {
            double v = 0.0;
            for (int i = 0; i < 3; ++i) {
                const double sh = 1.0 / std::cosh(X / w[i]);
                v += c[i] * sh * sh * std::cos(k[i] * X);
            }
            return v;
        });
        for (double q : {0.1, 0.3})
            for (int r : {1, 2}) {
                double n[4];
                for (int i = 0; i < 4; ++i) n[i] = weighted_norm(x, q, r, vs[i]);
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) {
                        rmin = std::min(rmin, n[i] / n[j]);
                        rmax = std::max(rmax, n[i] / n[j]);
                    }
            }
    }
    const bool ok = rmin >= 0.05 && rmax <= 20.0;
    return finish("7 weighted norms", ok, tm, 5.0, fmt("pairwise ratios in [%.3f, %.3f] (band [0.05, 20])", rmin, rmax));
}

GateResult gate_periodic(const DimerParams& p) {
    Timer tm;
    SymbolSet s(p);
    const double eps = 0.1;
    PeriodicSolver solver(s, eps);
    const PeriodicWave w = solver.solve(1e-3);
    const PeriodicWave w0 = solver.solve(0.0);
    const double d0 = std::abs(w0.omega - solver.resonance().omega);
    auto max_slope = [&](int pts) {
        double prev = w0.omega, m = 0.0;
        for (int i = 1; i <= pts; ++i) {
            const double a = 1e-3 * i / pts;
            const double om = solver.solve(a).omega;
            m = std::max(m, std::abs(om - prev) / (1e-3 / pts));
            prev = om;
        }
        return m;
    };
    const double lip_coarse = max_slope(10);
    const double lip_fine = max_slope(20);
    const bool lip_ok = std::isfinite(lip_fine) && lip_fine <= 2.0 * lip_coarse + 1e-9;
    const bool ok = w.converged && w.iterations <= 50 && w.max_ratio <= 0.9 && w.residual <= 1e-10 && d0 <= 1e-12 && lip_ok;
    return finish("8 periodic solver", ok, tm, 30.0,
                  fmt("iterations %d, max ratio %.3f, residual %.2e, |omega^0 - omega_eps| %.1e, "
                      "FD Lipschitz %.3e (h=1e-4) %.3e (h=5e-5)",
                      w.iterations, w.max_ratio, w.residual, d0, lip_coarse, lip_fine));
}

GateResult gate_nanopteron(const DimerParams& p) {
    Timer tm;
    SymbolSet s(p);
    const double epss[] = {0.2, 0.1, 0.05};
    struct Row {
        double a, eta, res;
        bool conv;
    };
    auto sweep = [&](double L) {
        std::vector<Row> rows;
        for (double eps : epss) {
            NanopteronConfig cfg;
            cfg.L = L;
            cfg.n = eps < 0.1 ? 8192 : 4096;
            const auto sol = solve_nanopteron(s, eps, cfg);
            rows.push_back({sol.state.a, sol.diag.eta_l2, sol.diag.residual, sol.diag.converged});
        }
        return rows;
    };
    bool ok = true;
    std::string d;
    std::vector<Row> ref;
    for (double L : {60.0, 80.0}) {
        std::vector<Row> rows;
        try {
            rows = sweep(L);
        } catch (const Error& e) {
            return finish("9 nanopteron solver", false, tm, 600.0, fmt("L=%.0f: %s", L, e.what()));
        }
        const double s1 = std::log(std::abs(rows[0].a / rows[1].a)) / std::log(2.0);
        const double s2 = std::log(std::abs(rows[1].a / rows[2].a)) / std::log(2.0);
        for (int i = 0; i < 2; ++i) ok = ok && rows[i].conv && rows[i].res <= 1e-6;
        for (int i = 0; i < 2; ++i) ok = ok && rows[i + 1].eta / epss[i + 1] <= 1.1 * rows[i].eta / epss[i];
        ok = ok && std::abs(rows[1].a) < std::abs(rows[0].a) && std::abs(rows[2].a) < std::abs(rows[1].a) && s2 > s1;
        d += fmt("L=%.0f: a = %.3e, %.3e, %.3e; |eta|/eps = %.3f, %.3f, %.3f; res %.1e, %.1e; slopes %.2f -> %.2f. ", L,
                 rows[0].a, rows[1].a, rows[2].a, rows[0].eta / 0.2, rows[1].eta / 0.1, rows[2].eta / 0.05, rows[0].res,
                 rows[1].res, s1, s2);
        if (ref.empty()) {
            ref = rows;
        } else {
            double worst_a = 0.0, worst_eta = 0.0;
            for (int i = 0; i < 2; ++i) {
                worst_a = std::max(worst_a, std::abs(rows[i].a - ref[i].a) / std::abs(ref[i].a));
                worst_eta = std::max(worst_eta, std::abs(rows[i].eta - ref[i].eta) / ref[i].eta);
            }
            ok = ok && worst_a <= 1e-3 && worst_eta <= 1e-4;
            d += fmt("L consistency: rel da %.1e, rel d|eta| %.1e", worst_a, worst_eta);
        }
    }
    return finish("9 nanopteron solver", ok, tm, 600.0, d);
}

GateResult gate_lattice(const DimerParams& p) {
    Timer tm;
    const double eps = 0.2;
    SymbolSet s(p);
    NanopteronSolver solver(s, eps);
    const auto sol = solver.solve();
    const TravelingProfile full = reconstruct_profile(solver.operators().ops(), sol.theta());
    const TravelingProfile lead = leading_order_profile(p, eps);

    LatticeConfig lc;
    lc.sites = 512;
    lc.dt = 0.02;
    lc.T = 20.0 / full.speed;
    lc.snap_every = 50;
    Lattice lat(p, lc);

    double shape_core = 0.0;
    auto run = [&](const TravelingProfile& prof, double& shape, double& drift) {
        auto traj = lat.run(lat.reconstruct_initial(prof));
        shape = 0.0;
        drift = 0.0;
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            shape = std::max(shape, shape_error(traj, i, prof));
            if (&prof == &full) shape_core = std::max(shape_core, shape_error(traj, i, prof, 64.0));
            drift = std::max(drift, std::abs(traj.energy[i] - traj.energy[0]) / std::abs(traj.energy[0]));
        }
        return traj;
    };
    double shape_full, drift_full, shape_lead, drift_lead;
    const auto traj = run(full, shape_full, drift_full);
    run(lead, shape_lead, drift_lead);

    // sites the core passes well inside the horizon
    const long j_lo = 3, j_hi = static_cast<long>(std::floor(full.speed * lc.T)) - 3;
    const auto ratios = passage_ratios(traj, j_lo, j_hi);
    double worst = 0.0;
    for (double r : ratios) worst = std::max(worst, std::abs(r / p.kappa() - 1.0));
    const auto snaps = stegoton_diagnostics(traj, 2.0 * std::sqrt(p.alpha_kappa()) / eps);
    double smin = 1e300, smax = 0.0;
    for (const auto& x : snaps) {
        smin = std::min(smin, x.ratio);
        smax = std::max(smax, x.ratio);
    }
    const bool ok = shape_full <= 1e-3 && shape_lead <= 5e-2 && !ratios.empty() && worst <= 0.02 &&
                    std::max(drift_full, drift_lead) <= 1e-8;
    return finish("10 lattice", ok, tm, 300.0,
                  fmt("shape (nanopteron) %.2e (tol 1e-3), within 64 sites of the core %.2e; shape (leading) %.2e "
                      "(tol 5e-2); passage peak ratio max dev %.2f%% over %zu pairs (tol 2%%); snapshot interp ratio "
                      "[%.4f, %.4f]; drift %.1e, %.1e",
                      shape_full, shape_core, shape_lead, 100.0 * worst, ratios.size(), smin, smax, drift_full,
                      drift_lead));
}

GateResult gate_fixed_point_forms(const DimerParams& p) {
    Timer tm;
    SymbolSet s(p);
    NanopteronConfig a, b;
    b.form = FixedPointForm::Original;
    const auto x = solve_nanopteron(s, 0.2, a);
    const auto y = solve_nanopteron(s, 0.2, b);
    const double d = std::max({(x.state.eta1 - y.state.eta1).max_abs(), (x.state.eta2 - y.state.eta2).max_abs(),
                               std::abs(x.state.a - y.state.a)});
    return finish("11 fixed-point forms", d <= 1e-8, tm, 600.0,
                  fmt("max difference %.2e (tol 1e-8); iterations %d vs %d", d, x.diag.iterations, y.diag.iterations));
}

std::vector<GateResult> run_validation(const DimerParams& p, bool full) {
    std::vector<GateResult> out;
    out.push_back(gate_dispersion_identities());
    out.push_back(gate_derivative_bounds());
    out.push_back(gate_resonance(p.kappa(), p.beta()));
    out.push_back(gate_kdv_core());
    out.push_back(gate_fp_kernel(p));
    out.push_back(gate_conjugation(p));
    out.push_back(gate_weighted_norms(p));
    out.push_back(gate_periodic(p));
    if (full) {
        out.push_back(gate_nanopteron(p));
        out.push_back(gate_lattice(p));
        out.push_back(gate_fixed_point_forms(p));
    }
    return out;
}

} // namespace nanopteron
