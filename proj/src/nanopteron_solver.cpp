#include "nanopteron/nanopteron_solver.hpp"

#include <chrono>
#include <cmath>

#include "nanopteron/error.hpp"
#include "nanopteron/gmres.hpp"

namespace nanopteron {

namespace {

double sup_diff(const LineField& a, const LineField& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
    return d;
}

} // namespace

SolverOperators::SolverOperators(const SymbolSet& symbols, double eps, const NanopteronConfig& cfg)
    : grid_(cfg.L, cfg.n), eps_(eps), ops_(symbols, eps, cfg.q_scaling), res_(symbols.find_resonance(eps)),
      ops0_(symbols, 0.0, cfg.q_scaling), band_width_(cfg.band_width), symbol_floor_(cfg.symbol_floor), gmres_tol_(cfg.gmres_tol),
      gmres_max_iter_(cfg.gmres_max_iter) {
    if (cfg.check_resolution && !(grid_.spacing() < M_PI / (4.0 * res_.omega)))
        throw InvalidParams("grid spacing does not resolve the ripple: need 2L/n < pi/(4 omega_eps)");

    sigma_ = Soliton(symbols.params()).sample(grid_);
    const double w = res_.omega;
    cos_omega_ = LineField::from_function(grid_, [w](double x) { return std::cos(w * x); });

    const VectorField nu = VectorField::from_periodic(PeriodicField(), PeriodicField({0.0, 1.0}), w);
    const VectorField b = ops_.B(sigma_vec(), nu);
    chi_ = apply_line(ops_.lambda_plus(), b.line_or_zero(1));
    upsilon_ = iota(chi_);
    if (!(std::abs(upsilon_) > 1e-6)) throw DegenerateSolvability("|upsilon_eps| <= 1e-6");
}

VectorField SolverOperators::sigma_vec() const { return VectorField::from_line(sigma_, LineField(grid_)); }

double SolverOperators::iota(const LineField& g) const {
    double s = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m) s += g.values[m] * cos_omega_.values[m];
    return s * grid_.spacing();
}

LineField SolverOperators::K1(const LineField& f) const {
    const auto& p = ops_.params();
    const double k = p.kappa();
    const double c = -(2.0 * k / (k + 1.0)) * (p.beta() / (k * k * k) + 1.0);
    LineField out = apply_line(ops0_.varpi(), hadamard(sigma_, f));
    return out *= c;
}

LineField SolverOperators::K2(const LineField& f) const {
    const auto& p = ops_.params();
    const double k = p.kappa();
    const double c = (2.0 * k / (k + 1.0)) * (p.beta() / (k * k) - 1.0);
    LineField out = apply_line(ops0_.varpi(), hadamard(sigma_, f));
    return out *= c;
}

LineField SolverOperators::A(const LineField& f) const { return f - K1(f); }

LineField SolverOperators::A_inverse(const LineField& y) const {
    std::vector<double> x;
    const auto r = gmres([this](const std::vector<double>& v) { return A(LineField(grid_, v)).values; },
                         y.values, x, gmres_tol_, gmres_max_iter_);
    if (!r.converged) throw LinearSolveFailure("GMRES did not reach tolerance for A");
    return LineField(grid_, std::move(x));
}

LineField SolverOperators::T(const LineField& f) const { return apply_line(ops_.T(), f); }

LineField SolverOperators::P(const LineField& g) const {
    LineField gt = g;
    gt.axpy(-iota(g) / upsilon_, chi_);
    Spectrum s = forward(gt);
    const Multiplier Tm = ops_.T();
    const double band = band_width_ * grid_.dk();
    for (std::size_t m = 0; m < s.size(); ++m) {
        const double k = grid_.wavenumber(m);
        const double sym = Tm.at(k);
        if (std::abs(k - res_.omega) < band || std::abs(sym) < symbol_floor_)
            s[m] = 0.0;
        else
            s[m] /= sym;
    }
    return inverse(grid_, s);
}

VectorField NanopteronSolution::theta() const {
    VectorField v = VectorField::from_line(sigma + state.eta1, state.eta2);
    v += state.a * wave.phi();
    return v;
}

NanopteronSolver::NanopteronSolver(const SymbolSet& symbols, double eps, NanopteronConfig cfg)
    : symbols_(symbols), eps_(eps), cfg_(cfg), ops_(symbols, eps, cfg_),
      periodic_(symbols, eps, [&] {
          PeriodicConfig p = cfg.periodic;
          p.a_max = cfg.a_max;
          p.q_scaling = cfg.q_scaling;
          return p;
      }()) {}

VectorField NanopteronSolver::ansatz(const NanopteronState& s, const PeriodicWave& w) const {
    VectorField v = VectorField::from_line(ops_.sigma() + s.eta1, s.eta2);
    v += s.a * w.phi();
    return v;
}

TermCollection NanopteronSolver::assemble_terms(const NanopteronState& s, const PeriodicWave& w) const {
    const LongWave& L = ops_.ops();
    const double a = s.a;
    const VectorField S = ops_.sigma_vec();
    const VectorField E = VectorField::from_line(s.eta1, s.eta2);
    const VectorField Phi = w.phi();
    const VectorField A = ansatz(s, w);

    TermCollection t;
    const Multiplier vp = L.varpi();
    const Multiplier lp = L.lambda_plus();
    auto put = [&](const std::string& key, const VectorField& v, double scale) {
        LineField j = apply_line(vp, v.line_or_zero(0));
        LineField l = apply_line(lp, v.line_or_zero(1));
        t["j" + key] = scale * j;
        t["l" + key] = scale * l;
    };

    put("11", L.B(S, S), 1.0);
    t["j11"] += ops_.sigma();
    put("21", L.B(S, E), 2.0);
    put("31", L.B(S, Phi), 2.0 * a);
    put("41", L.B(E, Phi), 2.0 * a);
    put("51", L.B(E, E), 1.0);

    put("12", L.Q(S, S, A), 1.0);
    put("22", L.Q(S, E, A), 2.0);
    put("32", L.Q(S, Phi, A), 2.0 * a);
    put("42", L.Q(E, Phi, A), 2.0 * a);
    put("52", L.Q(E, E, A), 1.0);
    put("6", L.Q(Phi, Phi, A) - L.Q(Phi, Phi, a * Phi), a * a);

    // 2 varpi^0 B_1^0(sigma, eta) = -K1 eta1 + K2 eta2
    t["j21_mod"] = t["j21"] - (ops_.K2(s.eta2) - ops_.K1(s.eta1));
    LineField l31 = t["l31"];
    l31.axpy(-2.0 * a, ops_.chi());
    t["l31_mod"] = l31;
    return t;
}

NanopteronSolver::Maps NanopteronSolver::N_maps(const NanopteronState& s, const PeriodicWave& w,
                                                FixedPointForm form) const {
    const LongWave& L = ops_.ops();
    const VectorField bq = L.BQ(ansatz(s, w));

    LineField R1 = apply_line(L.varpi(), bq.line_or_zero(0));
    R1 += ops_.sigma();
    R1 *= -1.0;
    R1 -= ops_.K1(s.eta1);
    R1 += ops_.K2(s.eta2);

    LineField R2 = apply_line(L.lambda_plus(), bq.line_or_zero(1));
    R2 *= -1.0;
    R2.axpy(2.0 * s.a, ops_.chi());

    Maps m;
    m.N2 = ops_.P(R2);
    m.N2 *= eps_ * eps_;
    m.N3 = ops_.iota(R2) / (2.0 * ops_.upsilon());
    m.N1 = ops_.A_inverse(R1 - ops_.K2(form == FixedPointForm::New ? m.N2 : s.eta2));
    return m;
}

std::pair<double, double> NanopteronSolver::residual(const NanopteronState& s, const PeriodicWave& w) const {
    const VectorField th = ops_.ops().Theta(ansatz(s, w));
    const double scale = ops_.sigma().max_abs();
    double line = 0.0, per = 0.0;
    for (int i = 0; i < 2; ++i) {
        if (!th.line[i].values.empty()) line = std::max(line, th.line[i].max_abs());
        double sum = 0.0;
        for (double c : th.per[i].coeffs) sum += std::abs(c);
        per = std::max(per, sum);
    }
    return {line / scale, per / scale};
}

NanopteronSolution NanopteronSolver::solve() const {
    const auto t0 = std::chrono::steady_clock::now();
    NanopteronSolution sol;
    sol.eps = eps_;
    sol.sigma = ops_.sigma();
    NanopteronState& s = sol.state;
    s.eta1 = LineField(ops_.grid());
    s.eta2 = LineField(ops_.grid());
    s.a = 0.0;
    NanopteronDiagnostics& d = sol.diag;

    PeriodicWave wave = periodic_.solve(0.0);
    d.wave_solves = 1;

    for (int it = 1; it <= cfg_.max_iter; ++it) {
        Maps m = N_maps(s, wave, cfg_.form);
        const double step = std::max({sup_diff(m.N1, s.eta1), sup_diff(m.N2, s.eta2), std::abs(m.N3 - s.a)});
        s.eta1 = std::move(m.N1);
        s.eta2 = std::move(m.N2);
        s.a = m.N3;
        d.iterations = it;
        d.step_sizes.push_back(step);
        if (!std::isfinite(step)) throw NoConvergence("nanopteron iteration produced non-finite values");
        if (std::abs(s.a) > cfg_.a_max) throw NoConvergence("ripple amplitude left the admissible ball");
        if (it > 10 && step > 1e3 * d.step_sizes.front())
            throw NoConvergence("nanopteron iteration diverges");

        const bool stale = std::abs(s.a - wave.a) > cfg_.resolve_fraction * std::abs(s.a);
        if (step <= cfg_.tol) {
            if (std::abs(s.a - wave.a) <= cfg_.tol) {
                d.converged = true;
                break;
            }
            wave = periodic_.solve(s.a);
            ++d.wave_solves;
        } else if (stale) {
            wave = periodic_.solve(s.a);
            ++d.wave_solves;
        }
    }
    if (!d.converged) throw NoConvergence("nanopteron iteration hit max_iter");
    sol.wave = wave;

    const auto r = residual(s, wave);
    d.line_residual = r.first;
    d.periodic_residual = r.second;
    d.residual = std::max(r.first, r.second);
    d.upsilon = ops_.upsilon();
    d.Upsilon = ops_.resonance().upsilon;
    d.omega_eps = ops_.resonance().omega;
    d.weight_q = 1.0 / (4.0 * std::sqrt(symbols_.params().alpha_kappa()));
    d.eta_l2 = std::hypot(l2_norm(s.eta1), l2_norm(s.eta2));
    d.eta_weighted = std::hypot(weighted_norm(s.eta1, d.weight_q, 1, NormVariant::CoshEndpoints),
                                weighted_norm(s.eta2, d.weight_q, 1, NormVariant::CoshEndpoints));
    d.symmetry_defect = std::max(s.eta1.symmetry_defect(), s.eta2.symmetry_defect());

    const Maps again = N_maps(s, wave, cfg_.form);
    d.consistency = std::max({sup_diff(again.N1, s.eta1), sup_diff(again.N2, s.eta2), std::abs(again.N3 - s.a)});

    const VectorField bq = ops_.ops().BQ(ansatz(s, wave));
    LineField rhs = apply_line(ops_.ops().lambda_plus(), bq.line_or_zero(1));
    rhs *= -eps_ * eps_;
    d.solvability = std::abs(ops_.iota(ops_.T(s.eta2) - rhs));

    d.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return sol;
}

NanopteronSolution solve_nanopteron(const SymbolSet& symbols, double eps, const NanopteronConfig& cfg) {
    return NanopteronSolver(symbols, eps, cfg).solve();
}

} // namespace nanopteron
