#include "nanopteron/periodic_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "nanopteron/error.hpp"

namespace nanopteron {

VectorField PeriodicWave::phi() const {
    PeriodicField p2 = psi2;
    if (p2.size() < 2) p2.coeffs.resize(2, 0.0);
    p2.coeffs[1] += 1.0;
    return VectorField::from_periodic(psi1, p2, omega);
}

VectorField PeriodicWave::theta() const { return a * phi(); }

double PeriodicWave::phi_value(int component, double X) const {
    const double Y = omega * X;
    return component == 0 ? psi1(Y) : psi2(Y) + std::cos(Y);
}

PeriodicSolver::PeriodicSolver(const SymbolSet& symbols, double eps, PeriodicConfig cfg)
    : symbols_(symbols), eps_(eps), cfg_(cfg), res_(symbols.find_resonance(eps)),
      ops_(symbols, eps, cfg.q_scaling) {
    // third and fourth derivatives of lambda_+ at Omega for the small-s series of R
    const double x0 = res_.Omega;
    const double h3 = 1e-4, h4 = 1e-3;
    auto l2 = [&](double k) { return symbols_.lambda_pm_second(k).plus; };
    xi3_ = (l2(x0 + h3) - l2(x0 - h3)) / (2.0 * h3);
    xi4_ = (l2(x0 + h4) - 2.0 * l2(x0) + l2(x0 - h4)) / (h4 * h4);
}

VectorField PeriodicSolver::phi_field(const PeriodicState& s) const {
    PeriodicField p2 = s.psi2;
    p2.coeffs[1] += 1.0;
    return VectorField::from_periodic(s.psi1, p2, res_.omega + s.t);
}

PeriodicSolver::Nonlinear PeriodicSolver::nonlinear_terms(const PeriodicState& s) const {
    const VectorField phi = phi_field(s);
    VectorField n = ops_.B(phi, phi);
    if (s.a != 0.0) n += ops_.Q(phi, phi, s.a * phi);
    return {n.per[0], n.per[1]};
}

PeriodicField PeriodicSolver::Psi1(const PeriodicState& s) const {
    const double w = res_.omega + s.t;
    const auto nl = nonlinear_terms(s);
    PeriodicField out = apply_periodic(ops_.varpi(), nl.n1, w);
    for (double& c : out.coeffs) c *= -s.a;
    return out;
}

PeriodicField PeriodicSolver::Psi2(const PeriodicState& s) const {
    const double w = res_.omega + s.t;
    const auto nl = nonlinear_terms(s);
    const PeriodicField lp = apply_periodic(ops_.lambda_plus(), nl.n2, w);
    const Multiplier T = ops_.T();
    PeriodicField out(lp.size());
    for (std::size_t j = 0; j < lp.size(); ++j) {
        if (j == 1) continue;
        const double xi = T.at(w * static_cast<double>(j));
        if (std::abs(xi) < cfg_.near_singular)
            throw NearSingularMode("xi symbol nearly vanishes at mode " + std::to_string(j));
        out.coeffs[j] = -s.a * eps_ * eps_ * lp.coeffs[j] / xi;
    }
    return out;
}

double PeriodicSolver::R(double s) const {
    const double x0 = res_.Omega;
    if (std::abs(s) < cfg_.r_series_switch) return 0.5 * res_.xi_second + s * (xi3_ / 6.0 + s * xi4_ / 24.0);
    return (symbols_.xi(res_.c_sq, x0 + s) - res_.upsilon * s) / (s * s);
}

double PeriodicSolver::Psi3(const PeriodicState& s) const {
    const double w = res_.omega + s.t;
    double c1 = 0.0;
    if (s.a != 0.0) {
        const auto nl = nonlinear_terms(s);
        // cosine coefficient c1 = 2 * (Fourier coefficient at +1)
        c1 = ops_.lambda_plus().at(w) * nl.n2.coeff(1);
    }
    const double et = eps_ * s.t;
    return -(eps_ / res_.upsilon) * R(et) * s.t * s.t - (eps_ * s.a / res_.upsilon) * c1;
}

double PeriodicSolver::residual(const PeriodicState& s) const {
    const double w = res_.omega + s.t;
    const VectorField phi = phi_field(s);
    VectorField n = ops_.B(phi, phi);
    if (s.a != 0.0) n += ops_.Q(phi, phi, s.a * phi);
    const PeriodicField r1 = apply_periodic(ops_.varpi(), n.per[0], w);
    const PeriodicField r2 = apply_periodic(ops_.lambda_plus(), n.per[1], w);
    const PeriodicField t2 = apply_periodic(ops_.T(), phi.per[1], w);
    double m = 0.0;
    const std::size_t M = std::max(phi.per[0].size(), r1.size());
    for (std::size_t j = 0; j < M; ++j) {
        m = std::max(m, std::abs(phi.per[0].coeff(j) + s.a * r1.coeff(j)));
        m = std::max(m, std::abs(t2.coeff(j) + s.a * eps_ * eps_ * r2.coeff(j)));
    }
    return m;
}

namespace {

// min || f - sum_k gamma_k dF_k ||_2 via regularized normal equations
std::vector<double> least_squares(const std::vector<std::vector<double>>& dF, const std::vector<double>& f) {
    const std::size_t m = dF.size();
    std::vector<double> G(m * m), b(m), gamma(m, 0.0);
    double tr = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            double s = 0.0;
            for (std::size_t r = 0; r < f.size(); ++r) s += dF[i][r] * dF[j][r];
            G[i * m + j] = s;
        }
        double s = 0.0;
        for (std::size_t r = 0; r < f.size(); ++r) s += dF[i][r] * f[r];
        b[i] = s;
        tr += G[i * m + i];
    }
    if (m == 0 || tr == 0.0) return gamma;
    for (std::size_t i = 0; i < m; ++i) G[i * m + i] += 1e-14 * tr;
    // Gaussian elimination with partial pivoting
    std::vector<std::size_t> piv(m);
    for (std::size_t i = 0; i < m; ++i) piv[i] = i;
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < m; ++r)
            if (std::abs(G[r * m + c]) > std::abs(G[p * m + c])) p = r;
        if (p != c) {
            for (std::size_t j = 0; j < m; ++j) std::swap(G[c * m + j], G[p * m + j]);
            std::swap(b[c], b[p]);
        }
        for (std::size_t r = c + 1; r < m; ++r) {
            const double l = G[r * m + c] / G[c * m + c];
            for (std::size_t j = c; j < m; ++j) G[r * m + j] -= l * G[c * m + j];
            b[r] -= l * b[c];
        }
    }
    for (std::size_t i = m; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < m; ++j) s -= G[i * m + j] * gamma[j];
        gamma[i] = s / G[i * m + i];
    }
    return gamma;
}

} // namespace

PeriodicWave PeriodicSolver::solve_with_modes(double a, std::size_t modes) const {
    PeriodicState s;
    s.a = a;
    s.psi1 = PeriodicField(modes);
    s.psi2 = PeriodicField(modes);

    PeriodicWave w;
    w.eps = eps_;
    w.a = a;
    w.omega_eps = res_.omega;

    auto diff = [](const PeriodicState& x, const PeriodicState& y) {
        double d = std::abs(x.t - y.t);
        for (std::size_t j = 0; j < x.psi1.size(); ++j) {
            d = std::max(d, std::abs(x.psi1.coeffs[j] - y.psi1.coeffs[j]));
            d = std::max(d, std::abs(x.psi2.coeffs[j] - y.psi2.coeffs[j]));
        }
        return d;
    };

    auto pack = [modes](const PeriodicState& x) {
        std::vector<double> v(2 * modes + 1);
        std::copy(x.psi1.coeffs.begin(), x.psi1.coeffs.end(), v.begin());
        std::copy(x.psi2.coeffs.begin(), x.psi2.coeffs.end(), v.begin() + static_cast<long>(modes));
        v[2 * modes] = x.t;
        return v;
    };
    auto unpack = [modes, a](const std::vector<double>& v) {
        PeriodicState x;
        x.a = a;
        x.psi1 = PeriodicField(std::vector<double>(v.begin(), v.begin() + static_cast<long>(modes)));
        x.psi2 = PeriodicField(std::vector<double>(v.begin() + static_cast<long>(modes), v.end() - 1));
        x.t = v.back();
        return x;
    };
    std::vector<std::vector<double>> dF, dG;
    std::vector<double> f_old, g_old;

    double prev = -1.0;
    int bad_streak = 0;
    for (int it = 1; it <= cfg_.max_iter; ++it) {
        PeriodicState next;
        next.a = a;
        next.psi1 = Psi1(s);
        next.psi2 = Psi2(s);
        next.t = Psi3(s);
        next.psi1.coeffs.resize(modes, 0.0);
        next.psi2.coeffs.resize(modes, 0.0);
        const double d = diff(next, s);
        if (cfg_.anderson_depth > 0) {
            const std::vector<double> x = pack(s), g = pack(next);
            std::vector<double> f(g.size());
            for (std::size_t i = 0; i < f.size(); ++i) f[i] = g[i] - x[i];
            if (!f_old.empty()) {
                std::vector<double> df(f.size()), dg(g.size());
                for (std::size_t i = 0; i < f.size(); ++i) {
                    df[i] = f[i] - f_old[i];
                    dg[i] = g[i] - g_old[i];
                }
                dF.push_back(std::move(df));
                dG.push_back(std::move(dg));
                if (static_cast<int>(dF.size()) > cfg_.anderson_depth) {
                    dF.erase(dF.begin());
                    dG.erase(dG.begin());
                }
            }
            f_old = f;
            g_old = g;
            const std::vector<double> gamma = least_squares(dF, f);
            std::vector<double> xn = g;
            for (std::size_t k = 0; k < gamma.size(); ++k)
                for (std::size_t i = 0; i < xn.size(); ++i) xn[i] -= gamma[k] * dG[k][i];
            next = unpack(xn);
        }
        s = std::move(next);
        w.iterations = it;
        if (prev > 0.0 && prev > 1e-13) {
            const double ratio = d / prev;
            w.ratios.push_back(ratio);
            w.max_ratio = std::max(w.max_ratio, ratio);
            bad_streak = ratio >= 1.0 ? bad_streak + 1 : 0;
            if (bad_streak >= 5) throw NoConvergence("periodic iteration is not contracting");
        }
        prev = d;
        if (d <= cfg_.tol) {
            w.converged = true;
            break;
        }
    }
    if (!w.converged) throw NoConvergence("periodic iteration hit max_iter");

    w.t = s.t;
    w.omega = res_.omega + s.t;
    w.psi1 = s.psi1;
    w.psi2 = s.psi2;
    w.residual = residual(s);
    return w;
}

PeriodicWave PeriodicSolver::solve(double a) const {
    if (!(std::abs(a) <= cfg_.a_max)) throw InvalidParams("|a| exceeds a_max");
    std::size_t modes = std::max<std::size_t>(cfg_.modes, 8);
    for (;;) {
        PeriodicWave w = solve_with_modes(a, modes);
        double tail = 0.0;
        for (std::size_t j = modes - 4; j < modes; ++j)
            tail = std::max({tail, std::abs(w.psi1.coeffs[j]), std::abs(w.psi2.coeffs[j])});
        if (tail < cfg_.tail_tol || modes * 2 > cfg_.max_modes) return w;
        modes *= 2;
    }
}

PeriodicWave solve_periodic(const SymbolSet& symbols, double eps, double a, const PeriodicConfig& cfg) {
    return PeriodicSolver(symbols, eps, cfg).solve(a);
}

} // namespace nanopteron
