#pragma once

#include <vector>

#include "nanopteron/nonlinear.hpp"

namespace nanopteron {

struct PeriodicConfig {
    double tol = 1e-12;
    int max_iter = 200;
    std::size_t modes = 32;
    std::size_t max_modes = 512;
    double tail_tol = 1e-14;
    double a_max = 1e-2;
    QScaling q_scaling = QScaling::InvKappa;
    double near_singular = 1e-8;
    double r_series_switch = 1e-3;
    int anderson_depth = 0;  ///< 0 is plain Picard
};

/// Iterate (psi1, psi2, t) at fixed amplitude a. psi2 has no mode 1, which is carried by nu.
struct PeriodicState {
    PeriodicField psi1, psi2;
    double t = 0.0;
    double a = 0.0;
};

/// a phi(omega X) with phi = nu + psi, nu = cos(.) in the second component.
struct PeriodicWave {
    double eps = 0.0;
    double a = 0.0;
    double omega = 0.0;       ///< omega_eps + t
    double omega_eps = 0.0;
    double t = 0.0;
    PeriodicField psi1, psi2;

    int iterations = 0;
    bool converged = false;
    double residual = 0.0;
    double max_ratio = 0.0;
    std::vector<double> ratios;

    /// nu + psi as a periodic VectorField at frequency omega.
    VectorField phi() const;
    /// a (nu + psi).
    VectorField theta() const;
    double phi_value(int component, double X) const;
};

class PeriodicSolver {
public:
    PeriodicSolver(const SymbolSet& symbols, double eps, PeriodicConfig cfg = {});

    const Resonance& resonance() const { return res_; }
    const LongWave& ops() const { return ops_; }

    PeriodicField Psi1(const PeriodicState& s) const;
    PeriodicField Psi2(const PeriodicState& s) const;
    double Psi3(const PeriodicState& s) const;

    /// (xi(eps omega_eps + s) - Upsilon s) / s^2
    double R(double s) const;

    /// Componentwise max of D1 phi + a D2 (B(phi,phi) + Q(phi,phi,a phi)).
    double residual(const PeriodicState& s) const;

    PeriodicWave solve(double a) const;

private:
    struct Nonlinear {
        PeriodicField n1, n2;  ///< B + E components
    };
    Nonlinear nonlinear_terms(const PeriodicState& s) const;
    VectorField phi_field(const PeriodicState& s) const;
    PeriodicWave solve_with_modes(double a, std::size_t modes) const;

    SymbolSet symbols_;
    double eps_;
    PeriodicConfig cfg_;
    Resonance res_;
    LongWave ops_;
    double xi3_ = 0.0, xi4_ = 0.0;
};

PeriodicWave solve_periodic(const SymbolSet& symbols, double eps, double a, const PeriodicConfig& cfg = {});

} // namespace nanopteron
