#pragma once

#include <map>
#include <string>
#include <vector>

#include "nanopteron/kdv.hpp"
#include "nanopteron/periodic_solver.hpp"

namespace nanopteron {

enum class FixedPointForm {
    New,       ///< eta1 = A^{-1} R1 - A^{-1} K2 N2
    Original,  ///< eta1 = A^{-1} R1 - A^{-1} K2 eta2
};

struct NanopteronConfig {
    double L = 60.0;
    std::size_t n = 4096;
    double tol = 1e-10;
    int max_iter = 200;
    double a_max = 1e-2;
    double band_width = 0.0;  ///< P_eps zeroes |k -+ omega_eps| < band_width * dk
    double symbol_floor = 1e-8;
    double gmres_tol = 1e-12;
    int gmres_max_iter = 400;
    double resolve_fraction = 0.1;
    bool check_resolution = true;
    FixedPointForm form = FixedPointForm::New;
    QScaling q_scaling = QScaling::InvKappa;
    PeriodicConfig periodic;
};

struct NanopteronState {
    LineField eta1, eta2;
    double a = 0.0;
};

/// Line-grid operators at fixed eps.
class SolverOperators {
public:
    SolverOperators(const SymbolSet& symbols, double eps, const NanopteronConfig& cfg);

    const LineGrid& grid() const { return grid_; }
    const LongWave& ops() const { return ops_; }
    const Resonance& resonance() const { return res_; }
    double eps() const { return eps_; }
    const LineField& sigma() const { return sigma_; }
    const LineField& chi() const { return chi_; }
    double upsilon() const { return upsilon_; }
    double band_width() const { return band_width_; }

    /// trapezoid of g cos(omega_eps X) over [-L, L]
    double iota(const LineField& g) const;

    LineField K1(const LineField& f) const;
    LineField K2(const LineField& f) const;
    LineField A(const LineField& f) const;
    LineField A_inverse(const LineField& y) const;
    LineField T(const LineField& f) const;
    LineField P(const LineField& g) const;

    /// (sigma, 0) as a VectorField.
    VectorField sigma_vec() const;

private:
    LineGrid grid_;
    double eps_;
    LongWave ops_;
    Resonance res_;
    LongWave ops0_;
    LineField sigma_;
    LineField cos_omega_;
    LineField chi_;
    double upsilon_ = 0.0;
    double band_width_ = 0.0;
    double symbol_floor_ = 1e-8;
    double gmres_tol_;
    int gmres_max_iter_;
};

/// Labeled term fields: "j11".."j52", "j6", "l11".."l52", "l6", plus "j21_mod", "l31_mod".
using TermCollection = std::map<std::string, LineField>;

struct NanopteronDiagnostics {
    int iterations = 0;
    bool converged = false;
    std::vector<double> step_sizes;
    double residual = 0.0;           ///< ||Theta(theta)||_inf / ||sigma||_inf, line and periodic parts
    double line_residual = 0.0;
    double periodic_residual = 0.0;
    double upsilon = 0.0;
    double Upsilon = 0.0;
    double omega_eps = 0.0;
    double eta_l2 = 0.0;
    double eta_weighted = 0.0;
    double weight_q = 0.0;
    double symmetry_defect = 0.0;
    double solvability = 0.0;
    double consistency = 0.0;        ///< state change under one more map application
    int wave_solves = 0;
    double seconds = 0.0;
};

struct NanopteronSolution {
    double eps = 0.0;
    NanopteronState state;
    PeriodicWave wave;
    NanopteronDiagnostics diag;
    LineField sigma;

    /// theta = (sigma, 0) + a phi + eta
    VectorField theta() const;
};

class NanopteronSolver {
public:
    NanopteronSolver(const SymbolSet& symbols, double eps, NanopteronConfig cfg = {});

    const SolverOperators& operators() const { return ops_; }
    const PeriodicSolver& periodic() const { return periodic_; }
    const NanopteronConfig& config() const { return cfg_; }

    /// sigma + a phi + eta
    VectorField ansatz(const NanopteronState& s, const PeriodicWave& w) const;

    TermCollection assemble_terms(const NanopteronState& s, const PeriodicWave& w) const;

    struct Maps {
        LineField N1, N2;
        double N3 = 0.0;
    };
    Maps N_maps(const NanopteronState& s, const PeriodicWave& w, FixedPointForm form) const;

    /// ||Theta(ansatz)|| split into line and periodic parts, relative to ||sigma||_inf.
    std::pair<double, double> residual(const NanopteronState& s, const PeriodicWave& w) const;

    NanopteronSolution solve() const;

private:
    SymbolSet symbols_;
    double eps_;
    NanopteronConfig cfg_;
    SolverOperators ops_;
    PeriodicSolver periodic_;
};

NanopteronSolution solve_nanopteron(const SymbolSet& symbols, double eps, const NanopteronConfig& cfg = {});

} // namespace nanopteron
