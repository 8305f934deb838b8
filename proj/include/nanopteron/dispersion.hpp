#pragma once

#include "nanopteron/model.hpp"

namespace nanopteron {

struct Vec2 {
    double x = 0.0, y = 0.0;
};

/// Row-major 2x2 matrix.
struct Mat2 {
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

    Vec2 operator*(const Vec2& v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
    Mat2 operator*(const Mat2& m) const {
        return {a11 * m.a11 + a12 * m.a21, a11 * m.a12 + a12 * m.a22,
                a21 * m.a11 + a22 * m.a21, a21 * m.a12 + a22 * m.a22};
    }
    double det() const { return a11 * a22 - a12 * a21; }
};

struct PmPair {
    double minus = 0.0;
    double plus = 0.0;
};

struct VarpiValues {
    double varpi_c;   ///< varpi_{c_eps}(k)
    double varpi_eps; ///< eps^2 varpi_{c_eps}(eps k)
    double varpi_zero;
};

/// Resonance data at a given eps. c^2 = c_kappa^2 + eps^2.
struct Resonance {
    double eps = 0.0;
    double c_sq = 0.0;
    double c = 0.0;
    double Omega = 0.0;    ///< positive root of c^2 k^2 - lambda_+(k)
    double omega = 0.0;    ///< Omega / eps
    double upsilon = 0.0;  ///< xi'_{c}(Omega)
    double xi_second = 0.0;
    double bracket_lo = 0.0, bracket_hi = 0.0;
};

class SymbolSet {
public:
    explicit SymbolSet(DimerParams params, double singular_tol = 1e-6);

    const DimerParams& params() const { return params_; }
    double singular_tol() const { return delta_; }

    double rho(double k) const;
    PmPair lambda_pm(double k) const;
    PmPair lambda_pm_prime(double k) const;
    PmPair lambda_pm_second(double k) const;

    PmPair eigvec_v_pm(double k) const;
    /// Quotient and near-singular branches, exposed for seam tests.
    PmPair eigvec_quotient(double k) const;
    PmPair eigvec_regular(double k) const;

    Mat2 J(double k) const;
    Mat2 J1(double k) const;
    Mat2 L_kappa(double k) const;
    Mat2 Lambda(double k) const;

    double xi(double c_sq, double k) const;
    double xi_prime(double c_sq, double k) const;
    double xi_second(double c_sq, double k) const;

    double varpi_c(double c_sq, double k) const;
    double varpi_eps(double eps, double k) const;
    double varpi_zero(double k) const;
    VarpiValues varpi_symbols(double eps, double k) const;

    Resonance find_resonance(double eps) const;

private:
    DimerParams params_;
    double delta_;
};

} // namespace nanopteron
