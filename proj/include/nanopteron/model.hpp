#pragma once

#include <vector>

#include "nanopteron/config.hpp"

namespace nanopteron {

/// Dense polynomial, ascending coefficients.
struct Polynomial {
    std::vector<double> coeffs;

    double operator()(double x) const;
    Polynomial antiderivative() const;
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

enum class Spring { Odd, Even };

/// Raw lattice data before scaling.
struct PhysicalSprings {
    double mass = 1.0;
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    Polynomial nbar1;
    Polynomial nbar2;
};

/// Nondimensional spring dimer. The even spring is r + r^2 + r^3 N2(r),
/// the odd spring kappa r + beta r^2 + r^3 N1(r).
class DimerParams {
public:
    static DimerParams make(double kappa, double beta, Polynomial n1 = {}, Polynomial n2 = {});

    double kappa() const { return kappa_; }
    double beta() const { return beta_; }
    const Polynomial& n1() const { return n1_; }
    const Polynomial& n2() const { return n2_; }

    double c_kappa() const { return c_kappa_; }
    double c_kappa_sq() const { return c_kappa_sq_; }
    double alpha_kappa() const { return alpha_kappa_; }

    /// (kappa/(kappa+1)) (beta/kappa^3 + 1)
    double kdv_nonlinearity() const;

    double force(Spring s, double r) const;
    double potential(Spring s, double r) const;
    const Polynomial& force_polynomial(Spring s) const;
    const Polynomial& higher_order(Spring s) const { return s == Spring::Odd ? n1_ : n2_; }

private:
    double kappa_ = 0.0;
    double beta_ = 0.0;
    Polynomial n1_, n2_;
    Polynomial f1_, f2_, v1_, v2_;
    double c_kappa_ = 0.0, c_kappa_sq_ = 0.0, alpha_kappa_ = 0.0;
};

struct DerivedConstants {
    double c_kappa_sq;
    double c_kappa;
    double alpha_kappa;
};

DerivedConstants derived_constants(double kappa);

DimerParams nondimensionalize(const PhysicalSprings& phys);

/// Reads kappa, beta, n1_coeffs, n2_coeffs.
DimerParams params_from_config(const KeyValueConfig& cfg);

} // namespace nanopteron
