#pragma once

#include <utility>

#include "nanopteron/model.hpp"
#include "nanopteron/spectral.hpp"

namespace nanopteron {

/// sigma(X) = A sech^2(X / w)
struct Soliton {
    double amplitude = 0.0;
    double width = 0.0;

    explicit Soliton(const DimerParams& p);

    double operator()(double X) const;
    double derivative(double X) const;
    LineField sample(const LineGrid& g) const;
    LineField sample_derivative(const LineGrid& g) const;
};

/// alpha f'' - f + c^2 (kappa/(kappa+1)) (beta/kappa^3 + 1) f^2
LineField kdv_residual(const DimerParams& p, const LineField& f);

/// (odd-site, even-site) profiles (sigma/kappa, sigma).
std::pair<LineField, LineField> leading_profiles(const DimerParams& p, const LineGrid& g);

struct GmwzCoefficients {
    double dispersion;
    double nonlinear;
    /// |alpha_kappa - 2 c_kappa^2 dispersion|: the traveling reduction defect.
    double reduction_defect;
};

GmwzCoefficients gmwz_coefficients(const DimerParams& p);

} // namespace nanopteron
