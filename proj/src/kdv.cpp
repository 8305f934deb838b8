#include "nanopteron/kdv.hpp"

#include <cmath>

namespace nanopteron {

Soliton::Soliton(const DimerParams& p) {
    amplitude = 1.5 / (p.c_kappa_sq() * p.kdv_nonlinearity());
    width = 2.0 * std::sqrt(p.alpha_kappa());
}

double Soliton::operator()(double X) const {
    const double s = 1.0 / std::cosh(X / width);
    return amplitude * s * s;
}

double Soliton::derivative(double X) const {
    const double s = 1.0 / std::cosh(X / width);
    return -2.0 * amplitude / width * s * s * std::tanh(X / width);
}

LineField Soliton::sample(const LineGrid& g) const {
    return LineField::from_function(g, [this](double x) { return (*this)(x); });
}

LineField Soliton::sample_derivative(const LineGrid& g) const {
    return LineField::from_function(g, [this](double x) { return derivative(x); });
}

LineField kdv_residual(const DimerParams& p, const LineField& f) {
    const double C = p.c_kappa_sq() * p.kdv_nonlinearity();
    LineField r = derivative(f, 2);
    r *= p.alpha_kappa();
    for (std::size_t m = 0; m < f.size(); ++m) r.values[m] += -f.values[m] + C * f.values[m] * f.values[m];
    return r;
}

std::pair<LineField, LineField> leading_profiles(const DimerParams& p, const LineGrid& g) {
    const Soliton s(p);
    LineField even = s.sample(g);
    LineField odd = even;
    odd *= 1.0 / p.kappa();
    return {odd, even};
}

GmwzCoefficients gmwz_coefficients(const DimerParams& p) {
    const double k = p.kappa();
    GmwzCoefficients c{};
    c.dispersion = (1.0 / 6.0) * (1.0 - k + k * k) / ((1.0 + k) * (1.0 + k));
    c.nonlinear = p.kdv_nonlinearity();
    c.reduction_defect = std::abs(p.alpha_kappa() - 2.0 * p.c_kappa_sq() * c.dispersion);
    return c;
}

} // namespace nanopteron
