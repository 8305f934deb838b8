#include "nanopteron/dispersion.hpp"

#include <cmath>

#include "nanopteron/error.hpp"

namespace nanopteron {

SymbolSet::SymbolSet(DimerParams params, double singular_tol) : params_(std::move(params)), delta_(singular_tol) {
    if (!(delta_ > 0.0 && delta_ < 1e-3)) throw InvalidParams("singular_tol must lie in (0, 1e-3)");
}

double SymbolSet::rho(double k) const {
    const double kap = params_.kappa();
    const double c = std::cos(k);
    return std::sqrt((1.0 - kap) * (1.0 - kap) + 4.0 * kap * c * c);
}

PmPair SymbolSet::lambda_pm(double k) const {
    const double kap = params_.kappa();
    const double r = rho(k);
    const double s = std::sin(k);
    // lambda_- rationalized: 4 kappa sin^2 k / (1 + kappa + rho)
    return {4.0 * kap * s * s / (1.0 + kap + r), 1.0 + kap + r};
}

PmPair SymbolSet::lambda_pm_prime(double k) const {
    const double kap = params_.kappa();
    const double rp = -2.0 * kap * std::sin(2.0 * k) / rho(k);
    return {-rp, rp};
}

PmPair SymbolSet::lambda_pm_second(double k) const {
    const double kap = params_.kappa();
    const double r = rho(k);
    const double g1 = -4.0 * kap * std::sin(2.0 * k);
    const double g2 = -8.0 * kap * std::cos(2.0 * k);
    const double rpp = g2 / (2.0 * r) - g1 * g1 / (4.0 * r * r * r);
    return {-rpp, rpp};
}

PmPair SymbolSet::eigvec_quotient(double k) const {
    const double kap = params_.kappa();
    const auto lam = lambda_pm(k);
    const double c = std::cos(k);
    return {(2.0 - lam.minus) / (2.0 * kap * c), (2.0 * kap - lam.plus) / (2.0 * c)};
}

PmPair SymbolSet::eigvec_regular(double k) const {
    // numerators rationalized against rho: the factor cos k cancels exactly
    const double kap = params_.kappa();
    const double c = std::cos(k);
    const double d = rho(k) + kap - 1.0;
    return {2.0 * c / d, -2.0 * kap * c / d};
}

PmPair SymbolSet::eigvec_v_pm(double k) const {
    return std::abs(std::cos(k)) < delta_ ? eigvec_regular(k) : eigvec_quotient(k);
}

Mat2 SymbolSet::J(double k) const {
    const auto v = eigvec_v_pm(k);
    return {v.minus, 1.0, 1.0, v.plus};
}

Mat2 SymbolSet::J1(double k) const {
    const Mat2 m = J(k);
    const double d = m.det();
    if (std::abs(d) < 1e-14) throw SingularMatrix("J(k) is singular");
    return {m.a22 / d, -m.a12 / d, -m.a21 / d, m.a11 / d};
}

Mat2 SymbolSet::L_kappa(double k) const {
    const double kap = params_.kappa();
    const double c = std::cos(k);
    return {2.0 * kap, -2.0 * c, -2.0 * kap * c, 2.0};
}

Mat2 SymbolSet::Lambda(double k) const {
    const auto l = lambda_pm(k);
    return {l.minus, 0.0, 0.0, l.plus};
}

double SymbolSet::xi(double c_sq, double k) const { return -c_sq * k * k + lambda_pm(k).plus; }

double SymbolSet::xi_prime(double c_sq, double k) const { return -2.0 * c_sq * k + lambda_pm_prime(k).plus; }

double SymbolSet::xi_second(double c_sq, double k) const { return -2.0 * c_sq + lambda_pm_second(k).plus; }

namespace {

// excess = c^2 - c_kappa^2, passed separately so the series never subtracts nearby numbers
double varpi_impl(const SymbolSet& s, double c_sq, double excess, double k) {
    if (std::abs(k) < s.singular_tol()) {
        const double ck2 = s.params().c_kappa_sq();
        const double a = s.params().alpha_kappa();
        return -(ck2 - a * k * k) / (excess + a * k * k);
    }
    const double lm = s.lambda_pm(k).minus;
    return -lm / (c_sq * k * k - lm);
}

} // namespace

double SymbolSet::varpi_c(double c_sq, double k) const {
    return varpi_impl(*this, c_sq, c_sq - params_.c_kappa_sq(), k);
}

double SymbolSet::varpi_eps(double eps, double k) const {
    const double e2 = eps * eps;
    return e2 * varpi_impl(*this, params_.c_kappa_sq() + e2, e2, eps * k);
}

double SymbolSet::varpi_zero(double k) const {
    return -params_.c_kappa_sq() / (1.0 + params_.alpha_kappa() * k * k);
}

VarpiValues SymbolSet::varpi_symbols(double eps, double k) const {
    return {varpi_c(params_.c_kappa_sq() + eps * eps, k), varpi_eps(eps, k), varpi_zero(k)};
}

Resonance SymbolSet::find_resonance(double eps) const {
    if (!(eps > 0.0 && eps < 1.0)) throw RootNotBracketed("eps must lie in (0, 1)");
    const double kap = params_.kappa();
    Resonance r;
    r.eps = eps;
    r.c_sq = params_.c_kappa_sq() + eps * eps;
    r.c = std::sqrt(r.c_sq);
    r.bracket_lo = std::sqrt(2.0 * kap) / r.c;
    r.bracket_hi = std::sqrt(2.0 + 2.0 * kap) / r.c;
    const double margin = 1e-3;
    double lo = r.bracket_lo - margin;
    double hi = r.bracket_hi + margin;
    auto f = [&](double w) { return r.c_sq * w * w - lambda_pm(w).plus; };
    double flo = f(lo);
    const double fhi = f(hi);
    if (!(flo < 0.0 && fhi > 0.0)) throw RootNotBracketed("resonance root not bracketed");
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    r.Omega = 0.5 * (lo + hi);
    r.omega = r.Omega / eps;
    r.upsilon = xi_prime(r.c_sq, r.Omega);
    r.xi_second = xi_second(r.c_sq, r.Omega);
    if (r.upsilon == 0.0) throw RootNotBracketed("degenerate resonance slope");
    return r;
}

} // namespace nanopteron
