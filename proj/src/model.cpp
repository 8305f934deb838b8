#include "nanopteron/model.hpp"

#include <cmath>

#include "nanopteron/error.hpp"

namespace nanopteron {

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::antiderivative() const {
    Polynomial p;
    p.coeffs.assign(coeffs.size() + 1, 0.0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) p.coeffs[i + 1] = coeffs[i] / static_cast<double>(i + 1);
    return p;
}

DerivedConstants derived_constants(double kappa) {
    DerivedConstants d{};
    d.c_kappa_sq = 2.0 * kappa / (1.0 + kappa);
    d.c_kappa = std::sqrt(d.c_kappa_sq);
    const double k1 = 1.0 + kappa;
    d.alpha_kappa = d.c_kappa_sq / 3.0 * (1.0 - kappa + kappa * kappa) / (k1 * k1);
    return d;
}

namespace {

void check_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw InvalidParams(std::string(name) + " must be finite");
}

// F(r) = lin r + quad r^2 + r^3 N(r)
Polynomial force_poly(double lin, double quad, const Polynomial& n) {
    Polynomial f;
    f.coeffs.assign(3 + n.coeffs.size(), 0.0);
    f.coeffs[1] = lin;
    f.coeffs[2] = quad;
    for (std::size_t i = 0; i < n.coeffs.size(); ++i) f.coeffs[3 + i] = n.coeffs[i];
    return f;
}

} // namespace

DimerParams DimerParams::make(double kappa, double beta, Polynomial n1, Polynomial n2) {
    check_finite(kappa, "kappa");
    check_finite(beta, "beta");
    for (double c : n1.coeffs) check_finite(c, "n1 coefficient");
    for (double c : n2.coeffs) check_finite(c, "n2 coefficient");
    if (!(kappa > 1.0)) throw InvalidParams("kappa must exceed 1");
    if (beta == 0.0) throw InvalidParams("beta must be nonzero");
    if (beta + kappa * kappa * kappa == 0.0) throw InvalidParams("beta + kappa^3 must be nonzero");

    DimerParams p;
    p.kappa_ = kappa;
    p.beta_ = beta;
    p.n1_ = std::move(n1);
    p.n2_ = std::move(n2);
    p.f1_ = force_poly(kappa, beta, p.n1_);
    p.f2_ = force_poly(1.0, 1.0, p.n2_);
    p.v1_ = p.f1_.antiderivative();
    p.v2_ = p.f2_.antiderivative();
    const auto d = derived_constants(kappa);
    p.c_kappa_ = d.c_kappa;
    p.c_kappa_sq_ = d.c_kappa_sq;
    p.alpha_kappa_ = d.alpha_kappa;
    return p;
}

double DimerParams::kdv_nonlinearity() const {
    return kappa_ / (kappa_ + 1.0) * (beta_ / (kappa_ * kappa_ * kappa_) + 1.0);
}

const Polynomial& DimerParams::force_polynomial(Spring s) const { return s == Spring::Odd ? f1_ : f2_; }

double DimerParams::force(Spring s, double r) const { return force_polynomial(s)(r); }

double DimerParams::potential(Spring s, double r) const { return (s == Spring::Odd ? v1_ : v2_)(r); }

DimerParams nondimensionalize(const PhysicalSprings& phys) {
    if (!(phys.mass > 0.0)) throw InvalidParams("mass must be positive");
    if (!(phys.kappa2 > 0.0)) throw InvalidParams("kappa2 must be positive");
    if (!(phys.kappa1 > phys.kappa2)) throw InvalidParams("kappa1 must exceed kappa2");
    if (phys.beta2 == 0.0) throw InvalidParams("beta2 must be nonzero");
    if (phys.beta1 == 0.0) throw InvalidParams("beta1 must be nonzero");

    const double a1 = phys.kappa2 / phys.beta2;
    auto rescale = [&](const Polynomial& nbar) {
        // (a1^2/kappa2) Nbar(a1 r): coefficient i picks up a1^(i+2)/kappa2
        Polynomial n;
        n.coeffs.resize(nbar.coeffs.size());
        double pw = a1 * a1 / phys.kappa2;
        for (std::size_t i = 0; i < nbar.coeffs.size(); ++i) {
            n.coeffs[i] = nbar.coeffs[i] * pw;
            pw *= a1;
        }
        return n;
    };
    return DimerParams::make(phys.kappa1 / phys.kappa2, phys.beta1 / phys.beta2,
                             rescale(phys.nbar1), rescale(phys.nbar2));
}

DimerParams params_from_config(const KeyValueConfig& cfg) {
    Polynomial n1, n2;
    if (cfg.has("n1_coeffs")) n1.coeffs = cfg.get_list("n1_coeffs");
    if (cfg.has("n2_coeffs")) n2.coeffs = cfg.get_list("n2_coeffs");
    return DimerParams::make(cfg.get_double("kappa"), cfg.get_double("beta"), std::move(n1), std::move(n2));
}

} // namespace nanopteron
