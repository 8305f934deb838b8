#include "nanopteron/nonlinear.hpp"

#include <cmath>
#include <complex>

#include "nanopteron/error.hpp"

namespace nanopteron {

namespace {

void add_line(LineField& dst, const LineField& src, double s) {
    if (src.values.empty()) return;
    if (dst.values.empty()) {
        dst = src;
        dst *= s;
        return;
    }
    dst.axpy(s, src);
}

void add_per(PeriodicField& dst, const PeriodicField& src, double s) {
    if (src.empty()) return;
    if (dst.size() < src.size()) dst.coeffs.resize(src.size(), 0.0);
    for (std::size_t j = 0; j < src.size(); ++j) dst.coeffs[j] += s * src.coeffs[j];
}

double merged_omega(const VectorField& a, const VectorField& b) {
    if (a.has_periodic() && b.has_periodic() && a.omega != b.omega)
        throw Error("cannot combine periodic parts with different frequencies");
    return a.has_periodic() ? a.omega : b.omega;
}

VectorField& accumulate(VectorField& a, const VectorField& b, double s) {
    a.omega = merged_omega(a, b);
    if (a.grid.size() == 0) a.grid = b.grid;
    for (int i = 0; i < 2; ++i) {
        add_line(a.line[i], b.line[i], s);
        add_per(a.per[i], b.per[i], s);
    }
    return a;
}

} // namespace

VectorField VectorField::from_line(LineField a, LineField b) {
    VectorField v;
    v.grid = !a.values.empty() ? a.grid : b.grid;
    v.line = {std::move(a), std::move(b)};
    return v;
}

VectorField VectorField::from_periodic(PeriodicField a, PeriodicField b, double omega) {
    VectorField v;
    v.omega = omega;
    v.per = {std::move(a), std::move(b)};
    return v;
}

LineField VectorField::line_or_zero(int i) const {
    return line[i].values.empty() ? LineField(grid) : line[i];
}

VectorField& VectorField::operator+=(const VectorField& o) { return accumulate(*this, o, 1.0); }

VectorField& VectorField::operator*=(double s) {
    for (int i = 0; i < 2; ++i) {
        line[i] *= s;
        for (double& c : per[i].coeffs) c *= s;
    }
    return *this;
}

double VectorField::eval(int i, double X) const {
    double v = per[i].empty() ? 0.0 : per[i](omega * X);
    if (!line[i].values.empty()) v += SpectralInterpolant(line[i])(X);
    return v;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return accumulate(a, b, -1.0); }
VectorField operator*(double s, VectorField a) { return a *= s; }

VectorField apply_matrix(const MatrixSymbol& S, const VectorField& v, double scale) {
    VectorField out;
    out.grid = v.grid;
    out.omega = v.omega;
    if (v.has_line()) {
        const Spectrum s0 = forward(v.line_or_zero(0));
        const Spectrum s1 = forward(v.line_or_zero(1));
        Spectrum r0(s0.size()), r1(s0.size());
        for (std::size_t m = 0; m < s0.size(); ++m) {
            const Mat2 M = S(scale * v.grid.wavenumber(m));
            r0[m] = M.a11 * s0[m] + M.a12 * s1[m];
            r1[m] = M.a21 * s0[m] + M.a22 * s1[m];
        }
        out.line = {inverse(v.grid, r0), inverse(v.grid, r1)};
    }
    if (v.has_periodic()) {
        const std::size_t M = std::max(v.per[0].size(), v.per[1].size());
        PeriodicField p0(M), p1(M);
        for (std::size_t j = 0; j < M; ++j) {
            const Mat2 S_j = S(scale * v.omega * static_cast<double>(j));
            const double c0 = v.per[0].coeff(j), c1 = v.per[1].coeff(j);
            p0.coeffs[j] = S_j.a11 * c0 + S_j.a12 * c1;
            p1.coeffs[j] = S_j.a21 * c0 + S_j.a22 * c1;
        }
        out.per = {std::move(p0), std::move(p1)};
    }
    return out;
}

VectorField apply_diag(const Multiplier& m0, const Multiplier& m1, const VectorField& v) {
    VectorField out;
    out.grid = v.grid;
    out.omega = v.omega;
    const Multiplier* ms[2] = {&m0, &m1};
    for (int i = 0; i < 2; ++i) {
        if (!v.line[i].values.empty()) out.line[i] = apply_line(*ms[i], v.line[i]);
        if (!v.per[i].empty()) out.per[i] = apply_periodic(*ms[i], v.per[i], v.omega);
    }
    return out;
}

namespace {

// sum_j c_j cos(j theta) at each theta = omega X_m
std::vector<double> periodic_at_nodes(const PeriodicField& p, double omega, const std::vector<double>& X) {
    std::vector<double> out(X.size(), 0.0);
    if (p.empty()) return out;
    for (std::size_t m = 0; m < X.size(); ++m) {
        const double th = omega * X[m];
        const std::complex<double> step(std::cos(th), std::sin(th));
        std::complex<double> z(1.0, 0.0);
        double s = 0.0;
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (j > 0 && j % 16 == 0) {
                const double tj = th * static_cast<double>(j);
                z = {std::cos(tj), std::sin(tj)};
            }
            s += p.coeffs[j] * z.real();
            z *= step;
        }
        out[m] = s;
    }
    return out;
}

} // namespace

VectorField pointwise(const std::array<PointwiseFn, 2>& F, const std::vector<const VectorField*>& args,
                      const PointwiseOptions& opt) {
    VectorField out;
    const std::size_t na = args.size();
    bool seen_periodic = false;
    for (const VectorField* a : args) {
        if (out.grid.size() == 0 && a->grid.size() != 0) out.grid = a->grid;
        if (a->has_periodic()) {
            if (seen_periodic && a->omega != out.omega)
                throw Error("pointwise: periodic parts with different frequencies");
            out.omega = a->omega;
            seen_periodic = true;
        }
    }

    std::vector<double> buf(na);
    for (int i = 0; i < 2; ++i) {
        bool any_per = false, any_line = false;
        std::size_t M = 0;
        for (const VectorField* a : args) {
            if (!a->per[i].empty()) {
                any_per = true;
                M = std::max(M, a->per[i].size());
            }
            if (!a->line[i].values.empty()) {
                any_line = true;
                if (!(a->grid == out.grid)) throw Error("pointwise: line parts on different grids");
            }
        }

        if (any_per) {
            const std::size_t P = std::max<std::size_t>(opt.periodic_oversample * M, 64);
            std::vector<std::vector<double>> samples(na);
            for (std::size_t k = 0; k < na; ++k) samples[k] = cosine_samples(args[k]->per[i], P);
            std::vector<double> res(P + 1);
            for (std::size_t s = 0; s <= P; ++s) {
                for (std::size_t k = 0; k < na; ++k) buf[k] = samples[k][s];
                res[s] = F[i](buf.data());
            }
            out.per[i] = cosine_coefficients(res, M);
        }

        if (any_line) {
            const std::size_t n = out.grid.size();
            std::size_t nf = static_cast<std::size_t>(std::llround(opt.pad_factor * static_cast<double>(n)));
            nf += nf % 2;
            nf = std::max(nf, n);
            std::vector<double> Xf(nf);
            const double L = out.grid.half_length();
            for (std::size_t m = 0; m < nf; ++m) Xf[m] = -L + 2.0 * L * static_cast<double>(m) / static_cast<double>(nf);

            std::vector<std::vector<double>> lines(na), pers(na);
            for (std::size_t k = 0; k < na; ++k) {
                const VectorField& a = *args[k];
                lines[k] = a.line[i].values.empty() ? std::vector<double>(nf, 0.0)
                         : (nf == n ? a.line[i].values : upsample(a.line[i], nf));
                pers[k] = periodic_at_nodes(a.per[i], a.omega, Xf);
            }
            std::vector<double> res(nf);
            std::vector<double> pbuf(na);
            for (std::size_t m = 0; m < nf; ++m) {
                for (std::size_t k = 0; k < na; ++k) {
                    buf[k] = lines[k][m] + pers[k][m];
                    pbuf[k] = pers[k][m];
                }
                res[m] = F[i](buf.data());
                if (any_per) res[m] -= F[i](pbuf.data());
            }
            out.line[i] = nf == n ? LineField(out.grid, std::move(res)) : downsample(res, out.grid);
        }
    }
    return out;
}

LongWave::LongWave(SymbolSet symbols, double eps, QScaling qs, PointwiseOptions opt)
    : symbols_(std::move(symbols)), eps_(eps), qs_(qs), opt_(opt) {
    if (!(eps >= 0.0 && eps < 1.0)) throw InvalidParams("eps must lie in [0, 1)");
    c_sq_ = symbols_.params().c_kappa_sq() + eps * eps;
}

VectorField LongWave::J(const VectorField& v) const {
    return apply_matrix([this](double k) { return symbols_.J(k); }, v, eps_);
}

VectorField LongWave::J1(const VectorField& v) const {
    return apply_matrix([this](double k) { return symbols_.J1(k); }, v, eps_);
}

double LongWave::q_scale() const {
    const double kap = params().kappa();
    return qs_ == QScaling::InvKappa ? 1.0 / kap : params().beta() / kap;
}

VectorField LongWave::calN(const VectorField& h) const {
    const Polynomial& n1 = params().n1();
    const Polynomial& n2 = params().n2();
    return pointwise({[&](const double* x) { return x[0] * n1(x[0]); },
                      [&](const double* x) { return x[0] * n2(x[0]); }},
                     {&h}, opt_);
}

VectorField LongWave::B(const VectorField& a, const VectorField& b) const {
    const VectorField ja = J(a);
    const VectorField jb = J(b);
    const double m = params().beta() / params().kappa();
    return J1(pointwise({[m](const double* x) { return m * x[0] * x[1]; },
                         [](const double* x) { return x[0] * x[1]; }},
                        {&ja, &jb}, opt_));
}

VectorField LongWave::Q(const VectorField& a, const VectorField& b, const VectorField& c) const {
    const VectorField ja = J(a);
    const VectorField jb = J(b);
    const VectorField jc = J(c);
    const double m = q_scale();
    const double e2 = eps_ * eps_;
    const Polynomial& n1 = params().n1();
    const Polynomial& n2 = params().n2();
    return J1(pointwise({[&, m, e2](const double* x) {
                             const double h = e2 * x[2];
                             return m * x[0] * x[1] * h * n1(h);
                         },
                         [&, e2](const double* x) {
                             const double h = e2 * x[2];
                             return x[0] * x[1] * h * n2(h);
                         }},
                        {&ja, &jb, &jc}, opt_));
}

VectorField LongWave::BQ(const VectorField& theta) const {
    const VectorField jt = J(theta);
    const double mb = params().beta() / params().kappa();
    const double mq = q_scale();
    const double e2 = eps_ * eps_;
    const Polynomial& n1 = params().n1();
    const Polynomial& n2 = params().n2();
    return J1(pointwise({[&, mb, mq, e2](const double* x) {
                             const double u2 = x[0] * x[0];
                             const double h = e2 * x[0];
                             return mb * u2 + mq * u2 * h * n1(h);
                         },
                         [&, e2](const double* x) {
                             const double u2 = x[0] * x[0];
                             const double h = e2 * x[0];
                             return u2 + u2 * h * n2(h);
                         }},
                        {&jt}, opt_));
}

Multiplier LongWave::varpi() const {
    const double e = eps_;
    if (e == 0.0) return {[s = symbols_](double k) { return s.varpi_zero(k); }, 1.0};
    return {[s = symbols_, e](double k) { return s.varpi_eps(e, k); }, 1.0};
}

Multiplier LongWave::lambda_plus() const {
    return {[s = symbols_](double k) { return s.lambda_pm(k).plus; }, eps_};
}

Multiplier LongWave::T() const {
    const double c2 = c_sq_;
    return {[s = symbols_, c2](double k) { return s.xi(c2, k); }, eps_};
}

VectorField LongWave::Theta(const VectorField& theta) const { return Theta(theta, BQ(theta)); }

VectorField LongWave::Theta(const VectorField& theta, const VectorField& bq) const {
    const Multiplier one = Multiplier::identity();
    VectorField lin = apply_diag(one, T(), theta);
    const Multiplier lp = lambda_plus();
    const double e2 = eps_ * eps_;
    const Multiplier lp_e2{[lp, e2](double k) { return e2 * lp.symbol(k); }, lp.scale};
    lin += apply_diag(varpi(), lp_e2, bq);
    return lin;
}

} // namespace nanopteron
