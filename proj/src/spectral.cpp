#include "nanopteron/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include "fft.hpp"
#include "nanopteron/error.hpp"

namespace nanopteron {

using detail::cplx;
using detail::RealFft;

LineGrid::LineGrid(double half_length, std::size_t n) : L_(half_length), n_(n) {
    if (!(half_length >= 10.0)) throw InvalidParams("grid half-length L must be at least 10");
    if (n < 64 || (n & (n - 1)) != 0) throw InvalidParams("grid size n must be a power of two >= 64");
}

std::vector<double> LineGrid::nodes() const {
    std::vector<double> x(n_);
    for (std::size_t m = 0; m < n_; ++m) x[m] = node(m);
    return x;
}

LineField::LineField(const LineGrid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != g.size()) throw InvalidParams("LineField size does not match grid");
}

LineField LineField::from_function(const LineGrid& g, const std::function<double(double)>& f) {
    LineField out(g);
    for (std::size_t m = 0; m < g.size(); ++m) out.values[m] = f(g.node(m));
    return out;
}

double LineField::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double LineField::symmetry_defect() const {
    double d = 0.0;
    for (std::size_t m = 0; m < values.size(); ++m) d = std::max(d, std::abs(values[m] - values[grid.mirror(m)]));
    return d;
}

double LineField::boundary_ratio() const {
    const double m = max_abs();
    return m == 0.0 ? 0.0 : std::abs(values.front()) / m;
}

LineField& LineField::operator+=(const LineField& o) {
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
}

LineField& LineField::operator-=(const LineField& o) {
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
}

LineField& LineField::operator*=(double s) {
    for (double& v : values) v *= s;
    return *this;
}

void LineField::axpy(double a, const LineField& x) {
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += a * x.values[i];
}

LineField operator+(LineField a, const LineField& b) { return a += b; }
LineField operator-(LineField a, const LineField& b) { return a -= b; }
LineField operator*(double s, LineField a) { return a *= s; }

LineField hadamard(const LineField& a, const LineField& b) {
    LineField out(a.grid);
    for (std::size_t i = 0; i < a.size(); ++i) out.values[i] = a.values[i] * b.values[i];
    return out;
}

double PeriodicField::operator()(double Y) const {
    double s = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) s += coeffs[j] * std::cos(static_cast<double>(j) * Y);
    return s;
}

double PeriodicField::derivative(double Y) const {
    double s = 0.0;
    for (std::size_t j = 1; j < coeffs.size(); ++j) {
        const double jd = static_cast<double>(j);
        s -= coeffs[j] * jd * std::sin(jd * Y);
    }
    return s;
}

double PeriodicField::max_abs_coeff() const {
    double m = 0.0;
    for (double c : coeffs) m = std::max(m, std::abs(c));
    return m;
}

Multiplier Multiplier::identity() {
    return {[](double) { return 1.0; }, 1.0};
}

Spectrum forward(const LineField& f) {
    Spectrum s(f.grid.modes());
    RealFft::get(f.grid.size()).forward(f.values.data(), s.data());
    return s;
}

LineField inverse(const LineGrid& g, const Spectrum& s) {
    LineField out(g);
    RealFft::get(g.size()).backward(s.data(), out.values.data());
    const double inv = 1.0 / static_cast<double>(g.size());
    for (double& v : out.values) v *= inv;
    return out;
}

LineField apply_line(const Multiplier& mu, const LineField& f) {
    Spectrum s = forward(f);
    for (std::size_t m = 0; m < s.size(); ++m) s[m] *= mu.at(f.grid.wavenumber(m));
    return inverse(f.grid, s);
}

PeriodicField apply_periodic(const Multiplier& mu, const PeriodicField& f, double omega) {
    PeriodicField out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) out.coeffs[j] = f.coeffs[j] * mu.at(omega * static_cast<double>(j));
    return out;
}

std::pair<LineField, PeriodicField> superpose_apply(const Multiplier& mu, const LineField& f,
                                                    const PeriodicField& g, double omega) {
    return {apply_line(mu, f), apply_periodic(mu, g, omega)};
}

LineField derivative(const LineField& f, int order) {
    Spectrum s = forward(f);
    const std::size_t nyq = f.grid.size() / 2;
    for (std::size_t m = 0; m < s.size(); ++m) {
        const cplx ik(0.0, f.grid.wavenumber(m));
        cplx factor(1.0, 0.0);
        for (int r = 0; r < order; ++r) factor *= ik;
        s[m] *= factor;
    }
    if (order % 2 == 1) s[nyq] = 0.0;
    return inverse(f.grid, s);
}

SpectralInterpolant::SpectralInterpolant(const LineField& f) : grid_(f.grid), spec_(forward(f)) {}

double SpectralInterpolant::eval(double X, int order) const {
    const std::size_t n = grid_.size();
    const std::size_t nyq = n / 2;
    const double theta = grid_.dk() * (X + grid_.half_length());
    const cplx step(std::cos(theta), std::sin(theta));
    cplx phase = step;
    double acc = order == 0 ? spec_[0].real() : 0.0;
    for (std::size_t m = 1; m < nyq; ++m) {
        const double k = grid_.wavenumber(m);
        cplx factor(1.0, 0.0);
        for (int r = 0; r < order; ++r) factor *= cplx(0.0, k);
        acc += 2.0 * (spec_[m] * factor * phase).real();
        phase *= step;
        if (m % 64 == 0) {
            const double th = theta * static_cast<double>(m + 1);
            phase = cplx(std::cos(th), std::sin(th));
        }
    }
    if (order % 2 == 0) {
        const double k = grid_.wavenumber(nyq);
        const double sign = (order / 2) % 2 == 0 ? 1.0 : -1.0;
        acc += sign * std::pow(k, order) * spec_[nyq].real() * std::cos(k * (X + grid_.half_length()));
    }
    return acc / static_cast<double>(n);
}

std::vector<double> upsample(const LineField& f, std::size_t m) {
    const std::size_t n = f.grid.size();
    Spectrum s = forward(f);
    Spectrum big(m / 2 + 1, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n / 2; ++i) big[i] = s[i];
    std::vector<double> out(m);
    RealFft::get(m).backward(big.data(), out.data());
    const double inv = 1.0 / static_cast<double>(n);
    for (double& v : out) v *= inv;
    return out;
}

LineField downsample(const std::vector<double>& fine, const LineGrid& g) {
    const std::size_t m = fine.size();
    const std::size_t n = g.size();
    Spectrum big(m / 2 + 1);
    RealFft::get(m).forward(fine.data(), big.data());
    Spectrum s(n / 2 + 1, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n / 2; ++i) s[i] = big[i];
    LineField out(g);
    RealFft::get(n).backward(s.data(), out.values.data());
    const double inv = 1.0 / static_cast<double>(m);
    for (double& v : out.values) v *= inv;
    return out;
}

double l2_norm(const LineField& f) {
    double s = 0.0;
    for (double v : f.values) s += v * v;
    return std::sqrt(s * f.grid.spacing());
}

double sup_norm(const LineField& f) { return f.max_abs(); }

namespace {

double log_cosh(double x) {
    const double a = std::abs(x);
    return a + std::log1p(std::exp(-2.0 * a)) - M_LN2;
}

LineField weight(const LineGrid& g, double q, bool power) {
    return LineField::from_function(g, [&](double x) {
        return power ? std::exp(q * log_cosh(x)) : std::cosh(q * x);
    });
}

} // namespace

double weighted_norm(const LineField& f, double q, int r, NormVariant v) {
    const bool power = v == NormVariant::CoshPowSobolev || v == NormVariant::CoshPowEndpoints;
    const LineField w = weight(f.grid, q, power);
    if (v == NormVariant::CoshSobolev || v == NormVariant::CoshPowSobolev) {
        const LineField g = hadamard(w, f);
        double s = l2_norm(g);
        s *= s;
        for (int j = 1; j <= r; ++j) {
            const double d = l2_norm(derivative(g, j));
            s += d * d;
        }
        return std::sqrt(s);
    }
    const LineField dr = r == 0 ? f : derivative(f, r);
    return l2_norm(hadamard(w, f)) + l2_norm(hadamard(w, dr));
}

LineField conjugated_multiplier(const Multiplier& mu, double q, const LineField& f) {
    LineField g(f.grid);
    for (std::size_t m = 0; m < f.size(); ++m) g.values[m] = f.values[m] / std::cosh(q * f.grid.node(m));
    LineField h = apply_line(mu, g);
    for (std::size_t m = 0; m < f.size(); ++m) h.values[m] *= std::cosh(q * f.grid.node(m));
    return h;
}

namespace {

std::vector<double> cos_table(std::size_t P) {
    std::vector<double> t(2 * P);
    for (std::size_t i = 0; i < 2 * P; ++i) t[i] = std::cos(M_PI * static_cast<double>(i) / static_cast<double>(P));
    return t;
}

} // namespace

std::vector<double> cosine_samples(const PeriodicField& f, std::size_t P) {
    const auto t = cos_table(P);
    std::vector<double> out(P + 1, 0.0);
    for (std::size_t i = 0; i <= P; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < f.size(); ++j) s += f.coeffs[j] * t[(i * j) % (2 * P)];
        out[i] = s;
    }
    return out;
}

PeriodicField cosine_coefficients(const std::vector<double>& samples, std::size_t modes) {
    const std::size_t P = samples.size() - 1;
    const auto t = cos_table(P);
    PeriodicField out(modes);
    for (std::size_t j = 0; j < modes && j < P; ++j) {
        double s = 0.5 * (samples[0] + ((j % 2 == 0) ? samples[P] : -samples[P]));
        for (std::size_t i = 1; i < P; ++i) s += samples[i] * t[(i * j) % (2 * P)];
        out.coeffs[j] = (j == 0 ? 1.0 : 2.0) * s / static_cast<double>(P);
    }
    return out;
}

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};

std::unique_ptr<std::FILE, FileCloser> open_out(const std::string& path) {
    std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "w"));
    if (!f) throw Error("cannot write " + path);
    return f;
}

} // namespace

void write_line_csv(const std::string& path, const LineField& f, const std::string& column) {
    write_line_csv(path, {{column, &f}});
}

void write_line_csv(const std::string& path, const std::vector<std::pair<std::string, const LineField*>>& columns) {
    auto f = open_out(path);
    std::fprintf(f.get(), "# schema nanopteron.csv/1\nX");
    for (const auto& c : columns) std::fprintf(f.get(), ",%s", c.first.c_str());
    std::fprintf(f.get(), "\n");
    const LineGrid& g = columns.front().second->grid;
    for (std::size_t m = 0; m < g.size(); ++m) {
        std::fprintf(f.get(), "%.17g", g.node(m));
        for (const auto& c : columns) std::fprintf(f.get(), ",%.17g", c.second->values[m]);
        std::fprintf(f.get(), "\n");
    }
}

void write_periodic_csv(const std::string& path, const PeriodicField& p, const std::string& column) {
    write_periodic_csv(path, {{column, &p}});
}

void write_periodic_csv(const std::string& path,
                        const std::vector<std::pair<std::string, const PeriodicField*>>& columns) {
    auto f = open_out(path);
    std::fprintf(f.get(), "# schema nanopteron.csv/1\nmode");
    std::size_t modes = 0;
    for (const auto& c : columns) {
        std::fprintf(f.get(), ",%s", c.first.c_str());
        modes = std::max(modes, c.second->size());
    }
    std::fprintf(f.get(), "\n");
    for (std::size_t j = 0; j < modes; ++j) {
        std::fprintf(f.get(), "%zu", j);
        for (const auto& c : columns) std::fprintf(f.get(), ",%.17g", c.second->coeff(j));
        std::fprintf(f.get(), "\n");
    }
}

} // namespace nanopteron
