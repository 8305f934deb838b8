#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace nanopteron {

using Spectrum = std::vector<std::complex<double>>;

/// Nodes X_m = -L + 2Lm/n, wavenumbers k_m = pi m / L for m = 0..n/2.
///
/// DFT convention, fixed repo-wide:
///   fhat_m = sum_j f(X_j) exp(-i k_m (X_j + L)),  f(X_j) = (1/n) sum_m fhat_m exp(i k_m (X_j + L))
/// with the half spectrum m = 0..n/2 standing for its Hermitian extension.
class LineGrid {
public:
    LineGrid() = default;
    LineGrid(double half_length, std::size_t n);

    double half_length() const { return L_; }
    std::size_t size() const { return n_; }
    std::size_t modes() const { return n_ / 2 + 1; }
    double spacing() const { return 2.0 * L_ / static_cast<double>(n_); }
    double dk() const { return M_PI / L_; }
    double node(std::size_t m) const { return -L_ + spacing() * static_cast<double>(m); }
    double wavenumber(std::size_t m) const { return dk() * static_cast<double>(m); }
    std::vector<double> nodes() const;

    /// Index of -X_m.
    std::size_t mirror(std::size_t m) const { return (n_ - m) % n_; }

    bool operator==(const LineGrid& o) const { return L_ == o.L_ && n_ == o.n_; }

private:
    double L_ = 0.0;
    std::size_t n_ = 0;
};

/// Real samples of an even function on a LineGrid.
struct LineField {
    LineGrid grid;
    std::vector<double> values;

    LineField() = default;
    explicit LineField(const LineGrid& g) : grid(g), values(g.size(), 0.0) {}
    LineField(const LineGrid& g, std::vector<double> v);

    static LineField from_function(const LineGrid& g, const std::function<double(double)>& f);

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    double max_abs() const;
    /// max_m |f(X_m) - f(-X_m)|
    double symmetry_defect() const;
    /// |f| at X = -L relative to max |f|.
    double boundary_ratio() const;

    LineField& operator+=(const LineField& o);
    LineField& operator-=(const LineField& o);
    LineField& operator*=(double s);
    void axpy(double a, const LineField& x);
};

LineField operator+(LineField a, const LineField& b);
LineField operator-(LineField a, const LineField& b);
LineField operator*(double s, LineField a);
/// Pointwise product.
LineField hadamard(const LineField& a, const LineField& b);

/// Cosine coefficients: f(Y) = sum_j c_j cos(j Y).
struct PeriodicField {
    std::vector<double> coeffs;

    PeriodicField() = default;
    explicit PeriodicField(std::size_t modes) : coeffs(modes, 0.0) {}
    explicit PeriodicField(std::vector<double> c) : coeffs(std::move(c)) {}

    std::size_t size() const { return coeffs.size(); }
    bool empty() const { return coeffs.empty(); }
    double coeff(std::size_t j) const { return j < coeffs.size() ? coeffs[j] : 0.0; }

    double operator()(double Y) const;
    double derivative(double Y) const;
    double max_abs_coeff() const;
};

/// Real even symbol with scaling: at(k) = symbol(scale * k).
struct Multiplier {
    std::function<double(double)> symbol;
    double scale = 1.0;

    double at(double k) const { return symbol(scale * k); }
    Multiplier scaled(double w) const { return {symbol, scale * w}; }

    static Multiplier identity();
};

Spectrum forward(const LineField& f);
LineField inverse(const LineGrid& g, const Spectrum& s);

LineField apply_line(const Multiplier& mu, const LineField& f);
PeriodicField apply_periodic(const Multiplier& mu, const PeriodicField& f, double omega);
std::pair<LineField, PeriodicField> superpose_apply(const Multiplier& mu, const LineField& f,
                                                    const PeriodicField& g, double omega);

/// Spectral derivative of given order; the Nyquist mode is dropped for odd orders.
LineField derivative(const LineField& f, int order);

/// Trigonometric interpolant of a LineField at arbitrary X.
class SpectralInterpolant {
public:
    explicit SpectralInterpolant(const LineField& f);
    double operator()(double X) const { return eval(X, 0); }
    double derivative(double X) const { return eval(X, 1); }
    double eval(double X, int order) const;

private:
    LineGrid grid_;
    Spectrum spec_;
};

/// Zero-padded resampling onto m >= n points of the same period (Nyquist dropped).
std::vector<double> upsample(const LineField& f, std::size_t m);
/// Truncation of m-point samples back onto grid g (Nyquist dropped).
LineField downsample(const std::vector<double>& fine, const LineGrid& g);

double l2_norm(const LineField& f);
double sup_norm(const LineField& f);

enum class NormVariant {
    CoshSobolev,       ///< || cosh(q.) f ||_{H^r}
    CoshPowSobolev,    ///< || cosh^q(.) f ||_{H^r}
    CoshEndpoints,     ///< ||cosh(q.) f|| + ||cosh(q.) f^(r)||
    CoshPowEndpoints,  ///< ||cosh^q(.) f|| + ||cosh^q(.) f^(r)||
};

double weighted_norm(const LineField& f, double q, int r, NormVariant v);

/// cosh(q.) mu [sech(q.) f]
LineField conjugated_multiplier(const Multiplier& mu, double q, const LineField& f);

/// Samples of a cosine series at Y_i = pi i / P, i = 0..P.
std::vector<double> cosine_samples(const PeriodicField& f, std::size_t P);
/// First `modes` cosine coefficients from samples at Y_i = pi i / P (trapezoid, exact below mode P).
PeriodicField cosine_coefficients(const std::vector<double>& samples, std::size_t modes);

void write_line_csv(const std::string& path, const LineField& f, const std::string& column = "value");
void write_line_csv(const std::string& path, const std::vector<std::pair<std::string, const LineField*>>& columns);
void write_periodic_csv(const std::string& path, const PeriodicField& f, const std::string& column = "coefficient");
void write_periodic_csv(const std::string& path,
                        const std::vector<std::pair<std::string, const PeriodicField*>>& columns);

} // namespace nanopteron
