#pragma once

#include <array>
#include <functional>
#include <vector>

#include "nanopteron/dispersion.hpp"
#include "nanopteron/spectral.hpp"

namespace nanopteron {

/// Two-component profile: decaying line parts plus cosine series at frequency omega,
///   v_i(X) = line_i(X) + sum_j per_i[j] cos(j omega X).
/// An empty LineField or PeriodicField stands for zero.
struct VectorField {
    LineGrid grid;
    double omega = 0.0;
    std::array<LineField, 2> line;
    std::array<PeriodicField, 2> per;

    static VectorField from_line(LineField a, LineField b);
    static VectorField from_periodic(PeriodicField a, PeriodicField b, double omega);

    bool has_line() const { return !line[0].values.empty() || !line[1].values.empty(); }
    bool has_periodic() const { return !per[0].empty() || !per[1].empty(); }

    /// Line part of component i materialized on the grid (zeros when absent).
    LineField line_or_zero(int i) const;

    VectorField& operator+=(const VectorField& o);
    VectorField& operator*=(double s);

    /// Value of component i at X, both parts included.
    double eval(int i, double X) const;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

using MatrixSymbol = std::function<Mat2(double)>;

/// Applies a 2x2 symbol evaluated at scale*k to both representations.
VectorField apply_matrix(const MatrixSymbol& S, const VectorField& v, double scale);
VectorField apply_diag(const Multiplier& m0, const Multiplier& m1, const VectorField& v);

struct PointwiseOptions {
    double pad_factor = 1.5;  ///< line products evaluated on pad_factor*n points
    std::size_t periodic_oversample = 4;
};

using PointwiseFn = std::function<double(const double*)>;

/// Pointwise F_i(args_i) on superpositions. Periodic part: F of the periodic parts, truncated
/// to the largest input mode count.
/// Line part: F(full) - F(periodic parts), which decays when the line parts do.
/// F must vanish at zero. Arguments with periodic content must share omega.
VectorField pointwise(const std::array<PointwiseFn, 2>& F, const std::vector<const VectorField*>& args,
                      const PointwiseOptions& opt = {});

enum class QScaling { InvKappa, BetaOverKappa };

/// Long-wave operators at fixed eps. eps = 0 gives the KdV-limit operators.
class LongWave {
public:
    LongWave(SymbolSet symbols, double eps, QScaling qs = QScaling::InvKappa, PointwiseOptions opt = {});

    const SymbolSet& symbols() const { return symbols_; }
    const DimerParams& params() const { return symbols_.params(); }
    double eps() const { return eps_; }
    double c_sq() const { return c_sq_; }

    VectorField J(const VectorField& v) const;
    VectorField J1(const VectorField& v) const;

    VectorField calN(const VectorField& h) const;
    VectorField B(const VectorField& a, const VectorField& b) const;
    VectorField Q(const VectorField& a, const VectorField& b, const VectorField& c) const;
    /// B(theta, theta) + Q(theta, theta, theta) in one pass.
    VectorField BQ(const VectorField& theta) const;

    /// theta + D2-weighted nonlinearity: the long-wave traveling-wave map.
    VectorField Theta(const VectorField& theta) const;
    /// Theta given a precomputed BQ(theta).
    VectorField Theta(const VectorField& theta, const VectorField& bq) const;

    Multiplier varpi() const;        ///< symbol eps^2 varpi_{c_eps}(eps K); varpi^0 at eps = 0
    Multiplier lambda_plus() const;  ///< lambda_+(eps K)
    Multiplier T() const;            ///< xi_{c_eps}(eps K)

    double q_scale() const;

private:
    SymbolSet symbols_;
    double eps_;
    double c_sq_;
    QScaling qs_;
    PointwiseOptions opt_;
};

} // namespace nanopteron
