#pragma once

#include <functional>
#include <vector>

#include "nanopteron/nonlinear.hpp"

namespace nanopteron {

/// Sites j = -J/2 .. J/2-1 with periodic wrap. Odd j carry the kappa spring.
struct LatticeConfig {
    std::size_t sites = 512;
    double dt = 1e-2;
    double T = 0.0;
    std::size_t snap_every = 0;  ///< 0 keeps only the first and last states
};

struct LatticeState {
    std::vector<double> r, v;
    double t = 0.0;
};

struct LatticeTrajectory {
    long first_site = 0;
    std::vector<double> times;
    std::vector<std::vector<double>> r;
    std::vector<std::vector<double>> v;
    std::vector<double> energy;
    /// max_t r_j(t) over every step of the run, per site
    std::vector<double> site_max;
};

/// Continuous traveling profile r_j(t) = p_{parity(j)}(j - speed t).
struct TravelingProfile {
    std::function<double(int odd, double x)> value;
    std::function<double(int odd, double x)> slope;
    double speed = 0.0;
};

/// p = (eps^2 sigma(eps x)/kappa, eps^2 sigma(eps x)), speed c_eps.
TravelingProfile leading_order_profile(const DimerParams& p, double eps);

/// p(x) = eps^2 (J^eps theta)(eps x); line parts are taken as zero outside [-L, L].
TravelingProfile reconstruct_profile(const LongWave& ops, const VectorField& theta);

inline int site_parity(long j) { return static_cast<int>(((j % 2) + 2) % 2); }

class Lattice {
public:
    Lattice(DimerParams params, LatticeConfig cfg);

    const LatticeConfig& config() const { return cfg_; }
    long first_site() const { return -static_cast<long>(cfg_.sites / 2); }

    /// r_j(0) = p(j), rdot_j(0) = -speed p'(j), projected to zero mean rate.
    LatticeState reconstruct_initial(const TravelingProfile& prof) const;

    std::vector<double> acceleration(const std::vector<double>& r) const;
    void step(LatticeState& s, double dt) const;
    double energy(const LatticeState& s) const;

    /// Integrates to cfg.T with the step adjusted to land on T exactly.
    LatticeTrajectory run(const LatticeState& init) const;

private:
    DimerParams params_;
    LatticeConfig cfg_;
};

/// Relative max-norm gap between snapshot idx and the profile translated by speed*t.
double shape_error(const LatticeTrajectory& traj, std::size_t idx, const TravelingProfile& prof);
/// Same, restricted to sites within half_width of the translated core.
double shape_error(const LatticeTrajectory& traj, std::size_t idx, const TravelingProfile& prof, double half_width);

struct StegotonSnapshot {
    double t;
    double even_peak;
    double odd_peak;
    double ratio;
    double tail;
};

/// Peak of one parity sub-lattice via trigonometric interpolation.
double sublattice_peak(const std::vector<double>& r, long first_site, int odd);

std::vector<StegotonSnapshot> stegoton_diagnostics(const LatticeTrajectory& traj, double core_width_sites);

/// Even/odd ratios of per-site passage maxima for adjacent pairs (j even, j+1) with j in [j_lo, j_hi].
std::vector<double> passage_ratios(const LatticeTrajectory& traj, long j_lo, long j_hi);

} // namespace nanopteron
