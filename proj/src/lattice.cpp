#include "nanopteron/lattice.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "nanopteron/error.hpp"
#include "nanopteron/kdv.hpp"

namespace nanopteron {

TravelingProfile leading_order_profile(const DimerParams& p, double eps) {
    const Soliton s(p);
    const double kap = p.kappa();
    const double e2 = eps * eps;
    TravelingProfile prof;
    prof.speed = std::sqrt(p.c_kappa_sq() + e2);
    prof.value = [s, kap, e2, eps](int odd, double x) {
        const double v = e2 * s(eps * x);
        return odd ? v / kap : v;
    };
    prof.slope = [s, kap, e2, eps](int odd, double x) {
        const double v = e2 * eps * s.derivative(eps * x);
        return odd ? v / kap : v;
    };
    return prof;
}

TravelingProfile reconstruct_profile(const LongWave& ops, const VectorField& theta) {
    const double eps = ops.eps();
    const double e2 = eps * eps;
    const VectorField jt = ops.J(theta);
    const double L = jt.grid.half_length();

    struct Parts {
        std::unique_ptr<SpectralInterpolant> line[2];
        PeriodicField per[2];
        double omega = 0.0;
    };
    auto parts = std::make_shared<Parts>();
    for (int i = 0; i < 2; ++i) {
        if (!jt.line[i].values.empty()) parts->line[i] = std::make_unique<SpectralInterpolant>(jt.line[i]);
        parts->per[i] = jt.per[i];
    }
    parts->omega = jt.omega;

    // odd sites read component 0, even sites component 1
    auto eval = [parts, L, eps](int odd, double x, int order) {
        const int i = odd ? 0 : 1;
        const double X = eps * x;
        double v = 0.0;
        if (parts->line[i] && std::abs(X) <= L) v += parts->line[i]->eval(X, order);
        const PeriodicField& p = parts->per[i];
        if (!p.empty()) {
            const double Y = parts->omega * X;
            v += order == 0 ? p(Y) : parts->omega * p.derivative(Y);
        }
        return v;
    };

    TravelingProfile prof;
    prof.speed = std::sqrt(ops.c_sq());
    prof.value = [eval, e2](int odd, double x) { return e2 * eval(odd, x, 0); };
    prof.slope = [eval, e2, eps](int odd, double x) { return e2 * eps * eval(odd, x, 1); };
    return prof;
}

Lattice::Lattice(DimerParams params, LatticeConfig cfg) : params_(std::move(params)), cfg_(cfg) {
    if (cfg_.sites < 4 || cfg_.sites % 2 != 0) throw InvalidParams("site count must be even and >= 4");
    const double dt_max = 0.1 / std::sqrt(2.0 + 2.0 * params_.kappa());
    if (!(cfg_.dt > 0.0 && cfg_.dt <= dt_max)) throw InvalidParams("dt must lie in (0, 0.1/sqrt(2+2 kappa)]");
    if (!(cfg_.T >= 0.0)) throw InvalidParams("T must be nonnegative");
}

LatticeState Lattice::reconstruct_initial(const TravelingProfile& prof) const {
    const std::size_t J = cfg_.sites;
    LatticeState s;
    s.r.resize(J);
    s.v.resize(J);
    double mean = 0.0;
    for (std::size_t i = 0; i < J; ++i) {
        const long j = first_site() + static_cast<long>(i);
        const int odd = site_parity(j);
        s.r[i] = prof.value(odd, static_cast<double>(j));
        s.v[i] = -prof.speed * prof.slope(odd, static_cast<double>(j));
        mean += s.v[i];
    }
    mean /= static_cast<double>(J);
    for (double& v : s.v) v -= mean;
    return s;
}

std::vector<double> Lattice::acceleration(const std::vector<double>& r) const {
    const std::size_t J = r.size();
    std::vector<double> F(J), a(J);
    for (std::size_t i = 0; i < J; ++i) {
        const long j = first_site() + static_cast<long>(i);
        F[i] = params_.force(site_parity(j) ? Spring::Odd : Spring::Even, r[i]);
    }
    for (std::size_t i = 0; i < J; ++i) {
        const std::size_t ip = (i + 1) % J, im = (i + J - 1) % J;
        a[i] = F[ip] - 2.0 * F[i] + F[im];
    }
    return a;
}

void Lattice::step(LatticeState& s, double dt) const {
    const std::size_t J = s.r.size();
    std::vector<double> r2(J), v2(J);
    const auto k1v = acceleration(s.r);
    const auto& k1r = s.v;
    for (std::size_t i = 0; i < J; ++i) {
        r2[i] = s.r[i] + 0.5 * dt * k1r[i];
        v2[i] = s.v[i] + 0.5 * dt * k1v[i];
    }
    const auto k2v = acceleration(r2);
    const auto k2r = v2;
    for (std::size_t i = 0; i < J; ++i) {
        r2[i] = s.r[i] + 0.5 * dt * k2r[i];
        v2[i] = s.v[i] + 0.5 * dt * k2v[i];
    }
    const auto k3v = acceleration(r2);
    const auto k3r = v2;
    for (std::size_t i = 0; i < J; ++i) {
        r2[i] = s.r[i] + dt * k3r[i];
        v2[i] = s.v[i] + dt * k3v[i];
    }
    const auto k4v = acceleration(r2);
    const auto& k4r = v2;
    for (std::size_t i = 0; i < J; ++i) {
        s.r[i] += dt / 6.0 * (k1r[i] + 2.0 * k2r[i] + 2.0 * k3r[i] + k4r[i]);
        s.v[i] += dt / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
    }
    s.t += dt;
}

double Lattice::energy(const LatticeState& s) const {
    const std::size_t J = s.r.size();
    // particle velocities: udot_{j+1} - udot_j = rdot_j, mean removed
    std::vector<double> u(J, 0.0);
    double mean = 0.0;
    for (std::size_t i = 1; i < J; ++i) {
        u[i] = u[i - 1] + s.v[i - 1];
        mean += u[i];
    }
    mean /= static_cast<double>(J);
    double kin = 0.0, pot = 0.0;
    for (std::size_t i = 0; i < J; ++i) {
        kin += 0.5 * (u[i] - mean) * (u[i] - mean);
        const long j = first_site() + static_cast<long>(i);
        pot += params_.potential(site_parity(j) ? Spring::Odd : Spring::Even, s.r[i]);
    }
    return kin + pot;
}

LatticeTrajectory Lattice::run(const LatticeState& init) const {
    LatticeTrajectory traj;
    traj.first_site = first_site();
    const long steps = std::max<long>(1, std::lround(cfg_.T / cfg_.dt));
    const double dt = cfg_.T > 0.0 ? cfg_.T / static_cast<double>(steps) : 0.0;
    LatticeState s = init;
    auto snap = [&] {
        traj.times.push_back(s.t);
        traj.r.push_back(s.r);
        traj.v.push_back(s.v);
        traj.energy.push_back(energy(s));
    };
    snap();
    traj.site_max = s.r;
    if (cfg_.T == 0.0) return traj;
    for (long k = 1; k <= steps; ++k) {
        step(s, dt);
        for (std::size_t i = 0; i < s.r.size(); ++i) traj.site_max[i] = std::max(traj.site_max[i], s.r[i]);
        if (k == steps) s.t = cfg_.T;
        if (k == steps || (cfg_.snap_every > 0 && k % static_cast<long>(cfg_.snap_every) == 0)) snap();
    }
    return traj;
}

double shape_error(const LatticeTrajectory& traj, std::size_t idx, const TravelingProfile& prof) {
    return shape_error(traj, idx, prof, std::numeric_limits<double>::infinity());
}

double shape_error(const LatticeTrajectory& traj, std::size_t idx, const TravelingProfile& prof, double half_width) {
    const auto& r = traj.r.at(idx);
    const double t = traj.times.at(idx);
    const double J = static_cast<double>(r.size());
    const double lo = static_cast<double>(traj.first_site);
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const long j = traj.first_site + static_cast<long>(i);
        double x = static_cast<double>(j) - prof.speed * t;
        x = lo + std::fmod(std::fmod(x - lo, J) + J, J);
        const double p = prof.value(site_parity(j), x);
        if (std::abs(x) > half_width) continue;
        err = std::max(err, std::abs(r[i] - p));
        scale = std::max(scale, std::abs(p));
    }
    return scale == 0.0 ? err : err / scale;
}

double sublattice_peak(const std::vector<double>& r, long first_site, int odd) {
    std::vector<double> sub;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (site_parity(first_site + static_cast<long>(i)) == odd) sub.push_back(r[i]);
    const std::size_t m = sub.size();
    std::size_t best = 0;
    for (std::size_t i = 1; i < m; ++i)
        if (sub[i] > sub[best]) best = i;
    // trigonometric interpolant of the periodic sub-lattice sampled near the discrete max
    const double w = 2.0 * M_PI / static_cast<double>(m);
    auto interp = [&](double y) {
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double d = y - static_cast<double>(i);
            const double s = std::sin(0.5 * w * d * static_cast<double>(m));
            const double den = static_cast<double>(m) * std::sin(0.5 * w * d);
            double kern;
            if (std::abs(den) < 1e-14)
                kern = 1.0;
            else
                kern = (m % 2 == 0) ? s / den * std::cos(0.5 * w * d) : s / den;
            acc += sub[i] * kern;
        }
        return acc;
    };
    double a = static_cast<double>(best) - 1.0, b = static_cast<double>(best) + 1.0;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = interp(x1), f2 = interp(x2);
    for (int it = 0; it < 60; ++it) {
        if (f1 > f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = interp(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = interp(x2);
        }
    }
    return std::max(sub[best], interp(0.5 * (a + b)));
}

std::vector<StegotonSnapshot> stegoton_diagnostics(const LatticeTrajectory& traj, double core_width_sites) {
    std::vector<StegotonSnapshot> out;
    for (std::size_t k = 0; k < traj.r.size(); ++k) {
        const auto& r = traj.r[k];
        StegotonSnapshot s{};
        s.t = traj.times[k];
        s.even_peak = sublattice_peak(r, traj.first_site, 0);
        s.odd_peak = sublattice_peak(r, traj.first_site, 1);
        s.ratio = s.even_peak / s.odd_peak;
        std::size_t ip = 0;
        for (std::size_t i = 1; i < r.size(); ++i)
            if (std::abs(r[i]) > std::abs(r[ip])) ip = i;
        const double J = static_cast<double>(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) {
            double d = std::abs(static_cast<double>(i) - static_cast<double>(ip));
            d = std::min(d, J - d);
            if (d > 3.0 * core_width_sites) s.tail = std::max(s.tail, std::abs(r[i]));
        }
        out.push_back(s);
    }
    return out;
}

std::vector<double> passage_ratios(const LatticeTrajectory& traj, long j_lo, long j_hi) {
    std::vector<double> out;
    for (long j = j_lo; j < j_hi; ++j) {
        if (site_parity(j) != 0) continue;
        const long i = j - traj.first_site;
        if (i < 0 || i + 1 >= static_cast<long>(traj.site_max.size())) continue;
        out.push_back(traj.site_max[i] / traj.site_max[i + 1]);
    }
    return out;
}

} // namespace nanopteron
