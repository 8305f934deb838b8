#include <doctest.h>

#include <cmath>

#include "nanopteron/error.hpp"
#include "nanopteron/lattice.hpp"
#include "nanopteron/nanopteron_solver.hpp"

using namespace nanopteron;

namespace {

const DimerParams kRef = DimerParams::make(2.0, 1.0);

LatticeConfig make_cfg(std::size_t sites, double dt, double T, std::size_t snap = 0) {
    LatticeConfig c;
    c.sites = sites;
    c.dt = dt;
    c.T = T;
    c.snap_every = snap;
    return c;
}

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

} // namespace

TEST_CASE("configuration validation") {
    CHECK_THROWS_AS(Lattice(kRef, make_cfg(511, 0.01, 1.0)), InvalidParams);
    CHECK_THROWS_AS(Lattice(kRef, make_cfg(512, 0.05, 1.0)), InvalidParams);
    CHECK_THROWS_AS(Lattice(kRef, make_cfg(512, 0.01, -1.0)), InvalidParams);
}

TEST_CASE("equilibrium stays at rest") {
    Lattice lat(kRef, make_cfg(64, 0.02, 5.0));
    LatticeState s;
    s.r.assign(64, 0.0);
    s.v.assign(64, 0.0);
    const auto traj = lat.run(s);
    CHECK(max_gap(traj.r.back(), s.r) == 0.0);
    CHECK(traj.energy.back() == 0.0);
}

TEST_CASE("disturbances stay inside the light cone") {
    const double T = 10.0;
    Lattice lat(kRef, make_cfg(256, 0.02, T));
    LatticeState s;
    s.r.assign(256, 0.0);
    s.v.assign(256, 0.0);
    s.r[128] = 1e-6;
    const auto traj = lat.run(s);
    const double reach = 2.0 * kRef.c_kappa() * T * 1.5;
    double outside = 0.0;
    for (std::size_t i = 0; i < 256; ++i) {
        const double j = static_cast<double>(traj.first_site + static_cast<long>(i));
        if (std::abs(j) > reach) outside = std::max(outside, std::abs(traj.r.back()[i]));
    }
    CHECK(outside <= 1e-12);
}

TEST_CASE("linear optical mode oscillates at the phonon frequency") {
    const std::size_t J = 512;
    SymbolSet sym(kRef);
    const double k = 2.0 * M_PI * 40.0 / static_cast<double>(J);
    const double w = std::sqrt(sym.lambda_pm(k).plus);
    const double vp = sym.eigvec_v_pm(k).plus;
    Lattice lat(kRef, make_cfg(J, 0.01, 3.0, 50));
    LatticeState s;
    s.r.resize(J);
    s.v.assign(J, 0.0);
    const double amp = 1e-8;
    for (std::size_t i = 0; i < J; ++i) {
        const long j = lat.first_site() + static_cast<long>(i);
        s.r[i] = amp * (site_parity(j) ? 1.0 : vp) * std::cos(k * static_cast<double>(j));
    }
    const auto traj = lat.run(s);
    for (std::size_t n = 0; n < traj.times.size(); ++n) {
        const double c = std::cos(w * traj.times[n]);
        for (std::size_t i = 0; i < J; i += 17) CHECK(std::abs(traj.r[n][i] - c * s.r[i]) <= 1e-6 * amp);
    }
}

TEST_CASE("energy, reversibility and fourth-order accuracy") {
    const TravelingProfile prof = leading_order_profile(kRef, 0.2);
    {
        Lattice lat(kRef, make_cfg(512, 1e-3, 100 * 1e-3, 10));
        const auto traj = lat.run(lat.reconstruct_initial(prof));
        double drift = 0.0;
        for (double e : traj.energy) drift = std::max(drift, std::abs(e - traj.energy[0]) / traj.energy[0]);
        CHECK(drift <= 1e-8);
    }
    {
        Lattice lat(kRef, make_cfg(512, 0.01, 5.0));
        const LatticeState s0 = lat.reconstruct_initial(prof);
        const auto fwd = lat.run(s0);
        LatticeState back;
        back.r = fwd.r.back();
        back.v = fwd.v.back();
        for (double& v : back.v) v = -v;
        const auto bwd = lat.run(back);
        CHECK(max_gap(bwd.r.back(), s0.r) <= 1e-8);
    }
    {
        auto final_r = [&](double dt) {
            Lattice lat(kRef, make_cfg(256, dt, 4.0));
            return lat.run(lat.reconstruct_initial(prof)).r.back();
        };
        const auto ref = final_r(0.0025);
        const double e1 = max_gap(final_r(0.04), ref);
        const double e2 = max_gap(final_r(0.02), ref);
        CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.25));
    }
}

TEST_CASE("leading-order initial data") {
    const double eps = 0.1;
    const TravelingProfile prof = leading_order_profile(kRef, eps);
    CHECK(prof.speed == doctest::Approx(std::sqrt(kRef.c_kappa_sq() + eps * eps)));
    Lattice lat(kRef, make_cfg(512, 0.02, 0.0));
    const LatticeState s = lat.reconstruct_initial(prof);
    const long j0 = lat.first_site();
    double even = 0.0, odd = 0.0;
    for (std::size_t i = 0; i < s.r.size(); ++i) {
        const long j = j0 + static_cast<long>(i);
        if (j > 0 && j < -j0) CHECK(s.r[i] == doctest::Approx(s.r[static_cast<std::size_t>(-j - j0)]).epsilon(1e-14));
        (site_parity(j) ? odd : even) = std::max(site_parity(j) ? odd : even, s.r[i]);
    }
    CHECK(even / odd == doctest::Approx(kRef.kappa()).epsilon(0.02));
    CHECK(prof.value(0, 0.0) == doctest::Approx(eps * eps * 1.5));
    CHECK(prof.value(1, 0.0) == doctest::Approx(eps * eps * 0.75));
    const auto traj = lat.run(s);
    CHECK(shape_error(traj, 0, prof) <= 1e-15);
}

TEST_CASE("stegoton diagnostics on a nanopteron run") {
    const double eps = 0.2;
    NanopteronSolver solver(SymbolSet(kRef), eps);
    const auto sol = solver.solve();
    const TravelingProfile prof = reconstruct_profile(solver.operators().ops(), sol.theta());
    Lattice lat(kRef, make_cfg(512, 0.02, 10.0, 100));
    const auto traj = lat.run(lat.reconstruct_initial(prof));
    const auto snaps = stegoton_diagnostics(traj, 2.0 * std::sqrt(kRef.alpha_kappa()) / eps);
    for (const auto& s : snaps) {
        CHECK(s.ratio > 1.5);
        const double scale = s.tail / (std::abs(sol.state.a) * eps * eps);
        CHECK(scale > 0.1);
        CHECK(scale < 10.0);
    }
    const auto ratios = passage_ratios(traj, 2, 8);
    CHECK(!ratios.empty());
    for (double r : ratios) CHECK(r == doctest::Approx(kRef.kappa()).epsilon(0.02));
}
