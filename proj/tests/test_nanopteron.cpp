#include <doctest.h>

#include <cmath>
#include <random>

#include "nanopteron/error.hpp"
#include "nanopteron/nanopteron_solver.hpp"

using namespace nanopteron;

namespace {

const DimerParams kRef = DimerParams::make(2.0, 1.0);

NanopteronState zero_state(const LineGrid& g) {
    return {LineField(g), LineField(g), 0.0};
}

} // namespace

TEST_CASE("iota functional") {
    SolverOperators ops(SymbolSet(kRef), 0.1, NanopteronConfig{});
    const double w = ops.resonance().omega;
    const double s = 0.2;
    const LineField g = LineField::from_function(ops.grid(), [=](double X) { return std::exp(-X * X / (s * s)); });
    CHECK(ops.iota(g) == doctest::Approx(s * std::sqrt(M_PI) * std::exp(-s * s * w * w / 4.0)).epsilon(1e-8));
    const LineField odd = LineField::from_function(ops.grid(), [](double X) { return std::sin(X) * std::exp(-X * X); });
    CHECK(std::abs(ops.iota(odd)) <= 1e-15);
    CHECK(std::abs(ops.upsilon()) > 1e-6);
    CHECK(ops.chi().symmetry_defect() <= 1e-12);
    CHECK(ops.chi().boundary_ratio() <= 1e-10);
}

TEST_CASE("P inverts T away from the resonance") {
    SolverOperators ops(SymbolSet(kRef), 0.1, NanopteronConfig{});
    const LineField g = LineField::from_function(ops.grid(), [](double X) { return std::exp(-X * X / 8.0); });
    CHECK((ops.P(ops.T(g)) - g).max_abs() <= 1e-9);
}

TEST_CASE("Friesecke-Pego operator") {
    NanopteronConfig cfg;
    cfg.L = 40.0;
    SolverOperators ops(SymbolSet(kRef), 0.1, cfg);
    const LineField ds = Soliton(kRef).sample_derivative(ops.grid());
    CHECK(ops.A(ds).max_abs() / ds.max_abs() <= 1e-6);
    std::mt19937 rng(12);
    std::normal_distribution<double> N(0.0, 1.0);
    for (int i = 0; i < 3; ++i) {
        const double c = N(rng), w = 1.0 + std::abs(N(rng));
        const LineField f = LineField::from_function(ops.grid(), [=](double X) { return c * std::exp(-X * X / (w * w)); });
        CHECK((ops.A_inverse(ops.A(f)) - f).max_abs() <= 1e-10 * std::max(1.0, f.max_abs()));
    }
}

TEST_CASE("term collection at the trivial state") {
    for (double eps : {0.2, 0.1}) {
        NanopteronSolver solver(SymbolSet(kRef), eps);
        const PeriodicWave w = solver.periodic().solve(0.0);
        const TermCollection t = solver.assemble_terms(zero_state(solver.operators().grid()), w);
        CHECK(t.at("j6").max_abs() == 0.0);
        CHECK(t.at("l6").max_abs() == 0.0);
        CHECK(t.at("j21").max_abs() == 0.0);
        CHECK(t.at("j31").max_abs() == 0.0);
        CHECK(t.at("j41").max_abs() == 0.0);
        CHECK(t.at("j51").max_abs() == 0.0);
        CHECK(t.at("j11").max_abs() > 0.0);
    }
    // the leading term vanishes like eps^2 through the KdV identity
    std::vector<double> j11;
    for (double eps : {0.2, 0.1}) {
        NanopteronSolver solver(SymbolSet(kRef), eps);
        const PeriodicWave w = solver.periodic().solve(0.0);
        j11.push_back(solver.assemble_terms(zero_state(solver.operators().grid()), w).at("j11").max_abs());
    }
    CHECK(j11[0] / j11[1] == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("solvability forcing at the trivial state decays fast") {
    std::vector<double> n3;
    const double epss[] = {0.2, 0.1, 0.05};
    for (double eps : epss) {
        NanopteronConfig cfg;
        cfg.n = eps < 0.1 ? 8192 : 4096;
        NanopteronSolver solver(SymbolSet(kRef), eps, cfg);
        const PeriodicWave w = solver.periodic().solve(0.0);
        n3.push_back(std::abs(solver.N_maps(zero_state(solver.operators().grid()), w, FixedPointForm::New).N3));
    }
    const double s1 = std::log(n3[0] / n3[1]) / std::log(2.0);
    const double s2 = std::log(n3[1] / n3[2]) / std::log(2.0);
    CHECK(n3[1] < n3[0]);
    CHECK(n3[2] < n3[1]);
    CHECK(s2 > s1);
}

TEST_CASE("nanopteron solve at eps = 0.1") {
    const auto sol = solve_nanopteron(SymbolSet(kRef), 0.1);
    const auto& d = sol.diag;
    CHECK(d.converged);
    CHECK(d.residual <= 1e-6);
    CHECK(d.symmetry_defect <= 1e-11);
    CHECK(d.consistency <= 1e-9);
    CHECK(d.solvability <= 1e-10);
    CHECK(std::abs(sol.state.a) <= 1e-2);
    CHECK(d.eta_l2 / 0.1 < 1.0);
    CHECK(std::isfinite(d.eta_weighted));
    CHECK(sol.wave.a == doctest::Approx(sol.state.a).epsilon(1e-6));
}

TEST_CASE("the two fixed-point forms agree") {
    NanopteronConfig a, b;
    b.form = FixedPointForm::Original;
    const auto x = solve_nanopteron(SymbolSet(kRef), 0.2, a);
    const auto y = solve_nanopteron(SymbolSet(kRef), 0.2, b);
    CHECK((x.state.eta1 - y.state.eta1).max_abs() <= 1e-8);
    CHECK((x.state.eta2 - y.state.eta2).max_abs() <= 1e-8);
    CHECK(std::abs(x.state.a - y.state.a) <= 1e-8);
}

TEST_CASE("configuration checks") {
    NanopteronConfig coarse;
    coarse.n = 1024;
    CHECK_THROWS_AS(NanopteronSolver(SymbolSet(kRef), 0.1, coarse), InvalidParams);
    NanopteronConfig few;
    few.max_iter = 2;
    CHECK_THROWS_AS(solve_nanopteron(SymbolSet(kRef), 0.2, few), NoConvergence);
}
