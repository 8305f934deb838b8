#include <doctest.h>

#include <cmath>
#include <random>

#include "nanopteron/config.hpp"
#include "nanopteron/error.hpp"
#include "nanopteron/model.hpp"

using namespace nanopteron;

TEST_CASE("nondimensionalize reference dimer") {
    PhysicalSprings s;
    s.mass = 1.0;
    s.kappa1 = 2.0;
    s.kappa2 = 1.0;
    s.beta1 = 1.0;
    s.beta2 = 1.0;
    const DimerParams p = nondimensionalize(s);
    CHECK(p.kappa() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(p.beta() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.n1().coeffs.empty());
    CHECK(p.c_kappa_sq() == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("invalid parameters") {
    PhysicalSprings s;
    s.kappa1 = 1.0;
    s.kappa2 = 1.0;
    s.beta1 = 1.0;
    s.beta2 = 1.0;
    CHECK_THROWS_AS(nondimensionalize(s), InvalidParams);
    CHECK_THROWS_AS(DimerParams::make(2.0, -8.0), InvalidParams);
    CHECK_THROWS_AS(DimerParams::make(0.5, 1.0), InvalidParams);
    CHECK_THROWS_AS(DimerParams::make(2.0, 0.0), InvalidParams);
    CHECK_THROWS_AS(DimerParams::make(NAN, 1.0), InvalidParams);
}

TEST_CASE("forces") {
    const DimerParams p = DimerParams::make(2.0, 1.0, {}, Polynomial{{1.0}});
    CHECK(p.force(Spring::Even, 0.0) == 0.0);
    CHECK(p.force(Spring::Odd, 0.5) == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(p.force(Spring::Even, 0.1) == doctest::Approx(0.1 + 0.01 + 0.001).epsilon(1e-15));
}

TEST_CASE("potential is the antiderivative of the force") {
    const DimerParams p = DimerParams::make(3.0, -0.5, Polynomial{{0.3, -0.2}}, Polynomial{{0.7}});
    for (Spring s : {Spring::Odd, Spring::Even}) {
        CHECK(p.potential(s, 0.0) == 0.0);
        for (double r : {-0.7, -0.1, 0.2, 0.9}) {
            const double h = 1e-5;
            const double fd = (p.potential(s, r + h) - p.potential(s, r - h)) / (2 * h);
            CHECK(fd == doctest::Approx(p.force(s, r)).epsilon(1e-9));
        }
    }
}

TEST_CASE("derived constants") {
    const auto d = derived_constants(2.0);
    CHECK(d.c_kappa == doctest::Approx(1.154700538379252).epsilon(1e-14));
    CHECK(d.alpha_kappa == doctest::Approx(4.0 / 27.0).epsilon(1e-14));
    CHECK(derived_constants(3.0).c_kappa_sq == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(derived_constants(1.0 + 1e-9).c_kappa == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("sound speed and dispersion coefficient ranges") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(1.0001, 50.0);
    for (int i = 0; i < 1000; ++i) {
        const auto d = derived_constants(U(rng));
        CHECK(d.c_kappa_sq > 1.0);
        CHECK(d.c_kappa_sq < 2.0);
        CHECK(d.alpha_kappa > 0.0);
    }
}

TEST_CASE("higher-order remainder is cubic") {
    const DimerParams p = DimerParams::make(2.0, 1.0, {}, Polynomial{{0.4, -1.1, 0.6}});
    double worst = 0.0;
    for (int i = -100; i <= 100; ++i) {
        if (i == 0) continue;
        const double r = i / 100.0;
        worst = std::max(worst, std::abs((p.force(Spring::Even, r) - r - r * r) / (r * r * r)));
    }
    CHECK(worst < 3.0);
}

TEST_CASE("polynomial horner and antiderivative") {
    const Polynomial q{{1.0, -2.0, 3.0}};
    CHECK(q(2.0) == doctest::Approx(9.0));
    const Polynomial Q = q.antiderivative();
    CHECK(Q.degree() == 3);
    CHECK(Q(1.0) == doctest::Approx(1.0 - 1.0 + 1.0));
}

TEST_CASE("key value config") {
    const auto c = KeyValueConfig::parse("# comment\nkappa = 3\nbeta=-1\nn2_coeffs = 0.5, 0.25\n\n");
    CHECK(c.get_double("kappa") == 3.0);
    CHECK(c.get_list("n2_coeffs").size() == 2);
    CHECK(c.get_double("missing", 7.0) == 7.0);
    CHECK_THROWS_AS(c.get_double("missing"), InvalidParams);
    CHECK_THROWS_AS(c.require_known({"kappa", "beta"}), InvalidParams);
    CHECK_THROWS_AS(KeyValueConfig::parse("no equals sign"), InvalidParams);
    CHECK_THROWS_AS(KeyValueConfig::parse("kappa = abc").get_double("kappa"), InvalidParams);
    const DimerParams p = params_from_config(c);
    CHECK(p.kappa() == 3.0);
    CHECK(p.n2().coeffs[1] == 0.25);
}
