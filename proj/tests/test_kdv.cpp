#include <doctest.h>

#include <cmath>

#include "nanopteron/kdv.hpp"

using namespace nanopteron;

TEST_CASE("soliton amplitude and shape") {
    const DimerParams p = DimerParams::make(2.0, 1.0);
    const Soliton s(p);
    CHECK(s(0.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(s(1.3) == s(-1.3));
    for (double X : {5.0, 10.0, 20.0}) CHECK(s(X) / std::exp(-2.0 * X / s.width) <= 4.0 * s.amplitude);
    CHECK(s.derivative(0.7) == doctest::Approx((s(0.7 + 1e-6) - s(0.7 - 1e-6)) / 2e-6).epsilon(1e-8));
}

TEST_CASE("soliton solves the KdV traveling-wave equation") {
    LineGrid g(40.0, 2048);
    for (auto [k, b] : {std::pair{2.0, 1.0}, std::pair{3.0, -1.0}, std::pair{1.5, 4.0}}) {
        const DimerParams p = DimerParams::make(k, b);
        CHECK(kdv_residual(p, Soliton(p).sample(g)).max_abs() <= 1e-10);
        CHECK(kdv_residual(p, LineField(g)).max_abs() == 0.0);
        CHECK(kdv_residual(p, 2.0 * Soliton(p).sample(g)).max_abs() > 0.1);
    }
}

TEST_CASE("residual decays spectrally with resolution") {
    const DimerParams p = DimerParams::make(2.0, 1.0);
    const double r1 = kdv_residual(p, Soliton(p).sample(LineGrid(40.0, 128))).max_abs();
    const double r2 = kdv_residual(p, Soliton(p).sample(LineGrid(40.0, 256))).max_abs();
    const double r3 = kdv_residual(p, Soliton(p).sample(LineGrid(40.0, 512))).max_abs();
    CHECK(r1 / r2 >= 1e2);
    CHECK((r2 / r3 >= 1e2 || r3 <= 1e-12));
}

TEST_CASE("amplitude sign follows the nonlinearity") {
    for (double b : {1.0, -1.0, -7.9, 3.0})
        CHECK(Soliton(DimerParams::make(2.0, b)).amplitude * (b / 8.0 + 1.0) > 0.0);
    CHECK(Soliton(DimerParams::make(3.0, -30.0)).amplitude < 0.0);
}

TEST_CASE("leading-order site profiles") {
    const DimerParams p = DimerParams::make(2.0, 1.0);
    LineGrid g(40.0, 1024);
    const auto [odd, even] = leading_profiles(p, g);
    CHECK(odd.max_abs() == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(even.max_abs() == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(even.max_abs() / odd.max_abs() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(odd.symmetry_defect() == 0.0);
    CHECK(even.symmetry_defect() == 0.0);
}

TEST_CASE("continuum coefficients") {
    const DimerParams p = DimerParams::make(2.0, 1.0);
    const auto c = gmwz_coefficients(p);
    CHECK(c.dispersion == doctest::Approx(1.0 / 18.0).epsilon(1e-15));
    CHECK(c.nonlinear == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(c.reduction_defect <= 1e-14);
}
