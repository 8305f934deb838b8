#include <doctest.h>

#include <cmath>
#include <random>

#include "nanopteron/error.hpp"
#include "nanopteron/kdv.hpp"
#include "nanopteron/nonlinear.hpp"

using namespace nanopteron;

namespace {

const LineGrid kGrid(40.0, 1024);

LineField bump(double c, double w, double k) {
    return LineField::from_function(kGrid, [=](double X) { return c * std::exp(-X * X / (2 * w * w)) * std::cos(k * X); });
}

VectorField random_field(std::mt19937& rng) {
    std::normal_distribution<double> N(0.0, 0.5);
    std::uniform_real_distribution<double> W(1.5, 3.0), K(0.0, 1.0);
    return VectorField::from_line(bump(N(rng), W(rng), K(rng)), bump(N(rng), W(rng), K(rng)));
}

double vdiff(const VectorField& a, const VectorField& b) {
    double d = 0.0;
    for (int i = 0; i < 2; ++i) d = std::max(d, (a.line_or_zero(i) - b.line_or_zero(i)).max_abs());
    return d;
}

const DimerParams kCubic = DimerParams::make(2.0, 1.0, Polynomial{{0.7, -0.3}}, Polynomial{{0.4}});

} // namespace

TEST_CASE("calN with constant higher-order terms") {
    const DimerParams p = DimerParams::make(2.0, 1.0, Polynomial{{0.5}}, Polynomial{{0.5}});
    LongWave ops(SymbolSet(p), 0.1);
    const VectorField h = VectorField::from_periodic(PeriodicField(std::vector<double>{1.0}),
                                                     PeriodicField(std::vector<double>{1.0}), 1.0);
    const VectorField n = ops.calN(h);
    CHECK(n.per[0].coeff(0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(n.per[1].coeff(0) == doctest::Approx(0.5).epsilon(1e-14));
    LongWave zero(SymbolSet(DimerParams::make(2.0, 1.0)), 0.1);
    std::mt19937 rng(1);
    const VectorField v = random_field(rng);
    CHECK(vdiff(zero.calN(v), VectorField::from_line(LineField(kGrid), LineField(kGrid))) == 0.0);
    CHECK(vdiff(zero.Q(v, v, v), VectorField::from_line(LineField(kGrid), LineField(kGrid))) == 0.0);
}

TEST_CASE("B is symmetric and bilinear") {
    LongWave ops(SymbolSet(kCubic), 0.2);
    std::mt19937 rng(2);
    const VectorField a = random_field(rng), b = random_field(rng), c = random_field(rng);
    CHECK(vdiff(ops.B(a, b), ops.B(b, a)) <= 1e-12);
    CHECK(vdiff(ops.B(a, 1.7 * b + c), 1.7 * ops.B(a, b) + ops.B(a, c)) <= 1e-12);
    const VectorField z = VectorField::from_line(LineField(kGrid), LineField(kGrid));
    CHECK(vdiff(ops.B(a, z), z) == 0.0);
    for (int i = 0; i < 2; ++i) CHECK(ops.B(a, b).line[i].symmetry_defect() <= 1e-12);
}

TEST_CASE("Q is bilinear in its first two slots") {
    LongWave ops(SymbolSet(kCubic), 0.2);
    std::mt19937 rng(3);
    const VectorField a = random_field(rng), b = random_field(rng), c = random_field(rng), d = random_field(rng);
    CHECK(vdiff(ops.Q(-2.5 * a, b, c), -2.5 * ops.Q(a, b, c)) <= 1e-12);
    CHECK(vdiff(ops.Q(a, b + d, c), ops.Q(a, b, c) + ops.Q(a, d, c)) <= 1e-12);
    CHECK(vdiff(ops.Q(a, b, c), ops.Q(b, a, c)) <= 1e-12);
}

TEST_CASE("Q matches a direct pointwise oracle") {
    const double eps = 0.2;
    SymbolSet s(kCubic);
    LongWave ops(s, eps);
    std::mt19937 rng(4);
    const VectorField a = random_field(rng), b = random_field(rng), c = random_field(rng);
    const MatrixSymbol J = [&](double k) { return s.J(k); };
    const MatrixSymbol J1 = [&](double k) { return s.J1(k); };
    const VectorField ja = apply_matrix(J, a, eps), jb = apply_matrix(J, b, eps), jc = apply_matrix(J, c, eps);
    LineField u(kGrid), w(kGrid);
    for (std::size_t m = 0; m < kGrid.size(); ++m) {
        const double h1 = eps * eps * jc.line[0][m], h2 = eps * eps * jc.line[1][m];
        u[m] = (1.0 / kCubic.kappa()) * ja.line[0][m] * jb.line[0][m] * h1 * kCubic.n1()(h1);
        w[m] = ja.line[1][m] * jb.line[1][m] * h2 * kCubic.n2()(h2);
    }
    const VectorField oracle = apply_matrix(J1, VectorField::from_line(u, w), eps);
    CHECK(vdiff(ops.Q(a, b, c), oracle) <= 1e-12);
    // the other scaling convention changes only the first product component
    LongWave alt(s, eps, QScaling::BetaOverKappa);
    CHECK(alt.q_scale() == doctest::Approx(kCubic.beta() / kCubic.kappa()));
}

TEST_CASE("B at eps = 0 reduces to the closed-form quadratic") {
    const DimerParams p = DimerParams::make(2.0, 1.0);
    LongWave ops(SymbolSet(p), 0.0);
    const LineField sig = Soliton(p).sample(kGrid);
    const VectorField th = VectorField::from_line(sig, LineField(kGrid));
    const VectorField b = ops.B(th, th);
    const double k = p.kappa(), be = p.beta();
    const LineField s2 = hadamard(sig, sig);
    CHECK((b.line[0] - p.kdv_nonlinearity() * s2).max_abs() <= 1e-12);
    CHECK((b.line[1] - (1.0 / (k + 1.0)) * (be / (k * k) - 1.0) * s2).max_abs() <= 1e-12);
}

TEST_CASE("Q is O(eps^2) relative to B") {
    const DimerParams p = kCubic;
    SymbolSet s(p);
    const LineField sig = Soliton(p).sample(kGrid);
    const VectorField th = VectorField::from_line(sig, LineField(kGrid));
    std::vector<double> ratio;
    for (double eps : {0.2, 0.1, 0.05}) {
        LongWave ops(s, eps);
        const VectorField q = ops.Q(th, th, th), b = ops.B(th, th);
        ratio.push_back(std::max(q.line[0].max_abs(), q.line[1].max_abs()) /
                        std::max(b.line[0].max_abs(), b.line[1].max_abs()));
    }
    CHECK(ratio[0] / ratio[1] == doctest::Approx(4.0).epsilon(0.1));
    CHECK(ratio[1] / ratio[2] == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("pointwise products of line and periodic parts") {
    const double omega = kGrid.wavenumber(30);
    const LineField g = bump(1.0, 2.0, 0.0);
    const VectorField a = VectorField::from_line(g, g);
    // periodic output keeps the largest input mode count
    const VectorField b = VectorField::from_periodic(PeriodicField(std::vector<double>{0.5, 1.0, 0.0, 0.0}),
                                                     PeriodicField(std::vector<double>{0.0, 1.0, 0.0, 0.0}), omega);
    const VectorField sum = a + b;
    const std::array<PointwiseFn, 2> sq = {[](const double* x) { return x[0] * x[0]; },
                                           [](const double* x) { return x[0] * x[0]; }};
    const VectorField r = pointwise(sq, {&sum});
    // periodic part: (0.5 + cos)^2 = 0.75 + cos + 0.5 cos 2
    CHECK(r.per[0].coeff(0) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(r.per[0].coeff(1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.per[0].coeff(2) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(r.per[0].coeff(3)) <= 1e-15);
    // line part: g^2 + 2 g (0.5 + cos)
    for (std::size_t m = 0; m < kGrid.size(); m += 37) {
        const double X = kGrid.node(m);
        CHECK(r.line[0][m] == doctest::Approx(g[m] * g[m] + 2.0 * g[m] * (0.5 + std::cos(omega * X))).epsilon(1e-10));
    }
    CHECK(r.line[0].boundary_ratio() <= 1e-12);
    const VectorField other = VectorField::from_periodic(PeriodicField(std::vector<double>{1.0}), PeriodicField(), 2.0 * omega);
    CHECK_THROWS_AS(pointwise({sq[0], sq[1]}, {&b, &other}), Error);
}

TEST_CASE("Theta is even and vanishes at zero") {
    LongWave ops(SymbolSet(kCubic), 0.1);
    std::mt19937 rng(5);
    const VectorField a = random_field(rng);
    const VectorField t = ops.Theta(a);
    for (int i = 0; i < 2; ++i) CHECK(t.line[i].symmetry_defect() <= 1e-12);
    const VectorField z = VectorField::from_line(LineField(kGrid), LineField(kGrid));
    CHECK(vdiff(ops.Theta(z), z) == 0.0);
}
