#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "imcf/families.hpp"
#include "imcf/soliton.hpp"
#include "support.hpp"

using namespace imcf;
using imcf::testing::Gen;

namespace {

RuledSurface lightlike_quadratic_expander()
{
    return make_lightlike_expander(make_lightlike_director_quadratic(1.0), [](const Jet& s) { return s; },
                                   [](const Jet& s) { return s * s + 1.0; }, {-2, 2}, {-1, 1})
        .surface;
}

double max_coeff_gap(const std::array<double, 5>& fit, const std::array<double, 5>& ref)
{
    double scale = 1.0;
    for (double r : ref) scale = std::max(scale, std::abs(r));
    double gap = 0.0;
    for (int i = 0; i < 5; ++i) gap = std::max(gap, std::abs(fit[i] - ref[i]));
    return gap / scale;
}

} // namespace

TEST_CASE("classify")
{
    CHECK(classify(1, 1.0).kind == SolitonKind::SelfExpander);
    CHECK(classify(-1, 2.0).kind == SolitonKind::SelfShrinker);
    CHECK(classify(1, -3.0).kind == SolitonKind::SelfShrinker);
    CHECK(classify(-1, 2.0).rate() == -2.0);
    CHECK_THROWS_AS(classify(1, 0.0), ZeroCError);
    Gen g(41);
    for (int n = 0; n < 100; ++n) {
        const int e = g.sign();
        const double C = g.uniform(0.1, 10.0) * g.sign();
        CHECK(classify(e, C).kind != classify(e, -C).kind);
    }
}

TEST_CASE("direct residual examples")
{
    const RuledSurface C = imcf::testing::circle_cylinder();
    const RuledSurface H = imcf::testing::hyperbola_cylinder();
    for (double s : {-2.0, 0.0, 1.3}) {
        for (double t : {-0.8, 0.0, 0.5}) {
            CHECK(std::abs(residual_direct(C, 2.0, s, t)) <= 1e-12);
            CHECK(std::abs(residual_direct(H, 2.0, s, t)) <= 1e-12);
            CHECK(residual_direct(C, 1.0, s, t) == doctest::Approx(0.5).epsilon(1e-14));
        }
    }
}

TEST_CASE("polynomial residual examples")
{
    const RuledSurface C = imcf::testing::circle_cylinder();
    CHECK(std::abs(residual_poly(C, 2.0, 0.4, 0.1)) <= 1e-12);
    CHECK(residual_poly(C, 3.0, 0.4, 0.1) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(residual_poly(C, 2.5, -1.0, 0.9) == doctest::Approx(0.5).epsilon(1e-13));
    const RuledSurface L = lightlike_quadratic_expander();
    for (double s : {-1.8, -0.3, 0.0, 1.5}) {
        for (double t : {-1.0, 0.2, 1.0}) {
            CHECK(std::abs(residual_poly(L, 1.0, s, t)) / residual_poly_scale(L, s, t) <= 1e-8);
        }
    }
}

TEST_CASE("residuals near degenerate or minimal points")
{
    const RuledSurface plane(line_curve({0, 0, 0}, {1, 0, 0}, {-1, 1}), line_curve({0, 1, 0}, {0, 0, 0}, {-1, 1}),
                             {-1, 1}, {-1, 1});
    CHECK_THROWS_AS(residual_direct(plane, 1.0, 0.0, 0.0), ZeroMeanCurvatureError);
    const ResidualReport r = evaluate_residuals(plane, 1.0, 0.0, 0.0);
    CHECK_FALSE(r.has_direct);
    CHECK_FALSE(r.degenerate);
    CHECK(r.poly == doctest::Approx(-2.0));

    const RuledSurface P(line_curve({0, 0, 0}, {1, 0, 0}, {-1, 1}), line_curve({0, 1, 1}, {0, 0, 0}, {-1, 1}),
                         {-1, 1}, {-1, 1});
    CHECK_THROWS_AS(residual_direct(P, 1.0, 0.1, 0.1), DegenerateError);
    const ResidualReport d = evaluate_residuals(P, 1.0, 0.1, 0.1);
    CHECK(d.degenerate);
    CHECK(std::isfinite(d.poly));
}

TEST_CASE("lightlike coefficients")
{
    const auto fam = make_lightlike_expander(make_lightlike_director_quadratic(1.0), [](const Jet& s) { return s; },
                                             [](const Jet& s) { return s * s + 1.0; }, {-2, 2}, {-1, 1});
    const Curve& g = fam.surface.gamma();
    const Curve& b = fam.surface.beta();
    for (double s : {-1.5, 0.0, 0.8}) {
        const LightlikeCoeffs c1 = lightlike_poly_coeffs(g, b, 1.0, s);
        CHECK(std::abs(c1.c0) <= 1e-9 * std::pow(s * s + 1, 3));
        CHECK(std::abs(c1.c1) <= 1e-9 * std::pow(s * s + 1, 3));
        // C = 2 leaves c0 = b^3 (C - 1) = b^3 and c1 = 0
        const LightlikeCoeffs c2 = lightlike_poly_coeffs(g, b, 2.0, s);
        CHECK(c2.c0 == doctest::Approx(std::pow(s * s + 1, 3)).epsilon(1e-10));
        CHECK(std::abs(c2.c1) <= 1e-9 * std::pow(s * s + 1, 3));
    }
    // gamma = beta' (a = 0, b = 1)
    const auto plain = make_lightlike_expander(make_lightlike_director_quadratic(1.0), [](const Jet&) { return Jet(0.0); },
                                               [](const Jet&) { return Jet(1.0); }, {-2, 2}, {-1, 1});
    for (double s : {-1.0, 0.5}) {
        const LightlikeCoeffs c = lightlike_poly_coeffs(plain.surface.gamma(), plain.surface.beta(), 1.0, s);
        CHECK(std::abs(c.c0) <= 1e-12);
        CHECK(std::abs(c.c1) <= 1e-12);
        CHECK(c.F == doctest::Approx(-1.0));
    }
    CHECK_THROWS_AS(lightlike_poly_coeffs(g, line_curve({1, 0, 0}, {0, 0, 0}, {-2, 2}), 1.0, 0.0), CausalError);
}

TEST_CASE("orthogonal coefficients")
{
    // beta = (1, s, s): A4 = 2 <beta',beta'>^2 = 0, and A3 = 0
    const RuledSurface N = make_noncyl_surface(9, 9, 0, {0.5, 2}, {-1, 1}).surface;
    for (double s : {0.6, 1.0, 1.7}) {
        const OrthogonalCoeffs A = orthogonal_poly_coeffs(N, 9.0, 1, s);
        CHECK(std::abs(A.A[4]) <= 1e-9 * std::max(1.0, A.magnitude[4]));
        CHECK(std::abs(A.A[3]) <= 1e-9 * std::max(1.0, A.magnitude[3]));
        CHECK(std::abs(A.A[2]) <= 1e-9 * std::max(1.0, A.magnitude[2]));
    }
    // The closed-form non-cylindrical base curve leaves A1 = 81 s^26, A0 = 81 s^36 / 10
    // at C = 9, k1 = 9 (exact symbolic expansion of the defining residual).
    const OrthogonalCoeffs A1 = orthogonal_poly_coeffs(N, 9.0, 1, 1.0);
    CHECK(A1.A[1] == doctest::Approx(81.0).epsilon(1e-10));
    CHECK(A1.A[0] == doctest::Approx(8.1).epsilon(1e-10));
    const RuledSurface N8 = make_noncyl_surface(8, 1, 0, {-1, 1}, {-1, 1}).surface;
    const OrthogonalCoeffs A8 = orthogonal_poly_coeffs(N8, 8.0, 1, 0.0);
    CHECK(A8.A[0] == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(A8.A[1] == doctest::Approx(8.0).epsilon(1e-12));

    // spacelike unit ruling with <beta',beta'> = 1: A4 = 2
    const Curve beta = Curve::analytic([](const Jet& s) -> JetVec3 { return {cos(s), sin(s), Jet(0.0)}; }, {-2, 2});
    const RuledSurface S(line_curve({0, 0, 0}, {0, 0, 1}, {-2, 2}), beta, {-2, 2}, {-1, 1});
    CHECK(orthogonal_poly_coeffs(S, 1.0, 1, 0.3).A[4] == doctest::Approx(2.0).epsilon(1e-14));

    // preconditions
    CHECK_THROWS_AS(orthogonal_poly_coeffs(S, 1.0, -1, 0.3), ParamError);
    const RuledSurface skew(line_curve({0, 0, 0}, {1, 0, 0}, {-2, 2}), beta, {-2, 2}, {-1, 1});
    CHECK_THROWS_AS(orthogonal_poly_coeffs(skew, 1.0, 1, 0.3), ParamError);
}

TEST_CASE("residual_poly is a quartic in t matching the closed-form coefficients")
{
    Gen g(42);
    const Interval d{-1, 1};
    for (int n = 0; n < 50; ++n) {
        const int delta = g.sign();
        const Curve beta = imcf::testing::random_unit_director(g, delta, d);
        const RuledSurface S(imcf::testing::orthogonal_base(g, beta, d), beta, d, {-1, 1});
        const double C = g.uniform(-4, 4);
        const double s = g.uniform(-0.8, 0.8);
        const auto fit = fit_residual_poly_in_t(S, C, s, default_fit_nodes(S));
        const OrthogonalCoeffs A = orthogonal_poly_coeffs(S, C, delta, s);
        std::array<double, 5> ref;
        for (int i = 0; i < 5; ++i) ref[i] = -A.A[i];
        CHECK(max_coeff_gap(fit, ref) <= 1e-8);
    }
    for (int n = 0; n < 50; ++n) {
        const Curve beta = imcf::testing::random_lightlike_director(g, d);
        const Curve gamma = imcf::testing::random_poly_curve(g, d);
        const RuledSurface S(gamma, beta, d, {-1, 1});
        const double C = g.uniform(-4, 4);
        const double s = g.uniform(-0.8, 0.8);
        const auto fit = fit_residual_poly_in_t(S, C, s, default_fit_nodes(S));
        const LightlikeCoeffs c = lightlike_poly_coeffs(gamma, beta, C, s);
        const std::array<double, 5> ref{-2 * c.F * c.c0, -2 * c.F * c.c1, 0, 0, 0};
        CHECK(max_coeff_gap(fit, ref) <= 1e-8);
    }
}

TEST_CASE("residuals are orientation invariant and vanish together")
{
    Gen g(43);
    const Interval d{-1.5, 1.5};
    for (int n = 0; n < 200; ++n) {
        const RuledSurface S(imcf::testing::random_poly_curve(g, d), imcf::testing::random_poly_curve(g, d, 2), d,
                             {-1, 1});
        const double s = g.uniform(-1.2, 1.2), t = g.uniform(-0.9, 0.9);
        const double C = g.uniform(-3, 3);
        const RuledSurface F = S.flipped();
        CHECK(residual_poly(F, C, s, t) == residual_poly(S, C, s, t));
        const ResidualReport a = evaluate_residuals(S, C, s, t);
        const ResidualReport b = evaluate_residuals(F, C, s, t);
        CHECK(a.has_direct == b.has_direct);
        if (a.has_direct) CHECK(std::abs(a.direct - b.direct) <= 1e-12 * std::max(1.0, std::abs(a.direct)));
    }
    // on solitons both vanish; on a perturbed soliton neither does
    const RuledSurface L = lightlike_quadratic_expander();
    const RuledSurface C = imcf::testing::circle_cylinder();
    for (int n = 0; n < 100; ++n) {
        const double s = g.uniform(-1.9, 1.9), t = g.uniform(-1, 1);
        const ResidualReport r = evaluate_residuals(L, 1.0, s, t);
        CHECK(std::abs(r.poly) / residual_poly_scale(L, s, t) <= 1e-8);
        if (r.has_direct) CHECK(std::abs(r.direct) <= 1e-8);
        const ResidualReport q = evaluate_residuals(C, 2.3, s, t);
        CHECK(std::abs(q.poly) >= 0.1);
        CHECK(std::abs(q.direct) >= 0.1);
    }
}
