#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "imcf/lvec3.hpp"
#include "support.hpp"

using namespace imcf;
using imcf::testing::Gen;

TEST_CASE("dot uses the signature (+,+,-)")
{
    CHECK(dot({0, 0, 1}, {0, 0, 1}) == -1.0);
    CHECK(dot({0, 1, 1}, {1, 0, 0}) == 0.0);
    for (double s : {-3.0, -0.5, 0.0, 1.25, 7.0}) CHECK(dot({1, s, s}, {1, s, s}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("lorentz_norm")
{
    CHECK(lorentz_norm({0, 0, 2}) == 2.0);
    CHECK(lorentz_norm({1, 0, 1}) == 0.0);
    CHECK(lorentz_norm({3, 4, 0}) == 5.0);
    CHECK(euclid_norm({1, 2, 2}) == 3.0);
}

TEST_CASE("causal_type")
{
    CHECK(causal_type({1, 0, 0}) == CausalType::Spacelike);
    CHECK(causal_type({0, 0, 1}) == CausalType::Timelike);
    CHECK(causal_type({1, 0, 1}) == CausalType::Lightlike);
    CHECK(causal_type({0, 0, 0}) == CausalType::Spacelike);
    // normalized by the largest component, so tiny and huge vectors classify alike
    CHECK(causal_type({1e-8, 0, 1e-8}) == CausalType::Lightlike);
    CHECK(causal_type({1e8, 0, 1e8 * (1 + 1e-13)}) == CausalType::Lightlike);
    CHECK(std::string(to_string(CausalType::Timelike)) == "Timelike");
}

TEST_CASE("causal_type is scale invariant with zero tolerance")
{
    Gen g(11);
    for (int n = 0; n < 1000; ++n) {
        const LVec3 v = g.vec();
        const double lam = g.uniform(0.01, 100.0) * g.sign();
        CHECK(causal_type(lam * v, 0.0) == causal_type(v, 0.0));
    }
}

TEST_CASE("cross product examples")
{
    CHECK(cross({1, 0, 0}, {0, 1, 0}) == LVec3(0, 0, -1));
    for (double s : {-2.0, 0.0, 0.3, 5.0}) {
        const LVec3 w = cross({0, 1, 1}, {1, s, s});
        CHECK(imcf::testing::max_abs_diff(w, {0, 1, 1}) == 0.0);
    }
    const LVec3 u(0.3, -1.2, 2.5);
    CHECK(cross(u, u) == LVec3(0, 0, 0));
}

TEST_CASE("mixed product")
{
    CHECK(mixed({1, 0, 0}, {0, 1, 0}, {0, 0, 1}) == 1.0);
    Gen g(12);
    for (int n = 0; n < 200; ++n) {
        const LVec3 A = g.vec(), B = g.vec(), C = g.vec();
        const double s = g.uniform(-2, 2);
        const double lhs = mixed(2.0 * A, A * (s * s) + B * s + C, 2.0 * s * A + B);
        const double rhs = 2.0 * det3(A, C, B);
        CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(rhs)) * (1 + s * s));
    }
    // the quadratic lightlike director at any s
    for (double s : {-1.0, 0.0, 0.7, 2.0}) {
        const LVec3 b(s + 0.5, s * s + s, s * s + s + 0.5);
        const LVec3 b1(1, 2 * s + 1, 2 * s + 1);
        const LVec3 b2(0, 2, 2);
        CHECK(mixed(b2, b, b1) == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("mixed is alternating")
{
    Gen g(13);
    for (int n = 0; n < 1000; ++n) {
        const LVec3 u = g.vec(), v = g.vec(), w = g.vec();
        const double m = mixed(u, v, w);
        const double tol = 1e-12 * euclid_norm(u) * euclid_norm(v) * euclid_norm(w);
        CHECK(std::abs(mixed(v, u, w) + m) <= tol);
        CHECK(std::abs(mixed(u, w, v) + m) <= tol);
        CHECK(std::abs(mixed(v, w, u) - m) <= tol);
        CHECK(std::abs(mixed(u, u, w)) <= tol);
    }
}

TEST_CASE("Lagrange identity and duality on random vectors")
{
    Gen g(14);
    double worst_lag = 0.0, worst_dual = 0.0;
    for (int n = 0; n < 1000; ++n) {
        const LVec3 u = g.vec(), v = g.vec(), x = g.vec();
        const LVec3 w = cross(u, v);
        const double scale = std::pow(euclid_norm(u) * euclid_norm(v), 2);
        const double lag = dot(w, w) - (-dot(u, u) * dot(v, v) + dot(u, v) * dot(u, v));
        worst_lag = std::max(worst_lag, std::abs(lag) / scale);
        worst_dual = std::max(worst_dual, std::abs(dot(w, x) - det3(x, u, v)) / (scale * euclid_norm(x)));
        CHECK(imcf::testing::max_abs_diff(cross(v, u), -w) == 0.0);
    }
    CHECK(worst_lag <= 1e-12);
    CHECK(worst_dual <= 1e-12);
}

TEST_CASE("orthogonal lightlike vectors are proportional")
{
    Gen g(15);
    int orthogonal = 0;
    for (int n = 0; n < 1000; ++n) {
        const double a = g.uniform(0.2, 3.0) * g.sign();
        const double b = g.uniform(0.2, 3.0) * g.sign();
        const double th = g.uniform(0.0, 2 * M_PI);
        // half the pairs share the angle (up to rounding) so both branches are exercised
        const double ph = n % 2 == 0 ? th : g.uniform(0.0, 2 * M_PI);
        const LVec3 u(a * std::cos(th), a * std::sin(th), a);
        const LVec3 v(b * std::cos(ph), b * std::sin(ph), b);
        const bool orth = std::abs(dot(u, v)) <= 1e-12 * std::abs(a * b);
        const bool prop = euclid_norm(cross(u, v)) <= 1e-12 * std::abs(a * b) * 4;
        CHECK(orth == prop);
        orthogonal += orth;
    }
    CHECK(orthogonal >= 400);
}

TEST_CASE("LVec3 rejects non-finite components")
{
    CHECK_THROWS_AS(LVec3(std::nan(""), 0, 0), DomainError);
    CHECK_THROWS_AS(LVec3(0, INFINITY, 0), DomainError);
    std::ostringstream os;
    os << LVec3(1, 2, 3);
    CHECK(!os.str().empty());
}
