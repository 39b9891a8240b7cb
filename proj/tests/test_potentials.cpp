#include "support.hpp"

#include "oracles.hpp"
#include "schroder_lab/dynamics.hpp"
#include "schroder_lab/errors.hpp"
#include "schroder_lab/potentials.hpp"

#include <random>

using namespace schroder_lab;

TEST_CASE("U at the closed-form parameters")
{
    for (int i = 0; i < 100; ++i) {
        const Real x = 0.45L * i / 99;
        CHECK_NEAR(eval_U(Scalar(x), Scalar(2.0L), 200).to_float(), oracle::u2(x), 1e-10);
    }
    for (int i = 0; i < 100; ++i) {
        const Real x = 0.99L * i / 99;
        CHECK_NEAR(eval_U0(Scalar(x), Scalar(4.0L), 200).to_float(), oracle::u4(x), 1e-8);
    }
    const Real l = std::log(0.4L);
    CHECK_NEAR(eval_U(Scalar(0.3L), Scalar(2.0L), 200).to_float(), 0.25L * 0.16L * l * l, 1e-12);
    CHECK_NEAR(eval_U(Scalar(0.5L), Scalar(4.0L), 200).to_float(), std::numbers::pi_v<Real> * std::numbers::pi_v<Real> / 64,
               1e-12);
    CHECK(eval_U(Scalar::parse("0"), Scalar::parse("5/2"), 50).to_float() == 0);
}

TEST_CASE("library closed forms match the Schroder-function oracle")
{
    for (Real x = 0.01L; x < 0.5L; x += 0.037L) {
        CHECK_NEAR(closed_form_U(x, 2), oracle::u2(x), 1e-17);
    }
    for (Real x = 0.01L; x < 1; x += 0.061L) {
        CHECK_NEAR(closed_form_U(x, 4), oracle::u4(x), 1e-17);
        CHECK_NEAR(closed_form_U4_arccos(x), oracle::u4(x), 1e-17);
    }
    CHECK_THROWS_AS(closed_form_U(0.6L, 2), DomainError);
    CHECK_THROWS_AS(closed_form_U(0.5L, 3), DomainError);
}

TEST_CASE("float functional equation through U0")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pick(0.0, 0.5);
    for (const Real s : {2.5L, 10.0L / 3}) {
        const USeries u(s, 200);
        for (int i = 0; i < 50; ++i) {
            const Real x = pick(rng);
            const Real ux = u.U0(x);
            const Real lhs = u.U0(s * x * (1 - x));
            const Real rhs = s * s * (1 - 2 * x) * (1 - 2 * x) * ux;
            CHECK(std::fabs(lhs - rhs) <= 1e-9L * std::max<Real>(1, std::fabs(ux)));
        }
    }
}

TEST_CASE("the guard refuses points beyond 99% of the radius")
{
    const USeries u(2.5L, 100);
    CHECK_NOTHROW(u.U(0.6L));
    CHECK_THROWS_AS(u.U(0.62L), OutOfRadius);
    CHECK_THROWS_AS(u.U(-0.62L), OutOfRadius);
}

TEST_CASE("family nodes: turning points and names")
{
    const Rational s(10, 3);
    const PotentialNode w1 = family_node(1, 1, s);
    CHECK(w1.name() == "W_1");
    CHECK(w1.lower_tp() == Rational(3625, 4374));
    CHECK(w1.upper_tp() == Rational(5, 6));
    CHECK(family_node(0, 0, s).domain.hi == Rational(5, 6));
    CHECK(family_node(5, 1, s).extrapolated());
    CHECK_FALSE(family_node(4, 1, s).extrapolated());

    CHECK_THROWS_AS(family_node(1, 0, s), std::invalid_argument);
    CHECK_THROWS_AS(family_node(0, 1, Rational(1)), DomainError);
    CHECK_THROWS_AS(family_node(0, 1, Rational(9, 2)), DomainError);
    // At s = 5/2 the alternating family has no real branch.
    CHECK_THROWS_AS(family_node(1, 1, Rational(5, 2)), ComplexValued);
}

TEST_CASE("every chemin node vanishes at its turning points and is non-positive between them")
{
    for (const Rational& s : {Rational(5, 2), Rational(10, 3), Rational(7, 2)}) {
        const PotentialModel model(s, 200);
        const CheminSchedule sched = build_chemin(s, 4);
        for (const auto& group : sched.groups) {
            for (const auto& leg : group.legs) {
                const PotentialNode& node = leg.node;
                CAPTURE(node.name());
                CHECK(std::fabs(model.V(node, to_real(node.lower_tp()))) <= 1e-9L);
                CHECK(std::fabs(model.V(node, to_real(node.upper_tp()))) <= 1e-9L);
                const Real lo = to_real(node.lower_tp());
                const Real hi = to_real(node.upper_tp());
                for (int i = 1; i <= 100; ++i) {
                    CHECK(model.V(node, lo + (hi - lo) * i / 101) <= 0);
                }
            }
        }
    }
}

TEST_CASE("s = 5/2: V_0..V_3 intervals nest down onto the fixed point 3/5")
{
    const Rational s(5, 2);
    EvalDomain prev = family_node(0, 0, s).domain;
    for (int n = 1; n <= 6; ++n) {
        const EvalDomain d = family_node(0, n, s).domain;
        CHECK(prev.lo <= d.lo);
        CHECK(d.hi <= prev.hi);
        CHECK(d.width() < prev.width());
        CHECK(d.contains(Rational(3, 5)));
        prev = d;
    }
    CHECK(prev.width() < 0.01L);
}

TEST_CASE("s = 4: V_0 is -(ln 4)^2 times the closed form")
{
    const PotentialModel model(Rational(4), 200);
    const PotentialNode v0 = family_node(0, 0, Rational(4));
    const Real l = std::log(4.0L);
    for (int i = 0; i <= 50; ++i) {
        const Real x = 0.99L * i / 50;
        CHECK_NEAR(model.V(v0, x), -l * l * oracle::u4(x), 1e-8);
    }
}

TEST_CASE("U1 is the next sheet: U1(f(x)) relation on the upper side")
{
    // For x in [1/2, s/4] the '+' root gives back x, so U1(f(x)) = s^2 (1-2x)^2 U0(x).
    const Real s = 2.5L;
    const USeries u(s, 200);
    for (Real x = 0.5L; x <= 0.62L; x += 0.02L) {
        CHECK_NEAR(u.U1(s * x * (1 - x)), s * s * (1 - 2 * x) * (1 - 2 * x) * u.U0(x), 1e-12);
    }
}

TEST_CASE("potential in V-form")
{
    CHECK_NEAR(V_from_U(Scalar(2.0L), Scalar(2.5L)).to_float(), -2 * std::log(2.5) * std::log(2.5), 1e-15);
    CHECK(V_from_U(Scalar::parse("0"), Scalar::parse("5/2")).exact() == 0);
    CHECK_THROWS_AS(V_from_U(Scalar(1.0L), Scalar(1.0L)), DomainError);
}

TEST_CASE("dual-route U")
{
    CHECK(dual_transform_U(1.0L / 3, Rational(3, 2), 200) == doctest::Approx(0).epsilon(1e-18));
    const USeries direct32(1.5L, 200);
    for (Real x = 0.20L; x <= 0.2701L; x += 0.01L) {
        CHECK_NEAR(dual_transform_U(x, Rational(3, 2), 200), direct32.U(x), 1e-8);
    }
    const USeries direct12(0.5L, 200);
    for (Real x = -0.4L; x <= -0.1999L; x += 0.025L) {
        CHECK_NEAR(dual_transform_U(x, Rational(1, 2), 200), direct12.U(x), 1e-8);
    }
    CHECK_THROWS_AS(dual_transform_U(0.3L, Rational(5, 2), 200), DomainError);
}
