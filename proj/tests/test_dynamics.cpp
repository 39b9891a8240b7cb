#include "support.hpp"

#include "oracles.hpp"
#include "schroder_lab/dynamics.hpp"
#include "schroder_lab/errors.hpp"
#include "schroder_lab/schroder.hpp"

#include <random>

using namespace schroder_lab;

TEST_CASE("orbit of 1/2 at s = 5/2")
{
    const Orbit o = map_iterate(Rational(1, 2), Rational(5, 2), 3);
    REQUIRE(o.points.size() == 3);
    CHECK(o.points[0] == Rational(5, 8));
    CHECK(o.points[1] == Rational(75, 128));
    CHECK(o.points[2] == Rational(19875, 32768));
    CHECK(map_iterate(Rational(1, 3), Rational(2), 0).points.empty());
    CHECK_THROWS_AS(map_iterate(Rational(1, 3), Rational(2), -1), std::invalid_argument);
}

TEST_CASE("map_iterate satisfies the map equation exactly")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> num(1, 30);
    for (int trial = 0; trial < 20; ++trial) {
        Rational x0(num(rng), 31);
        Rational s(num(rng), 8);
        x0.canonicalize();
        s.canonicalize();
        // Denominators square at every step, so random starts stop at k = 12.
        const Orbit o = map_iterate(x0, s, 12);
        Rational prev = x0;
        for (const Rational& x : o.points) {
            CHECK(x == Rational(s * prev * (1 - prev)));
            prev = x;
        }
        CHECK(o.points.back() == oracle::iterate(x0, s, 12));
    }
    // Orbits of bounded size can run the full 50 steps.
    const Orbit tent = map_iterate(Rational(1, 2), Rational(4), 50);
    CHECK(tent.points[0] == 1);
    CHECK(tent.points[49] == 0);
    const Orbit fixed = map_iterate(Rational(3, 5), Rational(5, 2), 50);
    for (const Rational& x : fixed.points) {
        CHECK(x == Rational(3, 5));
    }
}

TEST_CASE("fixed points and the two-cycle")
{
    CHECK(fixed_points(Rational(5, 2)).second == Rational(3, 5));
    CHECK(fixed_points(Rational(10, 3)).second == Rational(7, 10));
    CHECK(fixed_points(Rational(10, 3)).first == 0);
    CHECK_THROWS_AS(fixed_points(Rational(0)), DomainError);

    const auto c = two_cycle(Rational(10, 3));
    REQUIRE(c.has_value());
    CHECK_NEAR(c->first, (13 - std::sqrt(13.0)) / 20, 1e-12);
    CHECK_NEAR(c->second, (13 + std::sqrt(13.0)) / 20, 1e-12);
    CHECK_FALSE(two_cycle(Rational(3)).has_value());
    CHECK_FALSE(two_cycle(Rational(5, 2)).has_value());
}

TEST_CASE("s = 5/2: the orbit of 1/2 closes in on 3/5 from alternate sides")
{
    const Orbit o = map_iterate(Rational(1, 2), Rational(5, 2), 11);
    const Rational star(3, 5);
    const auto dist = [&](int k) { return std::fabs(to_real(Rational(o.points[static_cast<std::size_t>(k)] - star))); };
    CHECK(dist(10) < dist(2));
    for (int k = 0; k + 2 < 11; ++k) {
        CHECK(dist(k + 2) < dist(k));
        // Alternating sides of the fixed point.
        CHECK(sgn(Rational(o.points[static_cast<std::size_t>(k)] - star)) ==
              -sgn(Rational(o.points[static_cast<std::size_t>(k + 1)] - star)));
    }
}

TEST_CASE("s = 10/3: turning points do not converge; alternate iterates settle on the two-cycle")
{
    const Orbit o = map_iterate(Rational(5, 6), Rational(10, 3), 12);
    const auto cycle = two_cycle(Rational(10, 3));
    REQUIRE(cycle.has_value());
    CHECK(o.points[0] == Rational(25, 54));
    CHECK(o.points[1] == Rational(3625, 4374));
    for (std::size_t k = 0; k < o.points.size(); ++k) {
        CHECK(std::fabs(to_real(o.points[k]) - 0.7L) > 0.1L);
    }
    // Lower points approach the lower cycle point, upper ones the upper.
    CHECK(std::fabs(to_real(o.points[10]) - cycle->first) < std::fabs(to_real(o.points[0]) - cycle->first));
    CHECK(std::fabs(to_real(o.points[11]) - cycle->second) < std::fabs(to_real(o.points[1]) - cycle->second));
}

TEST_CASE("transit time at s = 4 equals elapsed trajectory time")
{
    const Rational s(4);
    const PotentialModel model(s, 200);
    const PotentialNode v0 = family_node(0, 0, s);
    const Real x0 = 0.1L;
    const auto x_at = [&](Real t) {
        const Real r = std::sin(std::pow(2.0L, t) * std::asin(std::sqrt(x0)));
        return r * r;
    };
    for (const auto& [t1, t2] : {std::pair{0.0L, 0.5L}, std::pair{0.3L, 1.2L}, std::pair{-0.5L, 1.0L}}) {
        const Rational a(static_cast<double>(x_at(t1)));
        const Rational b(static_cast<double>(x_at(t2)));
        CHECK_NEAR(transit_time(model, v0, a, b).value, t2 - t1, 1e-7);
    }
    // Up to the turning point s/4 = 1, where the integrand is singular: x
    // reaches 1 at 2^t asin(sqrt x0) = pi/2.
    const Real t_top = std::log2(std::numbers::pi_v<Real> / 2 / std::asin(std::sqrt(x0)));
    CHECK_NEAR(transit_time(model, v0, Rational(static_cast<double>(x0)), Rational(1)).value, t_top, 1e-7);
}

TEST_CASE("transit time direction and domain errors")
{
    const Rational s(5, 2);
    const PotentialModel model(s, 200);
    const PotentialNode v1 = family_node(0, 1, s);
    const Real fwd = transit_time(model, v1, Rational(75, 128), Rational(5, 8)).value;
    const Real back = transit_time(model, v1, Rational(5, 8), Rational(75, 128)).value;
    CHECK_NEAR(fwd, 1, 1e-5);
    CHECK_NEAR(fwd, back, 1e-15);
    CHECK_THROWS_AS(transit_time(model, v1, Rational(1, 2), Rational(5, 8)), ComplexValued);
}

TEST_CASE("s = 5/2 chemin: one V leg per group, each one time unit")
{
    const CheminSchedule sched = build_chemin(Rational(5, 2), 3);
    const VerificationReport rep = verify_chemin(sched, 200, Exec::Serial);
    CHECK(rep.total() == 4);
    CHECK(rep.all_passed());
    CHECK(verify_chemin(CheminSchedule{Rational(5, 2), {}}, 200).total() == 0);
}

TEST_CASE("s = 10/3 chemin reproduces the published decomposition")
{
    const Rational s(10, 3);
    const CheminSchedule sched = build_chemin(s, 5);
    const auto names = [&](int g) {
        std::vector<std::string> out;
        for (const auto& leg : sched.groups[static_cast<std::size_t>(g)].legs) {
            out.push_back(leg.node.name());
        }
        return out;
    };
    CHECK(names(2) == std::vector<std::string>{"V_2", "W_1"});
    CHECK(names(3) == std::vector<std::string>{"W_2", "V_3", "X_1"});
    CHECK(names(4) == std::vector<std::string>{"X_2", "V_4", "W_3", "Y_1"});
    CHECK(names(5) == std::vector<std::string>{"Y_2", "W_4", "V_5", "X_3", "Z_1"});
    CHECK_FALSE(sched.groups[5].extrapolated);
    CHECK(build_chemin(s, 6).groups[6].extrapolated);

    const PotentialModel model(s, 200);
    const auto tr = chemin_transits(sched, model, Exec::Parallel);
    CHECK_NEAR(tr[2][0].value, 0.825728, 1e-3);
    CHECK_NEAR(tr[2][1].value, 0.174272, 1e-3);
    CHECK_NEAR(tr[3][0].value, 0.164433, 1e-3);
    CHECK_NEAR(tr[3][1].value, 0.661295, 1e-3);
    for (const auto& group : tr) {
        Real total = 0;
        for (const auto& leg : group) {
            total += leg.value;
        }
        CHECK_NEAR(total, 1, 2e-4);
    }
}

TEST_CASE("schedule invariants: m + n fixed within a group, consecutive legs share turning points")
{
    for (const Rational& s : {Rational(5, 2), Rational(3), Rational(10, 3), Rational(7, 2), Rational(4)}) {
        CAPTURE(s.get_str());
        const CheminSchedule sched = build_chemin(s, 5);
        REQUIRE(sched.groups.size() == 6);
        Rational at(1, 2);
        for (std::size_t g = 0; g < sched.groups.size(); ++g) {
            const CheminGroup& group = sched.groups[g];
            CHECK(group.order == static_cast<int>(g));
            REQUIRE_FALSE(group.legs.empty());
            for (const CheminLeg& leg : group.legs) {
                CHECK(leg.node.family + leg.node.index == static_cast<int>(g));
                CHECK(leg.from == at);
                CHECK(leg.node.domain.contains(leg.from));
                CHECK(leg.node.domain.contains(leg.to));
                at = leg.to;
            }
        }
    }
    CHECK_THROWS_AS(build_chemin(Rational(2), 2), DomainError);
    CHECK_THROWS_AS(build_chemin(Rational(9, 2), 2), DomainError);
}

TEST_CASE("chemin transits: serial and parallel give identical bits")
{
    const Rational s(10, 3);
    const CheminSchedule sched = build_chemin(s, 5);
    const PotentialModel model(s, 200);
    const auto a = chemin_transits(sched, model, Exec::Serial);
    const auto b = chemin_transits(sched, model, Exec::Parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t g = 0; g < a.size(); ++g) {
        REQUIRE(a[g].size() == b[g].size());
        for (std::size_t k = 0; k < a[g].size(); ++k) {
            CHECK(a[g][k].value == b[g][k].value);
            CHECK(a[g][k].evaluations == b[g][k].evaluations);
        }
    }
}
