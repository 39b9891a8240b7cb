#include "support.hpp"

#include "oracles.hpp"
#include "schroder_lab/asymptotics.hpp"
#include "schroder_lab/errors.hpp"

using namespace schroder_lab;

namespace {

const GrowthDiagnostic& diagnostic()
{
    static const GrowthDiagnostic g = growth_analysis(300);
    return g;
}

}  // namespace

TEST_CASE("growth diagnostic: sequences finite and positive")
{
    const GrowthDiagnostic& g = diagnostic();
    CHECK(g.n_min == 1);
    CHECK(g.n_max == 300);
    for (int n = 1; n <= 300; ++n) {
        CHECK(std::isfinite(static_cast<double>(g.root_at(n))));
        CHECK(g.root_at(n) > 0);
        CHECK(g.reference_root_at(n) > 0);
    }
    CHECK_NEAR(g.root_at(1), 2, 1e-15);  // c_1 = 2
    CHECK_NEAR(g.log_f[9], log_f(10), 0);
    CHECK_THROWS_AS(growth_analysis(99), std::invalid_argument);
}

TEST_CASE("|c_n|^{1/n} exceeds 2 on [100, 300]")
{
    for (int n = 100; n <= 300; ++n) {
        CHECK(diagnostic().root_at(n) > 2);
    }
}

// Known red: the published c_8 = 11821/28 alone gives 2.13 (see the notes in
// README).
TEST_CASE("|c_n|^{1/n} stays below 2 on [5, 20]")
{
    for (int n = 5; n <= 20; ++n) {
        CAPTURE(n);
        CHECK(diagnostic().root_at(n) < 2);
    }
}

TEST_CASE("log-slope ratio against f_n over [150, 300]")
{
    const Real r = slope_ratio(diagnostic(), 150, 300);
    CHECK(r >= 0.9L);
    CHECK(r <= 1.1L);
    const Real L = fitted_L(diagnostic(), 150, 300);
    CHECK(L > 0);
    CHECK(std::isfinite(static_cast<double>(L)));
}

TEST_CASE("the running supremum of |c_n|^{1/n} keeps growing")
{
    const auto sup_to = [](int N) {
        Real m = 0;
        for (int n = 1; n <= N; ++n) {
            m = std::max(m, diagnostic().root_at(n));
        }
        return m;
    };
    CHECK(sup_to(100) < sup_to(200));
    CHECK(sup_to(200) < sup_to(300));
}

TEST_CASE("I(x) against the exponential-integral closed form")
{
    for (const double x : {-5.0, -1.0, -0.3, -0.01, 0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 3.0, 10.0}) {
        CAPTURE(x);
        const double ref = oracle::pv_reference(x);
        CHECK_NEAR(pv_integral(x), ref, 1e-12 * std::max(1.0, std::fabs(ref)));
    }
    CHECK_NEAR(pv_integral(0), 1, 1e-10);
}

TEST_CASE("I(x) at small x follows the asymptotic sum 1 + f_1 x + f_2 x^2")
{
    const Real x = 0.01L;
    const Real scale = std::sqrt(2 * std::exp(3.0L));
    const Real f1 = 1 / scale;      // 1! / sqrt(2e^3)
    const Real f2 = 2 / (scale * scale);  // 2! / (2e^3)
    CHECK_NEAR(pv_integral(x), 1 + f1 * x + f2 * x * x, 1e-6);
}

TEST_CASE("I(-1): single half-line quadrature and the split route agree")
{
    PvOptions direct;
    direct.force_direct = true;
    CHECK_NEAR(pv_integral(-1, direct), pv_integral(-1), 1e-9);
    CHECK_THROWS_AS(pv_integral(1, direct), std::invalid_argument);
}

TEST_CASE("the excised pole interval converges as it shrinks")
{
    PvOptions half;
    half.excision = 5e-4L;
    CHECK_NEAR(pv_integral(1), pv_integral(1, half), 1e-8);
}
