#include "schroder_lab/verify.hpp"

#include "schroder_lab/asymptotics.hpp"
#include "schroder_lab/dynamics.hpp"
#include "schroder_lab/schroder.hpp"
#include "schroder_lab/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

namespace schroder_lab {

namespace {

using Poly = std::vector<Rational>;

Poly truncate(Poly p, int deg)
{
    p.resize(static_cast<std::size_t>(deg + 1), Rational(0));
    return p;
}

Poly mul(const Poly& a, const Poly& b, int deg)
{
    Poly out(static_cast<std::size_t>(deg + 1), Rational(0));
    for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= deg; ++i) {
        if (sgn(a[i]) == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= deg; ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

Poly add(Poly a, const Poly& b, const Rational& cb = 1)
{
    a.resize(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) {
        a[i] += cb * b[i];
    }
    return a;
}

// p(q(x)) mod x^{deg+1}; q has no constant term.
Poly compose(const Poly& p, const Poly& q, int deg)
{
    Poly out(1, Rational(0));
    for (std::size_t k = p.size(); k-- > 0;) {
        out = mul(out, q, deg);
        out = truncate(out, deg);
        out[0] += p[k];
    }
    return truncate(out, deg);
}

// Index of the first nonzero coefficient up to deg, or -1.
int first_nonzero(const Poly& r, int deg)
{
    for (int k = 0; k <= deg && k < static_cast<int>(r.size()); ++k) {
        if (sgn(r[static_cast<std::size_t>(k)]) != 0) {
            return k;
        }
    }
    return -1;
}

void add_zero_residual(VerificationReport& rep, const std::string& name, const Poly& r, int deg)
{
    const int k = first_nonzero(r, deg);
    rep.add(name + " residual zero through x^" + std::to_string(deg), "0",
            k < 0 ? nlohmann::json("0") : nlohmann::json("x^" + std::to_string(k) + ": " + to_string(r[static_cast<std::size_t>(k)])),
            0, k < 0);
}

std::string s_label(const Rational& s)
{
    return "s=" + to_string(s);
}

const std::vector<Rational>& residual_parameters()
{
    static const std::vector<Rational> v{Rational(5, 2), Rational(3), Rational(10, 3)};
    return v;
}

VerificationReport seeds()
{
    VerificationReport rep;
    for (const Rational& s : residual_parameters()) {
        const auto u = u_coefficients(s, 2);
        const Rational a1 = 2 / (1 - s);
        const Rational a2 = (5 - 3 * s) / ((s - 1) * (s - 1) * (s + 1));
        rep.add(s_label(s) + " a_1", to_string(a1), to_string(u_coefficient(u, 1)), 0, u_coefficient(u, 1) == a1);
        rep.add(s_label(s) + " a_2", to_string(a2), to_string(u_coefficient(u, 2)), 0, u_coefficient(u, 2) == a2);
    }
    return rep;
}

VerificationReport residuals()
{
    constexpr int N = 40;
    VerificationReport rep;
    for (const Rational& s : residual_parameters()) {
        const Poly f{Rational(0), s, Rational(-s)};  // s x (1 - x)
        const Poly one_minus_2x_sq{Rational(1), Rational(-4), Rational(4)};

        // U(f(x)) = s^2 (1 - 2x)^2 U(x)
        const Poly u = u_coefficients(s, N).coefficients;
        const int du = N + 2;
        const Poly ru = add(compose(u, f, du), mul(one_minus_2x_sq, u, du), Rational(-s * s));
        add_zero_residual(rep, s_label(s) + " U", ru, du);

        // Psi(f(x)) = s Psi(x)
        const Poly psi = psi_coefficients(s, N).coefficients;
        const Poly rpsi = add(compose(psi, f, N), psi, Rational(-s));
        add_zero_residual(rep, s_label(s) + " Psi", rpsi, N);

        // Phi(s x) = s Phi(x) (1 - Phi(x))
        const Poly phi = phi_coefficients(s, N).coefficients;
        const Poly sphi = compose(phi, Poly{Rational(0), s}, N);
        Poly rphi = add(sphi, phi, Rational(-s));
        rphi = add(rphi, mul(phi, phi, N), s);
        add_zero_residual(rep, s_label(s) + " Phi", rphi, N);
    }

    // s = 1: V(x (1 - x)) = (1 - 2x)^2 V(x)
    const Poly v = s1_coefficients(N).coefficients;
    const int dv = N + 4;
    const Poly rv = add(compose(v, Poly{Rational(0), Rational(1), Rational(-1)}, dv),
                        mul(Poly{Rational(1), Rational(-4), Rational(4)}, v, dv), Rational(-1));
    add_zero_residual(rep, "s=1 V", rv, dv);
    return rep;
}

VerificationReport numerator()
{
    VerificationReport rep;
    const auto p = p_polynomials(20);  // throws on any inexact (1 - s) division
    rep.add("(1 - s) cancellation exact for n <= 20", true, true, 0, true);

    const SPolynomial p1({Rational(2), Rational(-2)});
    const SPolynomial p2({Rational(5), Rational(-3)});
    rep.add("p_1 = 2(1 - s)", p1.str(), p[1].str(), 0, p[1] == p1);
    rep.add("p_2 = 5 - 3s", p2.str(), p[2].str(), 0, p[2] == p2);

    const Rational s(5, 2);
    const auto u = u_coefficients(s, 12);
    for (int n = 1; n <= 12; ++n) {
        const int expected_degree = 1 + (n - 2) * (n - 1) / 2;
        rep.add("deg p_" + std::to_string(n), expected_degree, p[static_cast<std::size_t>(n)].degree(), 0,
                p[static_cast<std::size_t>(n)].degree() == expected_degree);
    }
    for (int n = 1; n <= 12; ++n) {
        const Rational lhs = u_coefficient(u, n) * (s - 1) * (s - 1) * deformed_factorial(n, s);
        const Rational rhs = p[static_cast<std::size_t>(n)].eval(s);
        rep.add("s=5/2 a_" + std::to_string(n) + " (s-1)^2 [n]! = p_n", to_string(rhs), to_string(lhs), 0, lhs == rhs);
    }
    return rep;
}

VerificationReport radius(Exec exec)
{
    const std::vector<std::pair<Real, Real>> cases{{0.5L, 0.5L}, {1.5L, 1.0L / 3}, {2.5L, 0.625L}, {3.5L, 0.875L}};
    std::vector<RadiusEstimate> est(cases.size());
    for_each_index(cases.size(), exec, [&](std::size_t i) { est[i] = radius_estimate(cases[i].first, 400); });
    VerificationReport rep;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const double expected = static_cast<double>(cases[i].second);
        rep.add_close("s=" + format_real(static_cast<double>(cases[i].first)) + " N=400 radius (5%)", expected,
                      static_cast<double>(est[i].estimate), 0.05 * expected);
    }
    return rep;
}

// Worst |a(x) - b(x)| over n uniform points on [lo, hi].
template <class A, class B>
Real worst_gap(Real lo, Real hi, int n, A&& a, B&& b, Exec exec)
{
    std::vector<Real> gap(static_cast<std::size_t>(n));
    for_each_index(gap.size(), exec, [&](std::size_t i) {
        const Real x = lo + (hi - lo) * static_cast<Real>(i) / (n - 1);
        gap[i] = std::fabs(a(x) - b(x));
    });
    return *std::max_element(gap.begin(), gap.end());
}

VerificationReport closed_form(Exec exec)
{
    VerificationReport rep;
    const USeries u2(2.0L, 200);
    const Real g2 = worst_gap(0, 0.45L, 100, [&](Real x) { return u2.U(x); }, [](Real x) { return closed_form_U(x, 2); },
                              exec);
    rep.add_close("s=2 U vs closed form on [0, 0.45]", 0, static_cast<double>(g2), 1e-10);

    const USeries u4(4.0L, 200);
    const Real g4 = worst_gap(0, 0.99L, 100, [&](Real x) { return u4.U0(x); }, [](Real x) { return closed_form_U(x, 4); },
                              exec);
    rep.add_close("s=4 U0 vs closed form on [0, 0.99]", 0, static_cast<double>(g4), 1e-8);
    return rep;
}

VerificationReport transit_5_2(Exec exec)
{
    const Rational s(5, 2);
    const CheminSchedule schedule = build_chemin(s, 3);
    VerificationReport rep;
    // The published legs, as unordered endpoint pairs.
    const std::vector<std::pair<Rational, Rational>> published{
        {Rational(1, 2), Rational(5, 8)},
        {Rational(75, 128), Rational(5, 8)},
        {Rational(75, 128), Rational(19875, 32768)},
        {Rational(1281241875, 2147483648UL), Rational(19875, 32768)},
    };
    bool legs_match = schedule.groups.size() == published.size();
    for (std::size_t g = 0; legs_match && g < published.size(); ++g) {
        const auto& legs = schedule.groups[g].legs;
        legs_match = legs.size() == 1 && legs[0].node.family == 0 && legs[0].node.index == static_cast<int>(g) &&
                     std::minmax(legs[0].from, legs[0].to) == std::minmax(published[g].first, published[g].second);
    }
    rep.add("schedule legs are V_0..V_3 between the published endpoints", true, legs_match, 0, legs_match);
    rep.append(verify_chemin(schedule, 200, exec));
    return rep;
}

VerificationReport transit_10_3(Exec exec)
{
    const Rational s(10, 3);
    const CheminSchedule schedule = build_chemin(s, 5);
    VerificationReport rep = verify_chemin(schedule, 200, exec);

    const PotentialModel model(s, 200);
    const auto transits = chemin_transits(schedule, model, exec);
    struct Published {
        int group;
        const char* name;
        double value;
    };
    const Published published[] = {{2, "V_2", 0.825728}, {2, "W_1", 0.174272}, {3, "W_2", 0.164433}, {3, "V_3", 0.661295}};
    for (const Published& p : published) {
        const auto& legs = schedule.groups[static_cast<std::size_t>(p.group)].legs;
        double computed = NAN;
        for (std::size_t k = 0; k < legs.size(); ++k) {
            if (legs[k].node.name() == p.name) {
                computed = static_cast<double>(transits[static_cast<std::size_t>(p.group)][k].value);
            }
        }
        rep.add_close("published leg " + std::string(p.name) + " in group " + std::to_string(p.group), p.value, computed,
                      1e-3);
    }
    return rep;
}

VerificationReport orbits()
{
    VerificationReport rep;
    const Orbit o = map_iterate(Rational(1, 2), Rational(5, 2), 3);
    const std::vector<Rational> expected{Rational(5, 8), Rational(75, 128), Rational(19875, 32768)};
    for (std::size_t k = 0; k < expected.size(); ++k) {
        const bool ok = k < o.points.size() && o.points[k] == expected[k];
        rep.add("s=5/2 x0=1/2 iterate " + std::to_string(k + 1), to_string(expected[k]),
                k < o.points.size() ? to_string(o.points[k]) : "missing", 0, ok);
    }

    const auto cycle = two_cycle(Rational(10, 3));
    const double lo = (13 - std::sqrt(13.0)) / 20;
    const double hi = (13 + std::sqrt(13.0)) / 20;
    rep.add_close("s=10/3 two-cycle lower", lo, cycle ? static_cast<double>(cycle->first) : NAN, 1e-12);
    rep.add_close("s=10/3 two-cycle upper", hi, cycle ? static_cast<double>(cycle->second) : NAN, 1e-12);

    const Rational f52 = fixed_points(Rational(5, 2)).second;
    const Rational f103 = fixed_points(Rational(10, 3)).second;
    rep.add("s=5/2 fixed point", "3/5", to_string(f52), 0, f52 == Rational(3, 5));
    rep.add("s=10/3 fixed point", "7/10", to_string(f103), 0, f103 == Rational(7, 10));
    return rep;
}

VerificationReport duality(Exec exec)
{
    VerificationReport rep;
    struct Case {
        Rational s;
        Real lo;
        Real hi;
    };
    const Case cases[] = {{Rational(1, 2), -0.4L, -0.2L}, {Rational(3, 2), 0.20L, 0.27L}};
    for (const Case& c : cases) {
        const USeries direct(to_real(c.s), 200);
        const Real g = worst_gap(c.lo, c.hi, 10, [&](Real x) { return dual_transform_U(x, c.s, 200); },
                                 [&](Real x) { return direct.U(x); }, exec);
        rep.add_close(s_label(c.s) + " dual-route U vs direct, 10 points on [" + format_real(static_cast<double>(c.lo)) +
                          ", " + format_real(static_cast<double>(c.hi)) + "]",
                      0, static_cast<double>(g), 1e-8);
    }

    const Rational s(3, 2);
    const Real star = worst_gap(-0.15L, 0.15L, 20, [&](Real x) { return conjugate_psi(Conjugate::Star, x, s, 200); },
                                [&](Real x) { return psi_star_via_dual(x, s, 200); }, exec);
    rep.add_close("s=3/2 Psi* conjugation identity, 20 points", 0, static_cast<double>(star), 1e-10);

    const Real sr = to_real(s);
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> pick(-0.6, -0.3);
    Real worst = 0;
    for (int i = 0; i < 10; ++i) {
        const Real x = pick(rng);
        const Real lhs = (1 - sr) * (1 - sr) / (2 - sr) + sr * conjugate_psi(Conjugate::G, x, s, 200);
        const Real rhs = conjugate_psi(Conjugate::G, (2 - sr) * x * (1 - x), s, 200);
        worst = std::max(worst, std::fabs(lhs - rhs));
    }
    rep.add_close("s=3/2 Psi_g inhomogeneous equation, 10 random points", 0, static_cast<double>(worst), 1e-8);
    return rep;
}

VerificationReport trajectory_checks(Exec exec)
{
    VerificationReport rep;
    const Rational s(5, 2);
    const Flow flow(s, 200);
    const Orbit o = map_iterate(Rational(1, 2), s, 3);
    for (int t = 0; t <= 3; ++t) {
        const Real exact = t == 0 ? 0.5L : to_real(o.points[static_cast<std::size_t>(t - 1)]);
        rep.add_close("s=5/2 x(" + std::to_string(t) + ") vs map iterate", static_cast<double>(exact),
                      static_cast<double>(flow.position(0.5L, t)), 1e-9);
    }

    // x0 = 0.3 stays on the rising branch for t1 + t2 <= 0.9.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pick(0.0, 0.45);
    std::vector<std::pair<Real, Real>> times(10);
    for (auto& t : times) {
        t = {pick(rng), pick(rng)};
    }
    std::vector<Real> gap(times.size());
    for_each_index(times.size(), exec, [&](std::size_t i) {
        const auto [t1, t2] = times[i];
        gap[i] = std::fabs(flow.position(flow.position(0.3L, t2), t1) - flow.position(0.3L, t1 + t2));
    });
    rep.add_close("s=5/2 semigroup f_{t1+t2} = f_{t1} o f_{t2}, 10 random pairs", 0,
                  static_cast<double>(*std::max_element(gap.begin(), gap.end())), 1e-9);

    std::vector<Real> grid;
    for (int k = 0; k <= 12; ++k) {
        grid.push_back(0.25L * k);
    }
    const Trajectory tr = trajectory(0.3L, Rational(4), grid, 200, exec);
    Real worst = 0;
    for (const auto& [t, x] : tr.samples) {
        const Real ref = std::pow(std::sin(std::pow(2.0L, t) * std::asin(std::sqrt(0.3L))), 2);
        worst = std::max(worst, std::fabs(x - ref));
    }
    rep.add_close("s=4 x0=0.3 trajectory vs sin^2(2^t arcsin sqrt x0), t in [0, 3]", 0, static_cast<double>(worst), 1e-8);
    return rep;
}

VerificationReport asymptotics()
{
    VerificationReport rep;
    const GrowthDiagnostic g = growth_analysis(300);
    const PowerSeries<Rational> v = s1_coefficients(8);
    const Rational published[] = {Rational(2),          Rational(4),          Rational(25, 3),
                                  Rational(215, 12),    Rational(589, 15),    Rational(7813, 90),
                                  Rational(60481, 315), Rational(11821, 28)};
    for (int n = 1; n <= 8; ++n) {
        const Rational c = s1_coefficient(v, n);
        rep.add("c_" + std::to_string(n), to_string(published[n - 1]), to_string(c), 0, c == published[n - 1]);
    }

    Real min_root = INFINITY;
    for (int n = 100; n <= 300; ++n) {
        min_root = std::min(min_root, g.root_at(n));
    }
    rep.add("min |c_n|^{1/n} over n in [100, 300] exceeds 2", "> 2", static_cast<double>(min_root), 0, min_root > 2);

    const Real ratio = slope_ratio(g, 150, 300);
    rep.add_close("log-slope ratio against f_n over [150, 300]", 1.0, static_cast<double>(ratio), 0.1);

    rep.add_close("I(0)", 1.0, static_cast<double>(pv_integral(0)), 1e-10);
    const Real x = 0.01L;
    const Real k = x / std::sqrt(2 * std::exp(3.0L));
    rep.add_close("I(0.01) vs 1 + k + 2k^2", static_cast<double>(1 + k + 2 * k * k),
                  static_cast<double>(pv_integral(x)), 1e-6);
    return rep;
}

VerificationReport branches(Exec exec)
{
    VerificationReport rep;
    const Rational s(10, 3);
    const PsiSheets sheets(s, 200);
    const auto br = psi_branches(s, 8);
    const auto tables = tabulate_branches(sheets, br, kBranchSamples, exec);

    constexpr int kSamples = 32;
    std::vector<Real> worst(br.size(), 0);
    for_each_index(br.size(), exec, [&](std::size_t b) {
        const Real lo = to_real(br[b].domain().lo);
        const Real hi = to_real(br[b].domain().hi);
        for (int i = 1; i < kSamples; ++i) {
            const Real x = lo + (hi - lo) * i / kSamples;
            worst[b] = std::max(worst[b], std::fabs(sheets.sfe_residual(br[b].node, x)));
        }
    });
    for (std::size_t b = 0; b < br.size(); ++b) {
        rep.add_close("branch " + std::to_string(b) + " (" + br[b].node.name() + ") functional-equation residual", 0,
                      static_cast<double>(worst[b]), 1e-9);
    }
    for (std::size_t b = 0; b + 1 < tables.size(); ++b) {
        const Real x = to_real(br[b].exit);
        rep.add_close("branches " + std::to_string(b) + "/" + std::to_string(b + 1) + " continuity at " +
                          to_string(br[b].exit),
                      static_cast<double>(tables[b](x)), static_cast<double>(tables[b + 1](x)), 1e-7);
    }
    return rep;
}

using GroupFn = std::function<VerificationReport(Exec)>;

const std::vector<std::pair<std::string, GroupFn>>& registry()
{
    static const std::vector<std::pair<std::string, GroupFn>> r{
        {"seeds", [](Exec) { return seeds(); }},
        {"residuals", [](Exec) { return residuals(); }},
        {"numerator", [](Exec) { return numerator(); }},
        {"radius", radius},
        {"closed_form", closed_form},
        {"transit_5_2", transit_5_2},
        {"transit_10_3", transit_10_3},
        {"orbits", [](Exec) { return orbits(); }},
        {"duality", duality},
        {"trajectory", trajectory_checks},
        {"asymptotics", [](Exec) { return asymptotics(); }},
        {"branches", branches},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& verification_groups()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, fn] : registry()) {
            n.push_back(name);
        }
        return n;
    }();
    return names;
}

VerificationReport run_verification_group(const std::string& group, Exec exec)
{
    for (const auto& [name, fn] : registry()) {
        if (name != group) {
            continue;
        }
        VerificationReport raw = fn(exec);
        VerificationReport out;
        for (CheckResult c : raw.checks()) {
            c.check = group + ": " + c.check;
            out.add(std::move(c));
        }
        return out;
    }
    throw std::invalid_argument("unknown check group '" + group + "'");
}

VerificationReport run_verification(const std::vector<std::string>& only, Exec exec)
{
    for (const std::string& g : only) {
        const auto& all = verification_groups();
        if (std::find(all.begin(), all.end(), g) == all.end()) {
            throw std::invalid_argument("unknown check group '" + g + "'");
        }
    }
    VerificationReport rep;
    for (const std::string& g : verification_groups()) {
        if (only.empty() || std::find(only.begin(), only.end(), g) != only.end()) {
            rep.append(run_verification_group(g, exec));
        }
    }
    return rep;
}

}  // namespace schroder_lab
