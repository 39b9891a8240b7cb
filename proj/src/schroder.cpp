#include "schroder_lab/schroder.hpp"

#include "schroder_lab/dynamics.hpp"
#include "schroder_lab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace schroder_lab {

namespace {

constexpr Real kPhiZone = 0.1L;
constexpr int kMaxIterates = 60;

void require_radius(Real x, Real radius, const char* what)
{
    if (std::fabs(x) > 0.99L * radius) {
        throw OutOfRadius(std::string(what) + " series evaluated at |x| = " +
                          std::to_string(static_cast<double>(std::fabs(x))) + " beyond 99% of the radius " +
                          std::to_string(static_cast<double>(radius)));
    }
}

}  // namespace

// --- SchroderFunction -------------------------------------------------------

SchroderFunction::SchroderFunction(Real s, int N)
    : s_(s), series_(psi_coefficients(s, N)), radius_(guard_radius(s, N))
{
}

Real SchroderFunction::series_value(Real x) const
{
    require_radius(x, radius_, "Psi");
    return horner(series_.coefficients, x);
}

Real SchroderFunction::series_derivative(Real x) const
{
    require_radius(x, radius_, "Psi");
    return horner_derivative(series_.coefficients, x);
}

Real SchroderFunction::psi0(Real x) const
{
    if (s_ > 1 && x <= s_ / 4) {
        const Real y = 0.5L - 0.5L * std::sqrt(1 - 4 * x / s_);
        return s_ * series_value(y);
    }
    return series_value(x);
}

Real SchroderFunction::psi0_derivative(Real x) const
{
    if (s_ > 1 && x < s_ / 4) {
        const Real r = std::sqrt(1 - 4 * x / s_);
        return series_derivative(0.5L - 0.5L * r) / r;
    }
    return series_derivative(x);
}

// --- PoincareFunction -------------------------------------------------------

PoincareFunction::PoincareFunction(Real s, int N) : s_(s), series_(phi_coefficients(s, N))
{
    if (std::fabs(s) == 1) {
        throw DegenerateParameter("Phi needs |s| != 1", 1);
    }
}

Real PoincareFunction::series_value(Real x) const
{
    return horner(series_.coefficients, x);
}

int PoincareFunction::iterates_for(Real x) const
{
    const Real shrink = std::fabs(s_) > 1 ? 1 / std::fabs(s_) : std::fabs(s_);
    Real y = std::fabs(x);
    int k = 0;
    while (y >= kPhiZone) {
        if (++k > kMaxIterates) {
            throw NonConvergence("Phi: argument still outside the series zone after 60 extension steps");
        }
        y *= shrink;
    }
    return k;
}

std::pair<Real, Real> PoincareFunction::value_and_derivative(Real x) const
{
    const int k = iterates_for(x);
    if (std::fabs(s_) > 1) {
        const Real y = x / std::pow(s_, k);
        Real v = horner(series_.coefficients, y);
        Real d = horner_derivative(series_.coefficients, y);
        for (int i = 0; i < k; ++i) {
            d *= 1 - 2 * v;
            v = s_ * v * (1 - v);
        }
        return {v, d};
    }
    const Real y = x * std::pow(s_, k);
    Real v = horner(series_.coefficients, y);
    Real d = horner_derivative(series_.coefficients, y);
    for (int i = 0; i < k; ++i) {
        const Real r = 1 - 4 * v / s_;
        if (r < 0) {
            throw DomainError("Phi descent: negative radicand");
        }
        v = 0.5L * (1 - std::sqrt(r));
        d /= 1 - 2 * v;
    }
    return {v, d};
}

Real PoincareFunction::eval(Real x, int iterates) const
{
    if (iterates < 0 || iterates > kMaxIterates) {
        throw std::invalid_argument("Phi: extension iterates must lie in [0, 60]");
    }
    if (std::fabs(s_) > 1) {
        const Real y = x / std::pow(s_, iterates);
        if (std::fabs(y) > 1) {
            throw NonConvergence("Phi: scaled argument " + std::to_string(static_cast<double>(y)) +
                                 " is outside the series zone; more extension steps are needed");
        }
        Real v = horner(series_.coefficients, y);
        for (int i = 0; i < iterates; ++i) {
            v = s_ * v * (1 - v);
        }
        return v;
    }
    const Real y = x * std::pow(s_, iterates);
    if (std::fabs(y) > 1) {
        throw NonConvergence("Phi: scaled argument outside the series zone");
    }
    Real v = horner(series_.coefficients, y);
    for (int i = 0; i < iterates; ++i) {
        const Real r = 1 - 4 * v / s_;
        if (r < 0) {
            throw DomainError("Phi descent: negative radicand");
        }
        v = 0.5L * (1 - std::sqrt(r));
    }
    return v;
}

Real PoincareFunction::derivative(Real x) const
{
    return value_and_derivative(x).second;
}

Scalar eval_phi(const Scalar& x, const Scalar& s, int N, int iterates)
{
    const Real sf = s.to_float();
    if (!(std::fabs(sf) > 1)) {
        throw DomainError("the rescaling route needs |s| > 1");
    }
    return Scalar(PoincareFunction(sf, N).eval(x.to_float(), iterates));
}

Real eval_phi_descend(Real x, Real s, Sign sign, int N)
{
    if (!(s < 1) || s == 0) {
        throw DomainError("the descent step needs s < 1, s != 0");
    }
    const PoincareFunction phi(s, N);
    const Real r = 1 - 4 * phi(s * x) / s;
    if (r < 0) {
        throw DomainError("Phi descent: negative radicand");
    }
    return 0.5L * (sign == Sign::Plus ? 1 + std::sqrt(r) : 1 - std::sqrt(r));
}

// --- branches ---------------------------------------------------------------

std::vector<PsiBranch> psi_branches(const Rational& s, int count)
{
    if (count < 1) {
        throw std::invalid_argument("branch count must be positive");
    }
    std::vector<PsiBranch> out;
    for (int last = 0; static_cast<int>(out.size()) < count; ++last) {
        const CheminSchedule schedule = build_chemin(s, last);
        const CheminGroup& group = schedule.groups.back();
        for (const CheminLeg& leg : group.legs) {
            if (static_cast<int>(out.size()) == count) {
                break;
            }
            PsiBranch b;
            b.index = static_cast<int>(out.size());
            b.s = s;
            b.node = leg.node;
            b.entry = leg.from;
            b.exit = leg.to;
            out.push_back(std::move(b));
        }
    }
    return out;
}

PsiSheets::PsiSheets(const Rational& s, int N) : psi_(to_real(s), N), model_(s, N) {}

Real PsiSheets::eval(const PotentialNode& node, Real x) const
{
    const NestedPoint p = model_.descend(node, x);
    return std::pow(psi_.s(), p.steps) * psi_.psi0(p.y);
}

Real PsiSheets::sfe_residual(const PotentialNode& node, Real x) const
{
    const Sign side = x >= 0.5L ? Sign::Plus : Sign::Minus;
    PotentialNode next = node;
    next.recipe.push_back(side);
    if (!substitute_domain(node.domain, side, node.s, next.domain)) {
        throw ComplexValued(node.name() + ": no sheet continues across x = " + std::to_string(static_cast<double>(x)),
                            x, x);
    }
    const Real s = psi_.s();
    return s * eval(node, x) - eval(next, logistic_map(x, s));
}

BranchTable::BranchTable(PsiBranch branch, std::vector<Real> x, std::vector<Real> y)
    : branch_(std::move(branch)), x_(std::move(x)), y_(std::move(y))
{
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) {
        throw std::invalid_argument("branch table needs at least two samples");
    }
    // Fritsch-Carlson monotone slopes.
    std::vector<Real> secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        secant[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    }
    slope_.assign(n, 0);
    slope_[0] = secant[0];
    slope_[n - 1] = secant[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        slope_[i] = secant[i - 1] * secant[i] <= 0 ? 0 : (secant[i - 1] + secant[i]) / 2;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (secant[i] == 0) {
            slope_[i] = slope_[i + 1] = 0;
            continue;
        }
        const Real a = slope_[i] / secant[i];
        const Real b = slope_[i + 1] / secant[i];
        const Real r = a * a + b * b;
        if (r > 9) {
            const Real tau = 3 / std::sqrt(r);
            slope_[i] = tau * a * secant[i];
            slope_[i + 1] = tau * b * secant[i];
        }
    }
}

Real BranchTable::operator()(Real x) const
{
    if (!covers(x)) {
        throw DomainError("branch table queried outside its interval");
    }
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(std::max<long>(it - x_.begin() - 1, 0)),
                                                x_.size() - 2);
    const Real h = x_[i + 1] - x_[i];
    const Real t = (x - x_[i]) / h;
    const Real t2 = t * t;
    const Real t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y_[i] + (t3 - 2 * t2 + t) * h * slope_[i] + (-2 * t3 + 3 * t2) * y_[i + 1] +
           (t3 - t2) * h * slope_[i + 1];
}

std::vector<BranchTable> tabulate_branches(const PsiSheets& sheets, const std::vector<PsiBranch>& branches,
                                           int samples, Exec exec)
{
    if (samples < 2) {
        throw std::invalid_argument("at least two samples per branch");
    }
    const std::size_t per = static_cast<std::size_t>(samples);
    std::vector<std::vector<Real>> xs(branches.size(), std::vector<Real>(per));
    std::vector<std::vector<Real>> ys(branches.size(), std::vector<Real>(per));
    for (std::size_t b = 0; b < branches.size(); ++b) {
        const Real lo = to_real(branches[b].domain().lo);
        const Real hi = to_real(branches[b].domain().hi);
        for (std::size_t i = 0; i < per; ++i) {
            xs[b][i] = i + 1 == per ? hi : lo + (hi - lo) * static_cast<Real>(i) / static_cast<Real>(per - 1);
        }
    }
    const long total = static_cast<long>(branches.size() * per);
    for_each_index(total, exec, [&](long k) {
        const std::size_t b = static_cast<std::size_t>(k) / per;
        const std::size_t i = static_cast<std::size_t>(k) % per;
        ys[b][i] = sheets.eval(branches[b], xs[b][i]);
    });
    std::vector<BranchTable> out;
    out.reserve(branches.size());
    for (std::size_t b = 0; b < branches.size(); ++b) {
        out.emplace_back(branches[b], std::move(xs[b]), std::move(ys[b]));
    }
    return out;
}

Real invert_phi(const PoincareFunction& phi, Real x, Real lo, Real hi)
{
    Real flo = phi(lo) - x;
    const Real fhi = phi(hi) - x;
    if (flo * fhi > 0) {
        throw DomainError("invert_phi: the interval does not bracket a preimage");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12L; ++it) {
        const Real mid = (lo + hi) / 2;
        const Real fm = phi(mid) - x;
        if ((fm <= 0) == (flo <= 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2;
}

// --- conjugates -------------------------------------------------------------

Real conjugate_psi(Conjugate kind, Real x, const Rational& s, int N)
{
    if (s == 2) {
        throw DomainError("conjugate Schroder functions need s != 2");
    }
    const Real sf = to_real(s);
    const Real dual = 2 - sf;
    if (kind == Conjugate::Star) {
        const PowerSeries<Real> star = psi_star_coefficients(sf, N);
        require_radius(x, std::fabs(dual / sf) * guard_radius(dual, N), "Psi*");
        return horner(star.coefficients, x);
    }
    const SchroderFunction psi(sf, N);
    return (1 - sf) / dual + sf / dual * psi.psi0((sf - 1 + dual * x) / sf);
}

Real psi_star_via_dual(Real x, const Rational& s, int N)
{
    if (s == 2) {
        throw DomainError("the dual parameter 2 - s must be nonzero");
    }
    const Real sf = to_real(s);
    const Real dual = 2 - sf;
    const SchroderFunction psi(dual, N);
    return dual / sf * psi.psi0(sf * x / dual);
}

// --- trajectory ---------------------------------------------------------------

Flow::Flow(const Rational& s, int N) : s_(to_real(s)), psi_(to_real(s), N), phi_(to_real(s), N)
{
    if (!(s > 1 && s <= 4)) {
        throw DomainError("trajectories need 1 < s <= 4");
    }
}

Real Flow::psi_start(Real x0) const
{
    if (!(x0 > 0 && x0 <= s_ / 4)) {
        throw DomainError("trajectory start must lie in (0, s/4]");
    }
    return psi_.psi0(x0);
}

Real Flow::position(Real x0, Real t) const
{
    return phi_(std::pow(s_, t) * psi_start(x0));
}

Real Flow::velocity(Real x0, Real t) const
{
    const Real w = std::pow(s_, t) * psi_start(x0);
    return std::log(s_) * w * phi_.derivative(w);
}

Trajectory trajectory(Real x0, const Rational& s, const std::vector<Real>& t_grid, int N, Exec exec)
{
    const Flow flow(s, N);
    Trajectory tr;
    tr.s = flow.s();
    tr.x0 = x0;
    tr.samples.resize(t_grid.size());
    flow.psi_start(x0);
    for_each_index(static_cast<long>(t_grid.size()), exec, [&](long i) {
        const Real t = t_grid[static_cast<std::size_t>(i)];
        tr.samples[static_cast<std::size_t>(i)] = {t, flow.position(x0, t)};
    });
    return tr;
}

Real velocity(Real x0, const Rational& s, Real t, int N)
{
    return Flow(s, N).velocity(x0, t);
}

}  // namespace schroder_lab
