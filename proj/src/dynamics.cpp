#include "schroder_lab/dynamics.hpp"

#include "schroder_lab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace schroder_lab {

Orbit map_iterate(const Rational& x0, const Rational& s, int k)
{
    if (k < 0) {
        throw std::invalid_argument("iterate count must be non-negative");
    }
    Orbit o{s, x0, {}};
    o.points.reserve(static_cast<std::size_t>(k));
    Rational x = x0;
    for (int i = 0; i < k; ++i) {
        x = logistic_map(x, s);
        o.points.push_back(x);
    }
    return o;
}

std::pair<Rational, Rational> fixed_points(const Rational& s)
{
    if (sgn(s) == 0) {
        throw DomainError("fixed points need s != 0");
    }
    return {Rational(0), Rational(1 - 1 / s)};
}

std::optional<std::pair<Real, Real>> two_cycle(const Rational& s)
{
    if (s <= 3) {
        return std::nullopt;
    }
    // f(f(x)) - x = -x (s x - (s-1)) (s^2 x^2 - s(s+1) x + (s+1)).
    const Real sf = to_real(s);
    const Real root = std::sqrt((sf + 1) * (sf - 3));
    return std::make_pair((sf + 1 - root) / (2 * sf), (sf + 1 + root) / (2 * sf));
}

namespace {

// Width of the endpoint sliver replaced by the local model, relative to the
// leg length.
constexpr Real kSliver = 1e-7L;

struct EndModel {
    bool singular = false;
    Real delta0 = 0;
    Real alpha = 0;
    Real beta = 0;

    Real integrand(Real d) const { return 1 / std::sqrt(d * (alpha + beta * d)); }
};

EndModel fit_end(const PotentialModel& model, const PotentialNode& node, bool lower, Real delta0)
{
    EndModel m;
    m.singular = true;
    m.delta0 = delta0;
    const Real q1 = model.minus_V_offset(node, lower, delta0);
    const Real q2 = model.minus_V_offset(node, lower, delta0 / 2);
    m.beta = 2 * (q1 - 2 * q2) / (delta0 * delta0);
    m.alpha = (q1 - m.beta * delta0 * delta0) / delta0;
    if (!(m.alpha > 0)) {
        throw DomainError(node.name() + ": turning point is not a simple zero of V");
    }
    return m;
}

}  // namespace

TransitResult transit_time(const PotentialModel& model, const PotentialNode& node, const Rational& a,
                           const Rational& b)
{
    if (a == b) {
        return {};
    }
    if (a > b) {
        return transit_time(model, node, b, a);
    }
    if (!node.domain.contains(a) || !node.domain.contains(b)) {
        throw ComplexValued(node.name() + ": transit interval leaves [" + to_string(node.lower_tp()) + ", " +
                                to_string(node.upper_tp()) + "]",
                            to_real(a), to_real(b));
    }
    const Real width = to_real(Rational(b - a));
    const Real delta0 = kSliver * width;
    const bool lo_singular = a == node.lower_tp() || a == node.upper_tp();
    const bool hi_singular = b == node.lower_tp() || b == node.upper_tp();
    const EndModel lo = lo_singular ? fit_end(model, node, a == node.lower_tp(), delta0) : EndModel{};
    const EndModel hi = hi_singular ? fit_end(model, node, b == node.lower_tp(), delta0) : EndModel{};
    const Real af = to_real(a);
    const Real bf = to_real(b);

    auto f = [&](Real x, Real d_lo, Real d_hi) -> Real {
        if (lo.singular && d_lo < lo.delta0) {
            return lo.integrand(d_lo);
        }
        if (hi.singular && d_hi < hi.delta0) {
            return hi.integrand(d_hi);
        }
        // Offsets from the nearer endpoint keep x accurate there.
        const Real xx = d_lo <= d_hi ? af + d_lo : bf - d_hi;
        (void)x;
        const Real q = -model.V(node, xx);
        if (!(q > 0)) {
            throw DomainError(node.name() + ": -V <= 0 inside the transit interval at x = " +
                              std::to_string(static_cast<double>(xx)));
        }
        return 1 / std::sqrt(q);
    };
    const QuadratureResult q = tanh_sinh(f, af, bf);
    return TransitResult{q.value, q.difference, q.levels, q.evaluations};
}

// --- chemin -----------------------------------------------------------------

namespace {

std::vector<PotentialNode> group_nodes(const Rational& s, int g)
{
    std::vector<PotentialNode> nodes;
    if (g == 0) {
        nodes.push_back(family_node(0, 0, s));
        return nodes;
    }
    for (int m = 0; m < g; ++m) {
        try {
            nodes.push_back(family_node(m, g - m, s));
        } catch (const ComplexValued&) {
        }
    }
    return nodes;
}

// Depth-first search for an ordering of `nodes` that starts at `start` and
// crosses each node's full interval, consecutive legs sharing an endpoint.
bool find_path(const std::vector<PotentialNode>& nodes, const Rational& start, std::vector<bool>& used,
               std::vector<CheminLeg>& path)
{
    if (path.size() == nodes.size()) {
        return true;
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (used[i]) {
            continue;
        }
        const auto& d = nodes[i].domain;
        const Rational* other = nullptr;
        if (d.lo == start) {
            other = &d.hi;
        } else if (d.hi == start) {
            other = &d.lo;
        }
        if (other == nullptr) {
            continue;
        }
        used[i] = true;
        path.push_back(CheminLeg{nodes[i], start, *other});
        if (find_path(nodes, *other, used, path)) {
            return true;
        }
        path.pop_back();
        used[i] = false;
    }
    return false;
}

}  // namespace

CheminSchedule build_chemin(const Rational& s, int last)
{
    if (s <= 2 || s > 4) {
        throw DomainError("the chemin is built for 2 < s <= 4");
    }
    if (last < 0) {
        throw std::invalid_argument("group count must be non-negative");
    }
    CheminSchedule schedule{s, {}};
    const Rational half(1, 2);
    Rational position = half;
    for (int g = 0; g <= last; ++g) {
        CheminGroup group;
        group.order = g;
        const std::vector<PotentialNode> nodes = group_nodes(s, g);
        if (g == 0) {
            group.legs.push_back(CheminLeg{nodes.front(), half, Rational(s / 4)});
        } else {
            std::vector<bool> used(nodes.size(), false);
            if (nodes.empty() || !find_path(nodes, position, used, group.legs)) {
                throw ScheduleInconsistency("no path through the m+n=" + std::to_string(g) + " nodes starts at " +
                                            to_string(position));
            }
        }
        position = group.legs.back().to;
        // The published path stops at the five-member group.
        group.extrapolated = g > 5 && s > 3;
        for (const auto& leg : group.legs) {
            group.extrapolated = group.extrapolated || leg.node.extrapolated();
        }
        schedule.groups.push_back(std::move(group));
    }
    return schedule;
}

std::vector<std::vector<TransitResult>> chemin_transits(const CheminSchedule& schedule, const PotentialModel& model,
                                                        Exec exec)
{
    std::vector<std::vector<TransitResult>> out(schedule.groups.size());
    std::vector<std::pair<std::size_t, std::size_t>> flat;
    for (std::size_t g = 0; g < schedule.groups.size(); ++g) {
        out[g].resize(schedule.groups[g].legs.size());
        for (std::size_t k = 0; k < schedule.groups[g].legs.size(); ++k) {
            flat.emplace_back(g, k);
        }
    }
    for_each_index(static_cast<long>(flat.size()), exec, [&](long i) {
        const auto [g, k] = flat[static_cast<std::size_t>(i)];
        const CheminLeg& leg = schedule.groups[g].legs[k];
        out[g][k] = transit_time(model, leg.node, leg.from, leg.to);
    });
    return out;
}

VerificationReport verify_chemin(const CheminSchedule& schedule, int N, Exec exec)
{
    VerificationReport report;
    if (schedule.groups.empty()) {
        return report;
    }
    const PotentialModel model(schedule.s, N);
    const auto transits = chemin_transits(schedule, model, exec);
    const double tol = schedule.s <= 3 ? 1e-5 : 2e-4;
    for (std::size_t g = 0; g < schedule.groups.size(); ++g) {
        const CheminGroup& group = schedule.groups[g];
        Real total = 0;
        std::string names;
        for (std::size_t k = 0; k < group.legs.size(); ++k) {
            const CheminLeg& leg = group.legs[k];
            total += transits[g][k].value;
            names += (k ? "+" : "") + leg.node.name();
            if (group.legs.size() == 1) {
                names += " " + to_string(leg.from) + " -> " + to_string(leg.to);
                continue;
            }
            report.add("leg " + leg.node.name() + " " + to_string(leg.from) + " -> " + to_string(leg.to), nullptr,
                       static_cast<double>(transits[g][k].value), 0, true);
        }
        report.add_close("group " + std::to_string(group.order) + " (" + names + ") total" +
                             (group.extrapolated ? " [extrapolated]" : ""),
                         1.0, static_cast<double>(total), tol);
    }
    return report;
}

}  // namespace schroder_lab
