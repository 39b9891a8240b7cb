#pragma once

#include "schroder_lab/algebra.hpp"
#include "schroder_lab/parallel.hpp"
#include "schroder_lab/potentials.hpp"
#include "schroder_lab/quadrature.hpp"
#include "schroder_lab/report.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace schroder_lab {

inline Rational logistic_map(const Rational& x, const Rational& s)
{
    return Rational(s * x * (1 - x));
}

inline Real logistic_map(Real x, Real s)
{
    return s * x * (1 - x);
}

struct Orbit {
    Rational s;
    Rational x0;
    std::vector<Rational> points;  // points[k] = f^{k+1}(x0)
};

Orbit map_iterate(const Rational& x0, const Rational& s, int k);

// (0, 1 - 1/s). Throws DomainError for s = 0.
std::pair<Rational, Rational> fixed_points(const Rational& s);

// The period-2 orbit (s + 1 -+ sqrt((s+1)(s-3))) / (2s), ascending; empty for
// s <= 3.
std::optional<std::pair<Real, Real>> two_cycle(const Rational& s);

struct TransitResult {
    Real value = 0;
    Real difference = 0;
    int levels = 0;
    long evaluations = 0;
};

// Integral of dx / sqrt(-V_node) over [a, b]. An endpoint equal to one of the
// node's turning points is treated as an inverse-square-root singularity:
// within a sliver of width 1e-7 (b - a) the integrand is replaced by the local
// model 1/sqrt(alpha d + beta d^2) fitted to -V at the sliver edge.
// a > b integrates in the other direction. Throws DomainError if -V < 0
// inside the interval, NonConvergence if the levels do not settle.
TransitResult transit_time(const PotentialModel& model, const PotentialNode& node, const Rational& a,
                           const Rational& b);

struct CheminLeg {
    PotentialNode node;
    Rational from;
    Rational to;
};

// Group g holds every real node with m + n = g (n >= 1), or {V_0} for g = 0,
// ordered as a path whose consecutive legs share a turning point.
struct CheminGroup {
    int order = 0;
    std::vector<CheminLeg> legs;
    bool extrapolated = false;
};

struct CheminSchedule {
    Rational s;
    std::vector<CheminGroup> groups;
};

// Groups 0..last. Group 0 runs V_0 from 1/2 to s/4; each later group starts
// where the previous one ended and crosses every node's full interval.
// Throws DomainError outside 2 < s <= 4 and ScheduleInconsistency when no
// path through a group matches up turning points.
CheminSchedule build_chemin(const Rational& s, int last);

// Transit time of every leg, computed independently (in parallel under
// Exec::Parallel); the order of the result follows the schedule.
std::vector<std::vector<TransitResult>> chemin_transits(const CheminSchedule& schedule, const PotentialModel& model,
                                                        Exec exec = Exec::Parallel);

// Per-group check that the legs sum to one time unit: 1e-5 for s <= 3, 2e-4
// above (the N=200 truncation error grows as the radius s/4 approaches the
// evaluation points). Legs of multi-leg groups are reported too, without a
// tolerance.
VerificationReport verify_chemin(const CheminSchedule& schedule, int N, Exec exec = Exec::Parallel);

}  // namespace schroder_lab
