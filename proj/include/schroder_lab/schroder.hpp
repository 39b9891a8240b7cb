#pragma once

#include "schroder_lab/algebra.hpp"
#include "schroder_lab/parallel.hpp"
#include "schroder_lab/potentials.hpp"
#include "schroder_lab/series.hpp"

#include <utility>
#include <vector>

namespace schroder_lab {

// Float-mode Schroder function about x = 0.
class SchroderFunction {
public:
    SchroderFunction(Real s, int N);

    Real s() const { return s_; }
    Real radius() const { return radius_; }
    const PowerSeries<Real>& series() const { return series_; }

    // Raw series; throws OutOfRadius beyond 99% of the radius.
    Real series_value(Real x) const;
    Real series_derivative(Real x) const;

    // Primary branch Psi_0. For s > 1 and x <= s/4 this is
    // s Psi(1/2 - 1/2 sqrt(1 - 4x/s)), which keeps the series argument small
    // up to x = s/4; otherwise the raw series.
    Real psi0(Real x) const;
    Real psi0_derivative(Real x) const;

private:
    Real s_;
    PowerSeries<Real> series_;
    Real radius_;
};

// Phi = Psi^{-1} from the series about 0 plus functional extension.
class PoincareFunction {
public:
    PoincareFunction(Real s, int N);

    Real s() const { return s_; }

    // Smallest k with |x| |s|^{-k} < 0.1 (|s| > 1) or |x| |s|^k < 0.1 (|s| < 1),
    // capped at 60; throws NonConvergence past the cap.
    int iterates_for(Real x) const;

    // Series at x / s^k, then k applications of Phi(x) = s Phi(x/s) (1 - Phi(x/s)).
    // For |s| < 1 the steps go the other way with the '-' root of
    // Phi(x) = 1/2 (1 - sqrt(1 - 4 Phi(s x) / s)).
    Real eval(Real x, int iterates) const;
    Real operator()(Real x) const { return eval(x, iterates_for(x)); }

    // Phi'(x) by the chain rule through the same extension steps.
    Real derivative(Real x) const;
    // (Phi(x), Phi'(x)) together.
    std::pair<Real, Real> value_and_derivative(Real x) const;

    Real series_value(Real x) const;

private:
    Real s_;
    PowerSeries<Real> series_;
};

// Scalar front end: Phi(x) with an explicit number of extension iterates.
// Needs |s| > 1.
Scalar eval_phi(const Scalar& x, const Scalar& s, int N, int iterates);

// One descent step Phi_{+-}(x) = 1/2 (1 +- sqrt(1 - (4/s) Phi(s x))) for s < 1.
// Throws DomainError for s >= 1 or a negative radicand.
Real eval_phi_descend(Real x, Real s, Sign sign, int N);

// One sheet of the multi-valued Psi: Psi_node(x) = s^L Psi_0(x_L), where x_L
// is x walked down the node's recipe.
struct PsiBranch {
    int index = 0;
    Rational s;
    PotentialNode node;
    Rational entry;  // where the particle arrives on this sheet
    Rational exit;   // where it leaves (shared with the next sheet)
    const EvalDomain& domain() const { return node.domain; }
    const std::vector<Sign>& recipe() const { return node.recipe; }
};

// The first `count` sheets in the order the evolving particle meets them
// (the chemin order): V_0, V_1, V_2, W_1, W_2, V_3, X_1, X_2, ... at s=10/3.
// Needs 2 < s <= 4.
std::vector<PsiBranch> psi_branches(const Rational& s, int count);

class PsiSheets {
public:
    PsiSheets(const Rational& s, int N);

    const SchroderFunction& schroder() const { return psi_; }
    const PotentialModel& model() const { return model_; }

    Real eval(const PotentialNode& node, Real x) const;
    Real eval(const PsiBranch& b, Real x) const { return eval(b.node, x); }

    // s Psi_node(x) - Psi_next(f(x)), where next is node with one more
    // substitution whose sign matches the side of 1/2 that x lies on.
    Real sfe_residual(const PotentialNode& node, Real x) const;

private:
    SchroderFunction psi_;
    PotentialModel model_;
};

// A sheet sampled on a uniform grid with monotone (Fritsch-Carlson) cubic
// interpolation between samples.
class BranchTable {
public:
    BranchTable(PsiBranch branch, std::vector<Real> x, std::vector<Real> y);

    const PsiBranch& branch() const { return branch_; }
    const std::vector<Real>& x() const { return x_; }
    const std::vector<Real>& y() const { return y_; }
    bool covers(Real x) const { return x >= x_.front() && x <= x_.back(); }
    // Throws DomainError outside the tabulated interval.
    Real operator()(Real x) const;

private:
    PsiBranch branch_;
    std::vector<Real> x_;
    std::vector<Real> y_;
    std::vector<Real> slope_;
};

constexpr int kBranchSamples = 512;

std::vector<BranchTable> tabulate_branches(const PsiSheets& sheets, const std::vector<PsiBranch>& branches,
                                           int samples = kBranchSamples, Exec exec = Exec::Parallel);

// Inverts Phi on [lo, hi] by bisection to 1e-12 in y, where Phi is monotone
// and Phi(lo) - x, Phi(hi) - x bracket a root.
Real invert_phi(const PoincareFunction& phi, Real x, Real lo, Real hi);

enum class Conjugate { Star, G };

// Star: the Schroder series about the fixed point 1 - 1/s, taken in the
// displacement x from that point. Built from its own recursion with
// lambda = 2 - s; guard radius |s*/s| times that of the dual series.
// G: (1-s)/(2-s) + s/(2-s) Psi_0((s - 1 + (2-s) x)/s).
// Throws DomainError for s = 2.
Real conjugate_psi(Conjugate kind, Real x, const Rational& s, int N);

// The right-hand side of the star/zero theorem: (s*/s) Psi_0(s x / s*, s*).
Real psi_star_via_dual(Real x, const Rational& s, int N);

struct Trajectory {
    Real s = 0;
    Real x0 = 0;
    std::vector<std::pair<Real, Real>> samples;  // (t, x(t))
};

// x(t) = Phi(s^t Psi_0(x0)) and its time derivative.
class Flow {
public:
    Flow(const Rational& s, int N);

    Real s() const { return s_; }
    // Psi_0(x0); needs 0 < x0 <= s/4.
    Real psi_start(Real x0) const;
    Real position(Real x0, Real t) const;
    // (ln s) s^t Psi_0(x0) Phi'(s^t Psi_0(x0)).
    Real velocity(Real x0, Real t) const;

private:
    Real s_;
    SchroderFunction psi_;
    PoincareFunction phi_;
};

// Throws DomainError unless 1 < s <= 4 and 0 < x0 <= s/4.
Trajectory trajectory(Real x0, const Rational& s, const std::vector<Real>& t_grid, int N,
                      Exec exec = Exec::Parallel);
Real velocity(Real x0, const Rational& s, Real t, int N);

}  // namespace schroder_lab
