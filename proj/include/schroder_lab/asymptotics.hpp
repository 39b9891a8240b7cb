#pragma once

#include "schroder_lab/algebra.hpp"

#include <vector>

namespace schroder_lab {

// |c_n|^{1/n} for the s=1 series against f_n^{1/n}, f_n = 2^{-n/2} e^{-3n/2} n!.
struct GrowthDiagnostic {
    int n_min = 1;
    int n_max = 0;
    std::vector<Real> root;            // |c_n|^{1/n}, index n - n_min
    std::vector<Real> reference_root;  // f_n^{1/n}
    std::vector<Real> log_abs_c;       // ln |c_n|
    std::vector<Real> log_f;           // ln f_n

    Real root_at(int n) const { return root[static_cast<std::size_t>(n - n_min)]; }
    Real reference_root_at(int n) const { return reference_root[static_cast<std::size_t>(n - n_min)]; }
};

// Exact c_1..c_N (N >= 100), reduced to logs.
GrowthDiagnostic growth_analysis(int N);

// Least-squares slope of ln|c_n| over [lo, hi] divided by that of ln f_n.
Real slope_ratio(const GrowthDiagnostic& g, int lo, int hi);

// L in |c_n| ~ L^n exp(n ln n) from a least-squares fit of
// ln|c_n| - n ln n = n ln L + b.
Real fitted_L(const GrowthDiagnostic& g, int lo, int hi);

// ln f_n.
Real log_f(int n);

struct PvOptions {
    // Half-width of the excised interval around the pole, relative to y0.
    Real excision = 1e-3L;
    // Single half-line quadrature instead of the split at 2|y0|; only for x <= 0.
    bool force_direct = false;
};

// I(x) = PV int_0^inf e^{-y} / (1 - x y / sqrt(2 e^3)) dy.
// For x > 0 the pole y0 = sqrt(2e^3)/x is handled by pairing y0 +- u, which
// turns the integrand into -2 e^{-y0} sinh(u)/u; |u| < excision y0 is summed
// from the odd Taylor series. Throws NonConvergence.
Real pv_integral(Real x, const PvOptions& opt = {});

}  // namespace schroder_lab
