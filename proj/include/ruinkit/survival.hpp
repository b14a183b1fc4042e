#ifndef RUINKIT_SURVIVAL_HPP
#define RUINKIT_SURVIVAL_HPP

#include <optional>
#include <vector>

#include "ruinkit/volterra.hpp"

namespace ruinkit {

// Power-law fit A u^(-p) of g1 over the last decade of the grid.
struct TailFit {
    double exponent = 0.0;  // p, must exceed 1 for an integrable-looking tail
    double log_coeff = 0.0; // ln A
    double residual_spread = 0.0; // max-min of the log-log fit residuals
};

struct G1Integral {
    double grid_part = 0.0; // trapezoid over [0, u_max]
    double tail_part = 0.0; // extrapolated A u_max^(1-p) / (p-1)
    std::optional<TailFit> fit;

    double total() const { return grid_part + tail_part; }
};

struct SurvivalCurve {
    std::vector<double> nodes;
    std::vector<double> phi;
    std::vector<double> psi;
    double phi0 = 1.0;
    G1Integral I1;
    double tail_exponent = 0.0;    // NaN when no fit (lambda = 0)
    double tail_error_bound = 0.0; // bound on the extrapolated mass
};

// Trapezoid of g1 plus the fitted power-law tail beyond u_max.
// Throws SolverError(TailNotIntegrable) when the fitted exponent is <= 1.02.
G1Integral integrate_g1(const SolutionGrid& grid);

// Phi(0+) = 1 / (1 + I1).
double normalize(double I1);

// Assembles Phi and Psi on the grid nodes. Psi is accumulated from the far
// end (phi0 * (I1 - cumulative integral)), which is exact algebra but free of
// the 1 - Phi cancellation; Phi is then 1 - Psi so the pair sums to 1 exactly.
SurvivalCurve assemble(const SolutionGrid& grid);

// Linear interpolation helpers on the shared node grid.
double interp_at(const std::vector<double>& nodes, const std::vector<double>& values,
                 double u);

} // namespace ruinkit

#endif
