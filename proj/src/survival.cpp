#include "ruinkit/survival.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ruinkit/errors.hpp"

namespace ruinkit {

namespace {

// Least squares of ln g against ln u over nodes with u >= u_max/10.
TailFit fit_tail(const SolutionGrid& grid) {
    const double u_lo = grid.u_max() / 10.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    for (std::size_t i = 1; i < grid.nodes.size(); ++i) {
        if (grid.nodes[i] < u_lo || grid.g1[i] <= 0.0) continue;
        const double x = std::log(grid.nodes[i]);
        const double y = std::log(grid.g1[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++count;
    }
    if (count < 8)
        throw SolverError(SolverError::Kind::TailNotIntegrable,
                          "too few positive tail nodes for the decay fit");
    const double nn = static_cast<double>(count);
    const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / nn;

    double res_min = std::numeric_limits<double>::infinity();
    double res_max = -res_min;
    for (std::size_t i = 1; i < grid.nodes.size(); ++i) {
        if (grid.nodes[i] < u_lo || grid.g1[i] <= 0.0) continue;
        const double res =
            std::log(grid.g1[i]) - (intercept + slope * std::log(grid.nodes[i]));
        res_min = std::min(res_min, res);
        res_max = std::max(res_max, res);
    }
    return TailFit{-slope, intercept, res_max - res_min};
}

} // namespace

G1Integral integrate_g1(const SolutionGrid& grid) {
    const bool all_zero =
        std::all_of(grid.g1.begin(), grid.g1.end(), [](double v) { return v == 0.0; });
    if (all_zero) return {};

    G1Integral out;
    for (std::size_t i = 0; i + 1 < grid.g1.size(); ++i)
        out.grid_part += 0.5 * grid.h * (grid.g1[i] + grid.g1[i + 1]);

    const TailFit fit = fit_tail(grid);
    if (fit.exponent <= 1.02) {
        std::ostringstream os;
        os << "tail not integrable-looking: fitted decay exponent " << fit.exponent
           << " <= 1.02 (u_max too small or solver failure)";
        throw SolverError(SolverError::Kind::TailNotIntegrable, os.str());
    }
    out.tail_part = std::exp(fit.log_coeff + (1.0 - fit.exponent) * std::log(grid.u_max())) /
                    (fit.exponent - 1.0);
    out.fit = fit;
    return out;
}

double normalize(double I1) {
    if (!(I1 >= 0.0) || !std::isfinite(I1))
        throw std::invalid_argument("normalize requires finite I1 >= 0");
    return 1.0 / (1.0 + I1);
}

SurvivalCurve assemble(const SolutionGrid& grid) {
    SurvivalCurve curve;
    curve.nodes = grid.nodes;
    curve.I1 = integrate_g1(grid);
    curve.phi0 = normalize(curve.I1.total());

    const std::size_t n = grid.nodes.size();
    curve.phi.resize(n);
    curve.psi.resize(n);
    double cumulative = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) cumulative += 0.5 * grid.h * (grid.g1[i - 1] + grid.g1[i]);
        curve.psi[i] = curve.phi0 * (curve.I1.total() - cumulative);
        curve.phi[i] = 1.0 - curve.psi[i];
    }

    if (curve.I1.fit) {
        const TailFit& fit = *curve.I1.fit;
        curve.tail_exponent = fit.exponent;
        // Honest (not rigorous) bound: extrapolated mass scaled by the fit's
        // residual spread plus a one-cell resolution term.
        const double resolution = fit.exponent * grid.h / grid.u_max();
        curve.tail_error_bound =
            curve.phi0 * curve.I1.tail_part * (fit.residual_spread + resolution);
    } else {
        curve.tail_exponent = std::numeric_limits<double>::quiet_NaN();
        curve.tail_error_bound = 0.0;
    }
    return curve;
}

double interp_at(const std::vector<double>& nodes, const std::vector<double>& values,
                 double u) {
    if (u < nodes.front() || u > nodes.back())
        throw std::domain_error("interp_at: point outside the grid");
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), u);
    if (it == nodes.end()) return values.back();
    const std::size_t hi = static_cast<std::size_t>(it - nodes.begin());
    if (hi == 0) return values.front();
    const double t = (u - nodes[hi - 1]) / (nodes[hi] - nodes[hi - 1]);
    return (1.0 - t) * values[hi - 1] + t * values[hi];
}

} // namespace ruinkit
