#include "ruinkit/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ruinkit/errors.hpp"
#include "ruinkit/summation.hpp"

namespace ruinkit {

namespace {

std::vector<double> tabulate_tail(const ClaimDistribution& d, double h, std::size_t n) {
    std::vector<double> tails(n + 1);
    for (std::size_t j = 0; j <= n; ++j) tails[j] = d.tail(h * static_cast<double>(j));
    return tails;
}

// (Bg)(t_i) from cached tail values; scratch holds the products for the
// pairwise reduction.
double convolve_cached(std::span<const double> g, std::span<const double> tails,
                       std::size_t i, double h, std::vector<double>& scratch) {
    if (i == 0) return 0.0;
    scratch.resize(i + 1);
    scratch[0] = 0.5 * g[i] * tails[0];
    for (std::size_t j = 1; j < i; ++j) scratch[j] = g[i - j] * tails[j];
    scratch[i] = 0.5 * g[0] * tails[i];
    return h * pairwise_sum(scratch);
}

} // namespace

void SolverConfig::validate() const {
    if (!(u_max > 0.0)) throw std::invalid_argument("solver u_max must be > 0");
    if (n < 2) throw std::invalid_argument("solver n must be >= 2");
    if (!(u0_init > 0.0 && u0_init < u_max))
        throw std::invalid_argument("solver u0_init must lie in (0, u_max)");
    if (!(picard_tol > 0.0)) throw std::invalid_argument("picard_tol must be > 0");
    if (!(contraction_target > 0.0 && contraction_target < 1.0))
        throw std::invalid_argument("contraction_target must lie in (0, 1)");
}

SolverConfig SolverConfig::resolved(const DerivedParams& dp,
                                    const ClaimDistribution& d) const {
    SolverConfig out = *this;
    if (out.u_max <= 0.0)
        out.u_max = 50.0 * std::max({1.0, d.mean_or(1.0), dp.alpha / dp.gamma});
    if (out.u0_init <= 0.0)
        out.u0_init = 0.25 * std::min(1.0, dp.alpha / dp.gamma);
    out.u0_init = std::min(out.u0_init, 0.5 * out.u_max);
    out.validate();
    return out;
}

double convolve(std::span<const double> g, const ClaimDistribution& d, std::size_t i,
                double h) {
    if (i >= g.size()) throw std::out_of_range("convolve: node index out of range");
    std::vector<double> scratch;
    std::vector<double> tails(i + 1);
    for (std::size_t j = 0; j <= i; ++j) tails[j] = d.tail(h * static_cast<double>(j));
    return convolve_cached(g, tails, i, h, scratch);
}

// Local solve of g = T g on [0, u0] by Picard iteration, with
//   (T g)(u) = mu u^(-gamma) e^{alpha/u} integral_0^u w(t) (phi0 tail(t) + (Bg)(t)) dt.
// The weighted integral and the division are evaluated together in shifted
// form (every exponent relative to alpha/u), which is exact algebra and keeps
// all intermediates normal. If the empirical iterate ratio exceeds the target,
// u0 is halved and the iteration restarts.
PicardLocal picard_local(const DerivedParams& dp, const ClaimDistribution& d,
                         const SolverConfig& cfg, const WeightCells& cells,
                         double phi0) {
    const double h = cells.h();
    const double g_origin = dp.mu * phi0 / dp.alpha; // L'Hopital value lambda*phi0/c
    auto i0 = static_cast<std::size_t>(std::llround(cfg.u0_init / h));
    i0 = std::clamp<std::size_t>(i0, 1, cells.cells() - 1);

    PicardInfo info;
    std::vector<double> scratch;
    while (true) {
        const std::size_t m = i0; // solving on nodes 0..m
        std::vector<double> g(m + 1, g_origin);
        std::vector<double> g_next(m + 1, g_origin);
        std::vector<double> psi(m + 1);
        std::vector<double> tails(m + 1);
        for (std::size_t j = 0; j <= m; ++j) tails[j] = d.tail(h * static_cast<double>(j));

        info.sup_diffs.clear();
        bool converged = false;
        bool needs_shrink = false;
        for (std::size_t iter = 0; iter < cfg.picard_max_iter; ++iter) {
            for (std::size_t j = 0; j <= m; ++j)
                psi[j] = phi0 * tails[j] + convolve_cached(g, tails, j, h, scratch);
            for (std::size_t k = 1; k <= m; ++k) {
                const double tk = cells.node(k);
                const double inv_tk = dp.alpha / tk;
                double acc = 0.0;
                for (std::size_t j = 0; j < k; ++j) {
                    const double shift = inv_tk - dp.alpha / cells.node(j + 1);
                    acc += std::exp(shift) *
                           (cells.shifted_a(j) * psi[j] + cells.shifted_b(j) * psi[j + 1]);
                }
                g_next[k] = dp.mu * acc * std::exp(-dp.gamma * std::log(tk));
            }
            g_next[0] = g_origin;

            double diff = 0.0;
            for (std::size_t j = 0; j <= m; ++j)
                diff = std::max(diff, std::abs(g_next[j] - g[j]));
            g.swap(g_next);
            info.sup_diffs.push_back(diff);
            ++info.iterations;
            if (diff < cfg.picard_tol) {
                converged = true;
                break;
            }
            const std::size_t k = info.sup_diffs.size();
            // Ratios are only meaningful while the differences sit clearly
            // above the stopping tolerance.
            if (k >= 2 && info.sup_diffs[k - 2] > 50.0 * cfg.picard_tol) {
                const double ratio = info.sup_diffs[k - 1] / info.sup_diffs[k - 2];
                if (ratio > cfg.contraction_target) {
                    needs_shrink = true;
                    break;
                }
            }
        }

        if (converged)
            return PicardLocal{std::move(g), m, cells.node(m), std::move(info)};
        if (!needs_shrink)
            throw SolverError(SolverError::Kind::MaxIterations,
                              "picard iteration cap reached before tolerance");
        if (info.halvings >= 20 || i0 == 1) {
            std::ostringstream os;
            os << "no contraction on [0, " << cells.node(i0)
               << "] after " << info.halvings << " halvings";
            throw SolverError(SolverError::Kind::NoContraction, os.str());
        }
        i0 = std::max<std::size_t>(1, i0 / 2);
        ++info.halvings;
    }
}

// Forward march of H(u) = u^gamma e^{-alpha/u} g(u):
//   H(t_{i+1}) = H(t_i) + mu integral_cell w(t) (phi0 tail + Bg)(t) dt,
// with the integrand linear per cell. The unknown g(t_{i+1}) enters the cell
// endpoint through the convolution's trapezoid term (h/2) g(t_{i+1}) tail(0),
// giving one scalar linear equation per step. The recurrence below is the
// same equation divided through by t_{i+1}^gamma e^{-alpha/t_{i+1}}.
SolutionGrid march_global(const PicardLocal& local, const DerivedParams& dp,
                          const ClaimDistribution& d, const SolverConfig& cfg,
                          const WeightCells& cells, double phi0) {
    const std::size_t n = cells.cells();
    const double h = cells.h();
    const std::size_t i0 = local.i0;
    const std::vector<double> tails = tabulate_tail(d, h, n);

    SolutionGrid grid;
    grid.dp = dp;
    grid.phi0_free_term = phi0;
    grid.h = h;
    grid.u0_used = local.u0_used;
    grid.u0_index = i0;
    grid.picard = local.info;
    grid.nodes.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) grid.nodes[i] = cells.node(i);

    std::vector<double>& g = grid.g1;
    g = local.g;
    g.resize(n + 1, 0.0);

    std::vector<double> scratch;
    std::vector<double> psi(n + 1, 0.0);
    for (std::size_t j = 0; j <= i0; ++j)
        psi[j] = phi0 * tails[j] + convolve_cached(g, tails, j, h, scratch);

    for (std::size_t i = i0; i < n; ++i) {
        const double t_i = grid.nodes[i];
        const double t_next = grid.nodes[i + 1];
        const double inv_pow = std::exp(-dp.gamma * std::log(t_next));
        const double a_hat = cells.shifted_a(i) * inv_pow;
        const double b_hat = cells.shifted_b(i) * inv_pow;

        const double endpoint_coef = dp.mu * b_hat * 0.5 * h * tails[0];
        if (endpoint_coef >= 1.0)
            throw SolverError(SolverError::Kind::StepNotContractive,
                              "march endpoint coefficient >= 1; refine the grid");

        // known part of (Bg)(t_{i+1}): all terms except (h/2) g_{i+1} tail(0)
        scratch.resize(i + 1);
        for (std::size_t j = 1; j <= i; ++j) scratch[j - 1] = g[i + 1 - j] * tails[j];
        scratch[i] = 0.5 * g[0] * tails[i + 1];
        const double bg_known = h * pairwise_sum(scratch);

        const double carry =
            g[i] * std::exp(dp.gamma * std::log(t_i / t_next) - dp.alpha * h / (t_i * t_next));
        const double g_next =
            (carry + dp.mu * (a_hat * psi[i] + b_hat * (phi0 * tails[i + 1] + bg_known))) /
            (1.0 - endpoint_coef);

        if (dp.mu > 0.0 && !(g_next > 0.0)) {
            std::ostringstream os;
            os << "non-positive solution g(" << t_next << ") = " << g_next;
            throw SolverError(SolverError::Kind::NonPositiveSolution, os.str());
        }
        g[i + 1] = g_next;
        psi[i + 1] = phi0 * tails[i + 1] + bg_known + 0.5 * h * g_next * tails[0];
    }

    // Final sweeps: the stored convolution column and the accumulated H with
    // raw (unshifted) cell moments, whose non-negative increments keep H
    // monotone exactly as computed.
    grid.Bg.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j)
        grid.Bg[j] = convolve_cached(g, tails, j, h, scratch);
    grid.H.assign(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double e = -dp.alpha / grid.nodes[j + 1];
        const double psi_l = phi0 * tails[j] + grid.Bg[j];
        const double psi_r = phi0 * tails[j + 1] + grid.Bg[j + 1];
        const double inc =
            e < cells.weight().log_floor
                ? 0.0
                : std::exp(e) * dp.mu *
                      (cells.shifted_a(j) * psi_l + cells.shifted_b(j) * psi_r);
        grid.H[j + 1] = grid.H[j] + inc;
    }
    return grid;
}

SolutionGrid solve_scaled(const DerivedParams& dp, const ClaimDistribution& d,
                          const SolverConfig& cfg, double phi0) {
    const SolverConfig rc = cfg.resolved(dp, d);
    const WeightCells cells(dp, rc.u_max, rc.n);
    const PicardLocal local = picard_local(dp, d, rc, cells, phi0);
    return march_global(local, dp, d, rc, cells, phi0);
}

SolutionGrid solve_g1(const ModelParams& m, const ClaimDistribution& d,
                      const SolverConfig& cfg) {
    const AssumptionReport rep = check_assumptions(m, d);
    if (!rep.solver_admissible()) throw AssumptionError(rep.detail);
    return solve_scaled(derive_params(m), d, cfg, 1.0);
}

} // namespace ruinkit
