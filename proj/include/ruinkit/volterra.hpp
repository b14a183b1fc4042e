#ifndef RUINKIT_VOLTERRA_HPP
#define RUINKIT_VOLTERRA_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "ruinkit/model.hpp"
#include "ruinkit/quadrature.hpp"

namespace ruinkit {

struct SolverConfig {
    double u_max = 0.0;            // reserve truncation; 0 -> auto
    std::size_t n = 1 << 14;       // number of grid cells (nodes are n+1)
    double u0_init = 0.0;          // initial local interval; 0 -> min(1, alpha/gamma)/4
    double picard_tol = 1e-12;     // sup-norm stopping tolerance
    std::size_t picard_max_iter = 200;
    double contraction_target = 0.5; // acceptable empirical iterate ratio

    void validate() const;
    // Fills the auto fields from the model; u_max falls back to
    // 50 * max(1, mean claim, alpha/gamma).
    SolverConfig resolved(const DerivedParams& dp, const ClaimDistribution& d) const;
};

// Convergence trace of the local fixed-point stage.
struct PicardInfo {
    std::vector<double> sup_diffs; // sup-norm of successive iterate differences
    std::size_t iterations = 0;
    std::size_t halvings = 0;      // u0 auto-shrink count
};

// Local solution on [0, u0]; g is pinned to mu*phi0/alpha (= lambda*phi0/c) at 0.
struct PicardLocal {
    std::vector<double> g; // nodes 0..i0
    std::size_t i0 = 0;
    double u0_used = 0.0;
    PicardInfo info;
};

// Discretized g = Phi' together with the accumulated H(u) = u^gamma e^{-alpha/u} g(u)
// and the convolution (Bg)(u) = integral_0^u g(u-y) tail(y) dy.
struct SolutionGrid {
    DerivedParams dp;
    double phi0_free_term = 1.0; // free-term scale; 1 for the base solution g1
    double h = 0.0;
    std::vector<double> nodes;
    std::vector<double> g1;
    std::vector<double> H;
    std::vector<double> Bg;
    double u0_used = 0.0;
    std::size_t u0_index = 0;
    PicardInfo picard;

    double u_max() const { return nodes.back(); }
};

// Trapezoidal discrete convolution (Bg)(t_i) with endpoint half-weights;
// the inner sum is reduced pairwise so results do not depend on work order.
double convolve(std::span<const double> g, const ClaimDistribution& d, std::size_t i,
                double h);

PicardLocal picard_local(const DerivedParams& dp, const ClaimDistribution& d,
                         const SolverConfig& cfg, const WeightCells& cells,
                         double phi0 = 1.0);

SolutionGrid march_global(const PicardLocal& local, const DerivedParams& dp,
                          const ClaimDistribution& d, const SolverConfig& cfg,
                          const WeightCells& cells, double phi0 = 1.0);

// Full pipeline with the free term Phi(0+) = phi0 (the march is linear in it).
SolutionGrid solve_scaled(const DerivedParams& dp, const ClaimDistribution& d,
                          const SolverConfig& cfg, double phi0);

// Base solution g1 (free term 1); refuses to run when A1 or A3 fails.
SolutionGrid solve_g1(const ModelParams& m, const ClaimDistribution& d,
                      const SolverConfig& cfg);

} // namespace ruinkit

#endif
