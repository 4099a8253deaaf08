#pragma once

#include "segrekit/linalg.hpp"
#include "segrekit/series.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace segrekit {

using SeriesVec = std::vector<TruncatedSeries>;

// Deterministic sampler: mt19937_64 with plain modulo reduction, so the
// stream is identical across standard libraries.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : gen_(seed) {}
    std::uint64_t next() { return gen_(); }
    int uniform(int lo, int hi);  // inclusive
    // p/q with p in [-9,9], q in [1,9]
    GaussianRational small_rational();
    GaussianRational small_nonzero_rational();
    GaussianRational small_gaussian();
    GaussianRational small_nonzero_gaussian();

private:
    std::mt19937_64 gen_;
};

// SEGREKIT_SEED when set and numeric, else `fallback`.
std::uint64_t default_seed(std::uint64_t fallback = 7);

// Solves residual(y) = 0 for y near y0 (all series sharing one truncation).
// With jacobian supplied, Newton steps; otherwise chord steps with the
// constant Jacobian inverse j0_inv. Stops once the residual is the zero
// series; throws std::runtime_error after max_iter.
SeriesVec newton_solve(const std::function<SeriesVec(const SeriesVec&)>& residual,
                       const std::function<SeriesMatrix(const SeriesVec&)>& jacobian, const Matrix& j0_inv,
                       SeriesVec y0, int max_iter = 80);

// F: e series in (x_1..x_n, y_1..y_e). Returns y(x) with F(x, y(x)) = 0 and
// y(0) = 0, as e series in x alone.
SeriesVec ift_solve(const SeriesVec& F, int n);

// Truncation of the first n variables of t.
Truncation restrict_truncation(const Truncation& t, int n);

struct DenominatorInverse {
    GaussianRational x0_det;      // d(x0)
    GaussianRational delta0;      // d(x0)^2
    std::vector<GaussianRational> x0;
    std::vector<int> xi_block;    // chosen xi' columns (0-based)
    SeriesVec phi0;               // r_xi series in Z (N vars)
    int attempts = 0;
};

// V: N series in (x: rx vars, xi: rxi vars), exact, with V(x,0) = 0.
// Samples x0, picks the first xi-block with nonzero N x N minor of
// dV/dxi(x0,0), and solves V(x0, phi0(Z)) = Z. Throws
// std::domain_error("rank deficient") when every sample fails.
DenominatorInverse denominator_inverse(const SeriesVec& V, int rx, Sampler& sampler, int max_attempts = 32);

}  // namespace segrekit
