#pragma once

#include "segrekit/linalg.hpp"
#include "segrekit/solve.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace segrekit {

// Failure of a model invariant. `component` is 1-based; `monomial` is the
// lowest offending monomial of the residual.
class ModelError : public std::runtime_error {
public:
    ModelError(std::string kind, int component, std::string monomial);
    const std::string& kind() const { return kind_; }
    int component() const { return component_; }
    const std::string& monomial() const { return monomial_; }

private:
    std::string kind_;
    int component_;
    std::string monomial_;
};

// w = Q(z, chi, tau). Variable order of each Q^r: z_1..z_m, chi_1..chi_m,
// tau_1..tau_d, total-degree cap D.
struct GenericModel {
    std::string name;
    int m = 0;
    int d = 0;
    int D = 0;
    SeriesVec Q;

    int arity() const { return 2 * m + d; }
    Truncation truncation() const { return Truncation::total(arity(), D); }
    SeriesVec Qbar() const;
    // z1.., chi1.., tau1..
    std::vector<std::string> names() const;
    // same slots read as (z, chi, w): used for residuals on the graph
    std::vector<std::string> graph_names() const;
};

GenericModel from_normal(int m, int d, int D, SeriesVec Q, std::string name = "");
// phi: d series in (z_1..z_m, chi_1..chi_m, s_1..s_d); Im w = phi(z, zbar, Re w)
GenericModel from_real_graph(int m, int d, int D, const SeriesVec& phi, std::string name = "");

// Q(0,chi,tau) = Q(z,0,tau) = tau; returns the first violation or nullopt.
std::optional<ModelError> normality_violation(const GenericModel& M);
// Q(z, chi, Qbar(chi, z, w)) = w in (z, chi, w).
std::optional<ModelError> reality_violation(const GenericModel& M);

// Ambient coordinates (z, w, chi, tau), 2m+2d variables.
struct CrFrame {
    int m = 0;
    int d = 0;
    // L_j = d/dz_j + sum_r L[j][r] d/dw_r
    std::vector<SeriesVec> L;
    // Ltilde_j = d/dchi_j + sum_r Ltilde[j][r] d/dtau_r
    std::vector<SeriesVec> Ltilde;
};
CrFrame cr_frame(const GenericModel& M);
// Applies L_j to w_r - Q^r and Ltilde_j to tau_r - Qbar^r(chi,z,w) and
// restricts to the graph; all returned series should be zero.
std::vector<TruncatedSeries> frame_tangency_residuals(const GenericModel& M, const CrFrame& F);

// Intrinsic vector field on the complexification in coordinates (z, chi, tau).
struct VectorField {
    SeriesVec c;  // 2m+d coefficients
};
VectorField lie_bracket(const VectorField& X, const VectorField& Y);
// The frame written in (z, chi, tau): L_j = d/dz_j, Ltilde_j = d/dchi_j + ...
std::vector<VectorField> intrinsic_frame(const GenericModel& M);

struct FiniteTypeResult {
    std::optional<int> order;
    int bound = 0;
    int reached = 0;   // longest bracket length evaluated (cap permitting)
    std::vector<int> span_dims;  // span dimension at 0 after each length
};
FiniteTypeResult finite_type_order(const GenericModel& M, int bracket_bound = 8);

struct SpanRow {
    int component = 0;      // 0-based r
    std::vector<int> alpha; // multi-index in chi
};
struct NondegeneracyResult {
    std::optional<int> k;
    int bound = 0;
    std::vector<int> ranks;     // rank for K = 1..bound
    std::vector<SpanRow> span;  // greedy spanning rows when k exists
};
// rows d/dz Q^r_{chi^alpha}(0), 1 <= |alpha| <= K
NondegeneracyResult nondegeneracy_order(const GenericModel& M, int K_max);
// rows d/dz' Qbar^r_{chi'^alpha}(0) for Qbar(chi', z', w'); the spanning set
// used by the reflection
NondegeneracyResult nondegeneracy_order_bar(const GenericModel& M, int K_max);

Inertia levi_signature(const GenericModel& M);

struct SegreMapping {
    int r = 0;
    int m = 0;
    int d = 0;
    SeriesVec v;  // m+d series in r*m variables (t^0, ..., t^{r-1})
    SeriesVec u() const { return SeriesVec(v.begin() + m, v.end()); }
};
SegreMapping segre_map(const GenericModel& M, int r);
// v^{r+1}(t^0..t^{r-1}, 0) == v^r
bool segre_stability(const GenericModel& M, int r);
// v^{2r}(0, x^1, ..., x^r, x^{r-1}, ..., x^1) as series in x (r*m vars)
SeriesVec segre_symmetric_restriction(const GenericModel& M, int r);

struct SegreRankResult {
    std::optional<int> r;
    int bound = 0;
    std::vector<int> ranks;  // best rank found for each r tried
    std::string method;      // "sampled" or "minor-series" for the last r tried
};
// Throws std::logic_error if the symmetric-point identity fails.
SegreRankResult segre_rank_r(const GenericModel& M, int r_max, int trials, Sampler& sampler);

struct AnalysisOptions {
    int bracket_bound = 8;
    int nondeg_bound = -1;  // -1: D-1
    int segre_bound = 3;
    int trials = 5;
    std::uint64_t seed = 7;
};
struct AnalysisReport {
    FiniteTypeResult finite_type;
    NondegeneracyResult nondeg;
    std::optional<Inertia> levi;
    std::optional<SegreRankResult> segre;
    std::string segre_error;  // set when the Segre budget does not fit
};
AnalysisReport analyze(const GenericModel& M, const AnalysisOptions& opt);

}  // namespace segrekit
