#pragma once

#include "segrekit/hspm.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace segrekit {

// kind: "not-well-posed", "singular", "inconsistent", "insufficient-jets",
// "insufficient-degree", "degenerate-segre"
class ReconstructionError : public std::runtime_error {
public:
    ReconstructionError(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

// n rows (component, alpha) of the target's Qbar with
// d/dz' Qbar'^{j_l}_{chi'^{alpha_l}}(0) spanning C^n; k = max |alpha_l|.
struct SpanningSet {
    int k = 0;
    std::vector<SpanRow> rows;
};
// nullopt when the target is degenerate up to K_max (-1: D-1)
std::optional<SpanningSet> spanning_set(const GenericModel& target, int K_max = -1);

struct ReconstructionResult {
    SegrePreservingMap recovered;
    std::string method;    // partner, full_jet, oracle
    SeriesVec certificate; // hspm_verify residual
    bool certified = false;
    std::string detail;
};

enum class KnownSide { H, Htilde };

// Same model with Q retruncated to `cap`; raising the cap of a truncated Q
// throws ReconstructionError("insufficient-degree").
GenericModel model_at_cap(const GenericModel& M, int cap);

// First lexicographic n-subset of [0, m) with a nonzero minor of the n x m block.
std::optional<std::vector<int>> first_witness(const Matrix& block);

// Qbar'^l_{chi'^beta}(ft, f, g) on the complexification, rebuilt from Htilde
// alone by iterated Ltilde derivatives and Cramer solves. Returned in (z, chi, w)
// at cap (cap of Htilde) - |beta|. nu: 0-based columns with det ft_chi_nu(0) != 0.
TruncatedSeries reflection_rhs(const GenericModel& source, const GenericModel& target, const SeriesVec& Htilde,
                               const std::vector<int>& nu, const std::vector<int>& beta, int l);

// Recovers the missing side from the known one. Input series are at some cap
// C (m+d variables); the output is at cap C - k.
ReconstructionResult partner_reconstruct(const GenericModel& source, const GenericModel& target, KnownSide known,
                                         const SeriesVec& data, const std::optional<SpanningSet>& span = std::nullopt);

// H(t^0 + a, u^s(t) + e) for the H side (or Htilde on the conjugate Segre set),
// computed from the jets alone. Variables (t^0..t^{s-1}, a, e); offsets are
// valid to order K - s*k, t-degree to T.
SeriesVec segre_side_series(const GenericModel& source, const GenericModel& target, int s, const JetPair& jets,
                            int T, KnownSide side);
// d^gamma H^component o v^s as a series in t (s*m variables, cap T); gamma over (z, w).
TruncatedSeries segre_jet_recursion(const GenericModel& source, const GenericModel& target, int s, const JetPair& jets,
                                    const std::vector<int>& gamma, int component, int T);

// Solves H from G = H o v^s by exact linear algebra on the coefficients of H
// up to the source cap. Throws ReconstructionError("degenerate-segre") when
// v^s does not separate coefficients, ("inconsistent") when G is not a composition.
SeriesVec invert_segre_composition(const GenericModel& source, int s, const SeriesVec& G, int T);
// smallest s whose Segre map separates coefficients up to the source cap, with its t-cap
struct SegreChoice {
    int s = 0;
    int T = 0;
};
std::optional<SegreChoice> choose_segre_order(const GenericModel& source, int s_max);

// Reconstructs the pair from its K-jets. Result cap = source.D. Certified when
// the pair verifies and reproduces the input jets.
ReconstructionResult full_jet_reconstruct(const GenericModel& source, const GenericModel& target, const JetPair& jets);

}  // namespace segrekit
