#pragma once

#include "segrekit/model.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace segrekit {

// H = (f, g) in (z, w); Htilde = (ft, gt) in (chi, tau). Both sides use the
// same slot layout: m variables followed by d variables.
struct SegrePreservingMap {
    std::string name;
    GenericModel source;  // (m, d)
    GenericModel target;  // (n, e)
    SeriesVec f, g;       // n and e series over m+d variables
    SeriesVec ft, gt;

    int n() const { return target.m; }
    int e() const { return target.d; }
    SeriesVec H() const;
    SeriesVec Htilde() const;
};

// Checks arities and zero constant terms; throws std::invalid_argument.
void validate_shape(const SegrePreservingMap& h);
SegrePreservingMap make_map(std::string name, const GenericModel& source, const GenericModel& target, SeriesVec H,
                            SeriesVec Htilde);
SegrePreservingMap identity_map(const GenericModel& M);

struct VerifyResult {
    bool pass = false;
    SeriesVec residual;  // e series in (z, chi, tau)
    int component = 0;   // 1-based first failing component
    std::string monomial;
};
VerifyResult hspm_verify(const SegrePreservingMap& h);

bool segre_submersive(const SegrePreservingMap& h);

struct ConditionDWitness {
    std::vector<int> mu;  // 1-based
    std::vector<int> nu;
    GaussianRational det_f;
    GaussianRational det_ft;
};
// All n-subsets mu, nu of [1..m] with both minors nonzero; lexicographic.
std::vector<ConditionDWitness> condition_D_witnesses(const SegrePreservingMap& h);
// constant Jacobian blocks f_z(0) and ft_chi(0), n x m
Matrix fz0(const SegrePreservingMap& h);
Matrix ftchi0(const SegrePreservingMap& h);

SegrePreservingMap conjugate_swap(const SegrePreservingMap& h);

// Derivative values d^alpha phi(0), 1 <= |alpha| <= K, per component.
struct JetTable {
    int K = 0;
    int vars = 0;
    std::map<std::pair<int, std::vector<int>>, GaussianRational> entries;
    GaussianRational at(int component, const std::vector<int>& alpha) const;
    friend bool operator==(const JetTable&, const JetTable&) = default;
};
struct JetPair {
    int K = 0;
    JetTable left;   // H
    JetTable right;  // Htilde
    friend bool operator==(const JetPair&, const JetPair&) = default;
};
JetTable jet_table(const SeriesVec& comps, int K);
JetPair jet_extract(const SegrePreservingMap& h, int K);
// the Taylor polynomial of degree <= K encoded by a table
SeriesVec jet_polynomial(const JetTable& t, const Truncation& trunc);

bool same_model(const GenericModel& a, const GenericModel& b);
SegrePreservingMap compose_hspm(const SegrePreservingMap& h2, const SegrePreservingMap& h1);
SegrePreservingMap invert_hspm(const SegrePreservingMap& h);
bool real_slice_check(const SegrePreservingMap& h);
bool map_equal(const SegrePreservingMap& a, const SegrePreservingMap& b);

// Inverse of a germ y -> P(y) with P(0)=0 and invertible linear part.
SeriesVec invert_germ(const SeriesVec& P);

}  // namespace segrekit
