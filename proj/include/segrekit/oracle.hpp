#pragma once

#include "segrekit/reflection.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace segrekit {

// Sparse polynomial over Q(i) in numbered unknowns; a monomial is the sorted
// list of its variables with repetition.
class Poly {
public:
    using Key = std::vector<int>;

    Poly() = default;
    static Poly constant(const GaussianRational& c);
    static Poly var(int v);

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    GaussianRational constant_value() const;  // coefficient of the empty monomial
    int degree() const;
    std::vector<int> variables() const;
    bool contains(int v) const;
    const std::map<Key, GaussianRational>& terms() const { return t_; }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const GaussianRational& c);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend bool operator==(const Poly&, const Poly&) = default;

    // replaces v by e everywhere
    Poly substitute(int v, const Poly& e) const;
    // coefficient c when v occurs only in the single term c*v, else nullopt
    std::optional<GaussianRational> isolated_linear(int v) const;

private:
    void add_term(const Key& k, const GaussianRational& c);
    std::map<Key, GaussianRational> t_;
};

enum class OracleVerdict { unique, ambiguous, inconsistent };
std::string to_string(OracleVerdict v);

struct OracleResult {
    OracleVerdict verdict = OracleVerdict::inconsistent;
    std::optional<SegrePreservingMap> solution;      // when unique
    std::vector<SegrePreservingMap> alternatives;    // distinct determined completions
    SeriesVec witness;      // ambiguous: a direction in (H, Htilde), 2(n+e) series at cap D
    int degree = 0;         // lowest degree of an undetermined coefficient
    int unknowns = 0;
    int equations = 0;
    std::string detail;
};

// Coefficients of H of degree > K_left and of Htilde of degree > K_right, up to
// D plus a slack, are unknowns; the verify residual is solved degree by degree.
// Unknowns of degree <= D decide the verdict ("at order D").
OracleResult jet_determination_oracle(const GenericModel& source, const GenericModel& target, const JetPair& jets,
                                      int D = -1);
// One side known to its cap, the other side entirely unknown.
OracleResult partner_oracle(const GenericModel& source, const GenericModel& target, KnownSide known,
                            const SeriesVec& data, int D = -1);

struct MembershipResult {
    bool member = false;
    std::string method;  // full_jet or oracle
    std::optional<SegrePreservingMap> automorphism;
    std::string detail;
};
// Is the jet pair the K-jet of an automorphism of the complexification?
MembershipResult jet_extends_to_automorphism(const GenericModel& M, const JetPair& jets);

}  // namespace segrekit
