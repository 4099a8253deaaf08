#pragma once

#include "segrekit/gaussian.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace segrekit {

// Exponent vector packed 7 bits per variable into 128 bits. Caps are kept
// below 64, so the sum of two admissible exponents never overflows a slot.
class Monomial {
public:
    static constexpr int kMaxVars = 18;
    static constexpr int kBits = 7;
    static constexpr int kMaxCap = 63;

    Monomial() = default;
    static Monomial from_exponents(const std::vector<int>& e);

    int exp(int i) const { return static_cast<int>((bits_ >> (kBits * i)) & 0x7f); }
    void set(int i, int e);
    bool is_one() const { return bits_ == 0; }
    int degree() const;
    std::vector<int> exponents(int arity) const;

    friend Monomial operator*(Monomial a, Monomial b) {
        Monomial m;
        m.bits_ = a.bits_ + b.bits_;
        return m;
    }
    friend bool operator==(Monomial a, Monomial b) { return a.bits_ == b.bits_; }
    friend bool operator!=(Monomial a, Monomial b) { return a.bits_ != b.bits_; }
    friend bool operator<(Monomial a, Monomial b) { return a.bits_ < b.bits_; }

    std::size_t hash() const {
        auto lo = static_cast<std::uint64_t>(bits_);
        auto hi = static_cast<std::uint64_t>(bits_ >> 64);
        std::uint64_t h = lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x632BE59BD9B4E019ull + (lo << 6) + (lo >> 2));
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
    unsigned __int128 bits() const { return bits_; }

private:
    unsigned __int128 bits_ = 0;
};

struct MonomialHash {
    std::size_t operator()(Monomial m) const { return m.hash(); }
};

// One weighted-degree bound: sum_i weights[i]*alpha_i <= cap.
struct Grading {
    std::vector<int> weights;
    int cap = 0;
    int degree(Monomial m) const;
    friend bool operator==(const Grading&, const Grading&) = default;
};

// The set of retained monomials: those satisfying every grading. Its
// complement is a monomial ideal, so ring operations stay exact modulo it.
// A plain series carries a single grading, total degree <= D.
class Truncation {
public:
    Truncation() = default;
    static Truncation total(int arity, int cap);
    Truncation(int arity, std::vector<Grading> gradings);

    int arity() const { return arity_; }
    const std::vector<Grading>& gradings() const { return gradings_; }
    // cap of the first grading; for total-degree truncations this is D
    int degree_cap() const { return gradings_.empty() ? 0 : gradings_.front().cap; }
    bool is_total() const;

    bool admits(Monomial m) const;
    // the truncation after differentiating in variable i
    Truncation after_derivative(int var) const;
    Truncation with_cap(int cap) const;  // total-degree only

    friend bool operator==(const Truncation&, const Truncation&) = default;

private:
    int arity_ = 0;
    std::vector<Grading> gradings_;
};

class TruncatedSeries {
public:
    using Term = std::pair<Monomial, GaussianRational>;

    TruncatedSeries() = default;
    TruncatedSeries(int arity, int degree_cap) : trunc_(Truncation::total(arity, degree_cap)) {}
    explicit TruncatedSeries(Truncation t) : trunc_(std::move(t)) {}

    static TruncatedSeries constant(const Truncation& t, const GaussianRational& c);
    static TruncatedSeries variable(const Truncation& t, int index);
    static TruncatedSeries monomial(const Truncation& t, const std::vector<int>& exponents,
                                    const GaussianRational& c);
    static TruncatedSeries constant(int arity, int cap, const GaussianRational& c) {
        return constant(Truncation::total(arity, cap), c);
    }
    static TruncatedSeries variable(int arity, int cap, int index) {
        return variable(Truncation::total(arity, cap), index);
    }

    int arity() const { return trunc_.arity(); }
    int degree_cap() const { return trunc_.degree_cap(); }
    const Truncation& truncation() const { return trunc_; }
    // true when no term was ever discarded: the series is an exact polynomial
    bool exact() const { return exact_; }
    void set_exact(bool e) { exact_ = e; }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    GaussianRational coeff(Monomial m) const;
    GaussianRational coeff(const std::vector<int>& exponents) const {
        return coeff(Monomial::from_exponents(exponents));
    }
    GaussianRational constant_term() const { return coeff(Monomial()); }
    // smallest total degree present; max int for the zero series
    int valuation() const;
    int order_in(const Grading& g) const;
    int max_degree() const;

    // Builds from an unsorted accumulation; drops zeros and inadmissible terms.
    // Dropping a nonzero term clears the exactness flag.
    static TruncatedSeries from_terms(const Truncation& t, std::vector<Term> terms, bool exact = true);

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a == b); }

    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries& operator-=(const TruncatedSeries& o);
    TruncatedSeries& operator*=(const GaussianRational& c);
    TruncatedSeries operator-() const;

    std::string to_string(const std::vector<std::string>& names) const;

private:
    Truncation trunc_;
    std::vector<Term> terms_;  // sorted by monomial, no zero coefficients
    bool exact_ = true;
};

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(TruncatedSeries a, const GaussianRational& c);
TruncatedSeries operator*(const GaussianRational& c, TruncatedSeries a);

enum class ArithOp { add, sub, mul, scale };
TruncatedSeries arith(ArithOp op, const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries arith(ArithOp op, const TruncatedSeries& a, const GaussianRational& b);

TruncatedSeries power(const TruncatedSeries& a, int k);

// outer(inners[0], ..., inners[k-1]); inners share a truncation and have zero
// constant term. Throws std::invalid_argument when the substitution could
// leak discarded outer terms into retained result terms.
TruncatedSeries compose(const TruncatedSeries& outer, const std::vector<TruncatedSeries>& inners);

TruncatedSeries differentiate(const TruncatedSeries& a, int var);
TruncatedSeries conjugate_series(const TruncatedSeries& a);

// 1/a for a with nonzero constant term
TruncatedSeries reciprocal(const TruncatedSeries& a);

// Moves variable i of `a` to variable map[i] of a series with truncation t.
TruncatedSeries rename(const TruncatedSeries& a, const Truncation& t, const std::vector<int>& map);
// Sets the listed variables to zero.
TruncatedSeries set_zero(const TruncatedSeries& a, const std::vector<int>& vars);
// Lowers to a coarser truncation (drops terms); raising requires exactness.
TruncatedSeries retruncate(const TruncatedSeries& a, const Truncation& t);
TruncatedSeries with_cap(const TruncatedSeries& a, int cap);
// Evaluates the variables in `vars` at the given values; only for exact series.
TruncatedSeries evaluate_vars(const TruncatedSeries& a, const std::vector<int>& vars,
                              const std::vector<GaussianRational>& values);
GaussianRational evaluate(const TruncatedSeries& a, const std::vector<GaussianRational>& point);

// lowest term (by total degree, then monomial order) or nullopt-like empty
std::string lowest_monomial(const TruncatedSeries& a, const std::vector<std::string>& names);

std::vector<std::string> indexed_names(const std::string& stem, int count, int first = 1);

// All multi-indices in n variables of total degree k, lexicographically
// descending in the first index: (k,0,..), (k-1,1,..), ...
std::vector<std::vector<int>> multi_indices(int n, int k);
// alpha! as a Gaussian rational
GaussianRational multi_factorial(const std::vector<int>& alpha);

}  // namespace segrekit
