#include "segrekit/series.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace segrekit {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::from_exponents(const std::vector<int>& e) {
    if (static_cast<int>(e.size()) > kMaxVars) throw std::invalid_argument("too many variables for packed monomial");
    Monomial m;
    for (std::size_t i = 0; i < e.size(); ++i) m.set(static_cast<int>(i), e[i]);
    return m;
}

void Monomial::set(int i, int e) {
    if (i < 0 || i >= kMaxVars) throw std::out_of_range("monomial variable index");
    if (e < 0 || e > 127) throw std::out_of_range("monomial exponent");
    const unsigned __int128 mask = static_cast<unsigned __int128>(0x7f) << (kBits * i);
    bits_ = (bits_ & ~mask) | (static_cast<unsigned __int128>(e) << (kBits * i));
}

int Monomial::degree() const {
    int d = 0;
    unsigned __int128 b = bits_;
    while (b != 0) {
        d += static_cast<int>(b & 0x7f);
        b >>= kBits;
    }
    return d;
}

std::vector<int> Monomial::exponents(int arity) const {
    std::vector<int> e(arity);
    for (int i = 0; i < arity; ++i) e[i] = exp(i);
    return e;
}

int Grading::degree(Monomial m) const {
    int d = 0;
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (weights[i] != 0) d += weights[i] * m.exp(static_cast<int>(i));
    return d;
}

// -------------------------------------------------------------- Truncation

Truncation Truncation::total(int arity, int cap) {
    return Truncation(arity, {Grading{std::vector<int>(arity, 1), cap}});
}

Truncation::Truncation(int arity, std::vector<Grading> gradings) : arity_(arity), gradings_(std::move(gradings)) {
    if (arity < 0 || arity > Monomial::kMaxVars)
        throw std::invalid_argument("series arity " + std::to_string(arity) + " exceeds " +
                                    std::to_string(Monomial::kMaxVars));
    if (gradings_.empty()) throw std::invalid_argument("truncation needs at least one grading");
    for (const auto& g : gradings_) {
        if (static_cast<int>(g.weights.size()) != arity) throw std::invalid_argument("grading weight count != arity");
        for (int w : g.weights)
            if (w < 0) throw std::invalid_argument("negative grading weight");
    }
    // exponents of retained monomials stay <= 63 so a product of two fits 7 bits
    for (int i = 0; i < arity; ++i) {
        int bound = -1;
        for (const auto& g : gradings_) {
            if (g.weights[i] == 0) continue;
            int b = g.cap < 0 ? 0 : g.cap / g.weights[i];
            bound = bound < 0 ? b : std::min(bound, b);
        }
        if (bound < 0) throw std::invalid_argument("variable " + std::to_string(i) + " is unbounded by the truncation");
        if (bound > Monomial::kMaxCap) throw std::invalid_argument("degree cap too large (exponent bound > 63)");
    }
}

bool Truncation::is_total() const {
    if (gradings_.size() != 1) return false;
    for (int w : gradings_[0].weights)
        if (w != 1) return false;
    return true;
}

bool Truncation::admits(Monomial m) const {
    for (const auto& g : gradings_)
        if (g.degree(m) > g.cap) return false;
    return true;
}

Truncation Truncation::after_derivative(int var) const {
    auto gs = gradings_;
    for (auto& g : gs) g.cap -= g.weights[var];
    return Truncation(arity_, std::move(gs));
}

Truncation Truncation::with_cap(int cap) const {
    if (!is_total()) throw std::invalid_argument("with_cap on a multi-graded truncation");
    return total(arity_, cap);
}

// --------------------------------------------------------- TruncatedSeries

TruncatedSeries TruncatedSeries::constant(const Truncation& t, const GaussianRational& c) {
    return from_terms(t, {{Monomial(), c}});
}

TruncatedSeries TruncatedSeries::variable(const Truncation& t, int index) {
    if (index < 0 || index >= t.arity()) throw std::out_of_range("variable index");
    Monomial m;
    m.set(index, 1);
    return from_terms(t, {{m, GaussianRational(1)}});
}

TruncatedSeries TruncatedSeries::monomial(const Truncation& t, const std::vector<int>& exponents,
                                          const GaussianRational& c) {
    if (static_cast<int>(exponents.size()) != t.arity()) throw std::invalid_argument("exponent length != arity");
    return from_terms(t, {{Monomial::from_exponents(exponents), c}});
}

TruncatedSeries TruncatedSeries::from_terms(const Truncation& t, std::vector<Term> terms, bool exact) {
    TruncatedSeries s(t);
    s.exact_ = exact;
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    for (auto& term : terms) {
        if (!s.terms_.empty() && s.terms_.back().first == term.first) {
            s.terms_.back().second += term.second;
            continue;
        }
        if (!s.terms_.empty() && s.terms_.back().second.is_zero()) s.terms_.pop_back();
        s.terms_.push_back(std::move(term));
    }
    if (!s.terms_.empty() && s.terms_.back().second.is_zero()) s.terms_.pop_back();
    std::vector<Term> kept;
    kept.reserve(s.terms_.size());
    for (auto& term : s.terms_) {
        if (term.second.is_zero()) continue;
        if (!t.admits(term.first)) {
            s.exact_ = false;
            continue;
        }
        kept.push_back(std::move(term));
    }
    s.terms_ = std::move(kept);
    return s;
}

GaussianRational TruncatedSeries::coeff(Monomial m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, Monomial key) { return t.first < key; });
    if (it != terms_.end() && it->first == m) return it->second;
    return {};
}

int TruncatedSeries::valuation() const {
    int v = std::numeric_limits<int>::max();
    for (const auto& t : terms_) v = std::min(v, t.first.degree());
    return v;
}

int TruncatedSeries::order_in(const Grading& g) const {
    int v = std::numeric_limits<int>::max();
    for (const auto& t : terms_) v = std::min(v, g.degree(t.first));
    return v;
}

int TruncatedSeries::max_degree() const {
    int v = -1;
    for (const auto& t : terms_) v = std::max(v, t.first.degree());
    return v;
}

namespace {

void require_same(const TruncatedSeries& a, const TruncatedSeries& b, const char* what) {
    if (a.arity() != b.arity()) throw std::invalid_argument(std::string(what) + ": arity mismatch");
    if (a.truncation() != b.truncation()) throw std::invalid_argument(std::string(what) + ": degree cap mismatch");
}

template <bool Subtract>
TruncatedSeries merge(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same(a, b, Subtract ? "sub" : "add");
    std::vector<TruncatedSeries::Term> out;
    out.reserve(a.size() + b.size());
    const auto& x = a.terms();
    const auto& y = b.terms();
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            out.emplace_back(y[j].first, Subtract ? -y[j].second : y[j].second);
            ++j;
        } else {
            GaussianRational c = x[i].second;
            if constexpr (Subtract) c -= y[j].second;
            else c += y[j].second;
            if (!c.is_zero()) out.emplace_back(x[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    return TruncatedSeries::from_terms(a.truncation(), std::move(out), a.exact() && b.exact());
}

}  // namespace

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) { return *this = merge<false>(*this, o); }
TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) { return *this = merge<true>(*this, o); }

TruncatedSeries& TruncatedSeries::operator*=(const GaussianRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
TruncatedSeries operator*(TruncatedSeries a, const GaussianRational& c) { return a *= c; }
TruncatedSeries operator*(const GaussianRational& c, TruncatedSeries a) { return a *= c; }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same(a, b, "mul");
    const Truncation& t = a.truncation();
    if (a.is_zero() || b.is_zero()) {
        // a truncated zero stays inexact unless the other factor is an exact zero
        TruncatedSeries z(t);
        z.set_exact((a.exact() && b.exact()) || (a.is_zero() && a.exact()) || (b.is_zero() && b.exact()));
        return z;
    }
    const Grading& g0 = t.gradings().front();
    // b's terms in first-grading degree order so the inner loop can stop early
    std::vector<std::pair<int, const TruncatedSeries::Term*>> bs;
    bs.reserve(b.size());
    for (const auto& term : b.terms()) bs.emplace_back(g0.degree(term.first), &term);
    std::stable_sort(bs.begin(), bs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

    bool exact = a.exact() && b.exact();
    std::unordered_map<Monomial, GaussianRational, MonomialHash> acc;
    acc.reserve(a.size() * 2 + b.size() * 2);
    for (const auto& ta : a.terms()) {
        const int da = g0.degree(ta.first);
        for (const auto& [db, tb] : bs) {
            if (da + db > g0.cap) {
                exact = false;
                break;
            }
            Monomial m = ta.first * tb->first;
            if (!t.admits(m)) {
                exact = false;
                continue;
            }
            acc[m].add_product(ta.second, tb->second);
        }
    }
    std::vector<TruncatedSeries::Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!c.is_zero()) out.emplace_back(m, std::move(c));
    return TruncatedSeries::from_terms(t, std::move(out), exact);
}

TruncatedSeries arith(ArithOp op, const TruncatedSeries& a, const TruncatedSeries& b) {
    switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::scale: break;
    }
    throw std::invalid_argument("scale takes a Gaussian rational operand");
}

TruncatedSeries arith(ArithOp op, const TruncatedSeries& a, const GaussianRational& b) {
    if (op != ArithOp::scale) throw std::invalid_argument("only scale takes a scalar operand");
    return a * b;
}

TruncatedSeries power(const TruncatedSeries& a, int k) {
    if (k < 0) return power(reciprocal(a), -k);
    TruncatedSeries result = TruncatedSeries::constant(a.truncation(), 1);
    TruncatedSeries base = a;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

// ----------------------------------------------------------------- compose

namespace {

// Can a monomial dropped by some grading of `outer` survive in the result
// after substituting series whose orders are given? Returns true when safe.
bool substitution_safe(const Truncation& outer, const Truncation& result,
                       const std::vector<std::vector<long>>& orders /* [result grading][outer var] */) {
    for (const auto& o : outer.gradings()) {
        bool covered = false;
        for (std::size_t c = 0; c < result.gradings().size() && !covered; ++c) {
            const long cap_c = result.gradings()[c].cap;
            bool ok = true;
            for (std::size_t j = 0; j < o.weights.size() && ok; ++j) {
                if (o.weights[j] == 0) continue;
                // ord_c(inner_j) * (cap_o + 1) > cap_c * w_o(j)
                ok = orders[c][j] * (static_cast<long>(o.cap) + 1) > cap_c * o.weights[j];
            }
            covered = ok;
        }
        if (!covered) return false;
    }
    return true;
}

struct PowerCache {
    const std::vector<TruncatedSeries>* inners;
    std::vector<std::vector<TruncatedSeries>> pw;

    const TruncatedSeries& get(int j, int e) {
        auto& v = pw[j];
        if (v.empty()) v.push_back(TruncatedSeries::constant((*inners)[j].truncation(), 1));
        while (static_cast<int>(v.size()) <= e) v.push_back(v.back() * (*inners)[j]);
        return v[e];
    }
};

using TermIt = std::vector<TruncatedSeries::Term>::const_iterator;

TruncatedSeries horner(TermIt first, TermIt last, int var, PowerCache& cache, const Truncation& t) {
    if (var < 0) {
        TruncatedSeries c = TruncatedSeries::constant(t, first->second);
        return c;
    }
    TruncatedSeries acc(t);
    TermIt it = first;
    while (it != last) {
        const int e = it->first.exp(var);
        TermIt end = it;
        while (end != last && end->first.exp(var) == e) ++end;
        TruncatedSeries sub = horner(it, end, var - 1, cache, t);
        if (e == 0) {
            acc += sub;
        } else if (sub.size() == 1 && sub.terms().front().first.is_one()) {
            acc += cache.get(var, e) * sub.terms().front().second;
        } else {
            acc += cache.get(var, e) * sub;
        }
        it = end;
    }
    return acc;
}

}  // namespace

TruncatedSeries compose(const TruncatedSeries& outer, const std::vector<TruncatedSeries>& inners) {
    if (static_cast<int>(inners.size()) != outer.arity())
        throw std::invalid_argument("compose: expected " + std::to_string(outer.arity()) + " inner series, got " +
                                    std::to_string(inners.size()));
    if (inners.empty()) {
        throw std::invalid_argument("compose: outer series has no variables");
    }
    for (const auto& g : inners) {
        if (g.truncation() != inners.front().truncation())
            throw std::invalid_argument("compose: inner series disagree in arity or degree cap");
        if (!g.constant_term().is_zero()) throw std::invalid_argument("compose: nonzero inner constant term");
    }
    Truncation t = inners.front().truncation();
    std::vector<TruncatedSeries> in = inners;
    if (!outer.exact()) {
        auto orders_for = [&](const Truncation& res) {
            std::vector<std::vector<long>> ord(res.gradings().size(), std::vector<long>(in.size()));
            for (std::size_t c = 0; c < res.gradings().size(); ++c)
                for (std::size_t j = 0; j < in.size(); ++j) {
                    int o = in[j].order_in(res.gradings()[c]);
                    ord[c][j] = o == std::numeric_limits<int>::max() ? (1L << 40) : o;
                }
            return ord;
        };
        if (!substitution_safe(outer.truncation(), t, orders_for(t))) {
            if (!(t.is_total() && outer.truncation().is_total()))
                throw std::invalid_argument("compose: outer truncation too coarse for the inner series");
            long s = std::numeric_limits<long>::max();
            for (const auto& g : in)
                if (!g.is_zero()) s = std::min<long>(s, g.valuation());
            long cap = s * (outer.degree_cap() + 1) - 1;
            t = t.with_cap(static_cast<int>(std::min<long>(cap, t.degree_cap())));
            for (auto& g : in) g = retruncate(g, t);
        }
    }
    if (outer.is_zero()) return TruncatedSeries(t);
    PowerCache cache{&in, std::vector<std::vector<TruncatedSeries>>(in.size())};
    TruncatedSeries r = horner(outer.terms().begin(), outer.terms().end(), outer.arity() - 1, cache, t);
    if (!outer.exact()) r.set_exact(false);
    return r;
}

TruncatedSeries differentiate(const TruncatedSeries& a, int var) {
    if (var < 0 || var >= a.arity()) throw std::out_of_range("differentiate: variable index");
    Truncation t = a.truncation().after_derivative(var);
    std::vector<TruncatedSeries::Term> out;
    for (const auto& [m, c] : a.terms()) {
        int e = m.exp(var);
        if (e == 0) continue;
        Monomial n = m;
        n.set(var, e - 1);
        out.emplace_back(n, c * GaussianRational(e));
    }
    return TruncatedSeries::from_terms(t, std::move(out), a.exact());
}

TruncatedSeries conjugate_series(const TruncatedSeries& a) {
    std::vector<TruncatedSeries::Term> out;
    out.reserve(a.size());
    for (const auto& [m, c] : a.terms()) out.emplace_back(m, c.conj());
    return TruncatedSeries::from_terms(a.truncation(), std::move(out), a.exact());
}

TruncatedSeries reciprocal(const TruncatedSeries& a) {
    GaussianRational c0 = a.constant_term();
    if (c0.is_zero()) throw std::domain_error("reciprocal of a series with zero constant term");
    GaussianRational inv = c0.inverse();
    // a = c0 (1 + b), 1/a = inv * sum (-b)^j
    TruncatedSeries b = a * inv - TruncatedSeries::constant(a.truncation(), 1);
    TruncatedSeries nb = -b;
    TruncatedSeries sum = TruncatedSeries::constant(a.truncation(), 1);
    TruncatedSeries p = sum;
    for (;;) {
        p = p * nb;
        if (p.is_zero()) break;
        sum += p;
    }
    sum *= inv;
    sum.set_exact(a.exact() && b.is_zero());
    return sum;
}

TruncatedSeries rename(const TruncatedSeries& a, const Truncation& t, const std::vector<int>& map) {
    if (static_cast<int>(map.size()) != a.arity()) throw std::invalid_argument("rename: map length != arity");
    for (int j : map)
        if (j < 0 || j >= t.arity()) throw std::out_of_range("rename: target index");
    if (!a.exact()) {
        std::vector<std::vector<long>> ord(t.gradings().size(), std::vector<long>(map.size()));
        for (std::size_t c = 0; c < t.gradings().size(); ++c)
            for (std::size_t j = 0; j < map.size(); ++j) {
                int w = t.gradings()[c].weights[map[j]];
                ord[c][j] = w == 0 ? 0 : w;
            }
        if (!substitution_safe(a.truncation(), t, ord))
            throw std::invalid_argument("rename: source truncation too coarse for the target");
    }
    std::vector<TruncatedSeries::Term> out;
    out.reserve(a.size());
    for (const auto& [m, c] : a.terms()) {
        Monomial n;
        bool ok = true;
        for (int i = 0; i < a.arity(); ++i) {
            int e = m.exp(i);
            if (e == 0) continue;
            int ne = n.exp(map[i]) + e;
            if (ne > 127) {
                ok = false;
                break;
            }
            n.set(map[i], ne);
        }
        if (!ok) continue;
        out.emplace_back(n, c);
    }
    return TruncatedSeries::from_terms(t, std::move(out), a.exact());
}

TruncatedSeries set_zero(const TruncatedSeries& a, const std::vector<int>& vars) {
    std::vector<TruncatedSeries::Term> out;
    for (const auto& term : a.terms()) {
        bool hit = false;
        for (int v : vars) hit = hit || term.first.exp(v) > 0;
        if (!hit) out.push_back(term);
    }
    return TruncatedSeries::from_terms(a.truncation(), std::move(out), a.exact());
}

TruncatedSeries retruncate(const TruncatedSeries& a, const Truncation& t) {
    if (t.arity() != a.arity()) throw std::invalid_argument("retruncate: arity mismatch");
    if (!a.exact()) {
        std::vector<std::vector<long>> ord(t.gradings().size(), std::vector<long>(a.arity()));
        for (std::size_t c = 0; c < t.gradings().size(); ++c)
            for (int j = 0; j < a.arity(); ++j) ord[c][j] = t.gradings()[c].weights[j];
        if (!substitution_safe(a.truncation(), t, ord))
            throw std::invalid_argument("retruncate: cannot raise the cap of an inexact series");
    }
    return TruncatedSeries::from_terms(t, a.terms(), a.exact());
}

TruncatedSeries with_cap(const TruncatedSeries& a, int cap) { return retruncate(a, a.truncation().with_cap(cap)); }

TruncatedSeries evaluate_vars(const TruncatedSeries& a, const std::vector<int>& vars,
                              const std::vector<GaussianRational>& values) {
    if (vars.size() != values.size()) throw std::invalid_argument("evaluate_vars: size mismatch");
    bool all_zero = std::all_of(values.begin(), values.end(), [](const auto& v) { return v.is_zero(); });
    if (all_zero) return set_zero(a, vars);
    if (!a.exact()) throw std::invalid_argument("evaluate_vars: series is truncated, evaluation at a point is not exact");
    std::vector<TruncatedSeries::Term> out;
    out.reserve(a.size());
    for (const auto& [m, c] : a.terms()) {
        Monomial n = m;
        GaussianRational k = c;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            int e = m.exp(vars[i]);
            if (e == 0) continue;
            k *= pow(values[i], e);
            n.set(vars[i], 0);
        }
        out.emplace_back(n, std::move(k));
    }
    return TruncatedSeries::from_terms(a.truncation(), std::move(out), true);
}

GaussianRational evaluate(const TruncatedSeries& a, const std::vector<GaussianRational>& point) {
    if (static_cast<int>(point.size()) != a.arity()) throw std::invalid_argument("evaluate: point size != arity");
    std::vector<int> vars(a.arity());
    for (int i = 0; i < a.arity(); ++i) vars[i] = i;
    return evaluate_vars(a, vars, point).constant_term();
}

// ---------------------------------------------------------------- printing

namespace {

std::string monomial_text(Monomial m, const std::vector<std::string>& names, int arity) {
    std::string s;
    for (int i = 0; i < arity; ++i) {
        int e = m.exp(i);
        if (e == 0) continue;
        if (!s.empty()) s += "*";
        s += i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i + 1);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

// coefficient in expression syntax: 3/2, 2*i, (1/2-3*i)
std::string coeff_text(const GaussianRational& c) {
    if (c.is_real()) return c.re().get_str();
    std::string im;
    if (c.im() == 1) im = "i";
    else if (c.im() == -1) im = "-i";
    else im = c.im().get_str() + "*i";
    if (sgn(c.re()) == 0) return im;
    std::string s = "(" + c.re().get_str();
    if (sgn(c.im()) > 0) s += "+";
    return s + im + ")";
}

}  // namespace

std::string TruncatedSeries::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    // total degree, then the packed order, for stable readable output
    std::vector<const Term*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(),
                     [](const Term* a, const Term* b) { return a->first.degree() < b->first.degree(); });
    std::string s;
    for (const Term* t : order) {
        std::string mono = monomial_text(t->first, names, arity());
        GaussianRational c = t->second;
        bool negative = c.is_real() && sgn(c.re()) < 0;
        if (negative) c = -c;
        std::string body;
        if (mono.empty()) body = coeff_text(c);
        else if (c.is_one()) body = mono;
        else body = coeff_text(c) + "*" + mono;
        if (s.empty()) s = negative ? "-" + body : body;
        else s += (negative ? " - " : " + ") + body;
    }
    return s;
}

std::string lowest_monomial(const TruncatedSeries& a, const std::vector<std::string>& names) {
    if (a.is_zero()) return "";
    const TruncatedSeries::Term* best = nullptr;
    for (const auto& t : a.terms())
        if (best == nullptr || t.first.degree() < best->first.degree()) best = &t;
    std::string mono = monomial_text(best->first, names, a.arity());
    return mono.empty() ? "1" : mono;
}

std::vector<std::string> indexed_names(const std::string& stem, int count, int first) {
    std::vector<std::string> v;
    for (int k = 0; k < count; ++k) v.push_back(stem + std::to_string(first + k));
    return v;
}

namespace {

void multi_rec(int n, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    const int i = static_cast<int>(cur.size());
    if (i == n - 1) {
        cur.push_back(k);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int e = k; e >= 0; --e) {
        cur.push_back(e);
        multi_rec(n, k - e, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<std::vector<int>> multi_indices(int n, int k) {
    std::vector<std::vector<int>> out;
    if (n == 0) {
        if (k == 0) out.emplace_back();
        return out;
    }
    std::vector<int> cur;
    multi_rec(n, k, cur, out);
    return out;
}

GaussianRational multi_factorial(const std::vector<int>& alpha) {
    mpz_class f = 1;
    for (int a : alpha) f *= factorial(static_cast<unsigned>(a));
    return GaussianRational(mpq_class(f));
}

}  // namespace segrekit
