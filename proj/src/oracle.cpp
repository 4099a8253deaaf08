#include "segrekit/oracle.hpp"

#include <algorithm>
#include <memory>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace segrekit {

// ------------------------------------------------------------------ Poly

Poly Poly::constant(const GaussianRational& c) {
    Poly p;
    if (!c.is_zero()) p.t_[{}] = c;
    return p;
}

Poly Poly::var(int v) {
    Poly p;
    p.t_[{v}] = GaussianRational(1);
    return p;
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }

GaussianRational Poly::constant_value() const {
    auto it = t_.find({});
    return it == t_.end() ? GaussianRational(0) : it->second;
}

int Poly::degree() const {
    int d = 0;
    for (const auto& [k, c] : t_) d = std::max(d, static_cast<int>(k.size()));
    return d;
}

std::vector<int> Poly::variables() const {
    std::vector<int> vs;
    for (const auto& [k, c] : t_) vs.insert(vs.end(), k.begin(), k.end());
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

void Poly::add_term(const Key& k, const GaussianRational& c) {
    auto [it, fresh] = t_.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

bool Poly::contains(int v) const {
    for (const auto& [k, c] : t_)
        if (std::binary_search(k.begin(), k.end(), v)) return true;
    return false;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [k, c] : o.t_) {
        auto [it, fresh] = t_.emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [k, c] : o.t_) {
        auto [it, fresh] = t_.emplace(k, -c);
        if (!fresh) {
            it->second -= c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }
    return *this;
}

Poly& Poly::operator*=(const GaussianRational& c) {
    if (c.is_zero()) {
        t_.clear();
        return *this;
    }
    for (auto& [k, v] : t_) v *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ka, ca] : a.t_)
        for (const auto& [kb, cb] : b.t_) {
            Poly::Key k;
            k.reserve(ka.size() + kb.size());
            std::merge(ka.begin(), ka.end(), kb.begin(), kb.end(), std::back_inserter(k));
            GaussianRational c = ca * cb;
            auto [it, fresh] = r.t_.emplace(std::move(k), c);
            if (!fresh) {
                it->second += c;
                if (it->second.is_zero()) r.t_.erase(it);
            }
        }
    return r;
}

Poly Poly::substitute(int v, const Poly& e) const {
    if (e.is_constant()) {
        // common case: drop or rescale the terms containing v
        const GaussianRational c = e.constant_value();
        Poly out;
        for (const auto& [k, a] : t_) {
            auto lo = std::lower_bound(k.begin(), k.end(), v);
            if (lo == k.end() || *lo != v) {
                out.add_term(k, a);
                continue;
            }
            if (c.is_zero()) continue;
            auto hi = std::upper_bound(lo, k.end(), v);
            GaussianRational f = a;
            for (auto it = lo; it != hi; ++it) f *= c;
            Key rest(k.begin(), lo);
            rest.insert(rest.end(), hi, k.end());
            out.add_term(rest, f);
        }
        return out;
    }
    Poly out;
    std::vector<Poly> pw{Poly::constant(1)};
    for (const auto& [k, c] : t_) {
        int mult = static_cast<int>(std::count(k.begin(), k.end(), v));
        Poly term;
        Key rest;
        for (int x : k)
            if (x != v) rest.push_back(x);
        term.t_[rest] = c;
        if (mult == 0) {
            out += term;
            continue;
        }
        while (static_cast<int>(pw.size()) <= mult) pw.push_back(pw.back() * e);
        out += term * pw[mult];
    }
    return out;
}

std::optional<GaussianRational> Poly::isolated_linear(int v) const {
    std::optional<GaussianRational> coef;
    for (const auto& [k, c] : t_) {
        if (std::find(k.begin(), k.end(), v) == k.end()) continue;
        if (k.size() != 1 || coef) return std::nullopt;
        coef = c;
    }
    return coef;
}

std::string to_string(OracleVerdict v) {
    switch (v) {
        case OracleVerdict::unique: return "unique";
        case OracleVerdict::ambiguous: return "ambiguous";
        case OracleVerdict::inconsistent: return "inconsistent";
    }
    return "?";
}

namespace {

// ------------------------------------------------------------------ series with Poly coefficients

// grouped by total degree in the (z, chi, tau) variables
struct PSeries {
    std::vector<std::unordered_map<Monomial, Poly, MonomialHash>> by_deg;
    explicit PSeries(int cap = 0) : by_deg(cap + 1) {}
    int cap() const { return static_cast<int>(by_deg.size()) - 1; }

    void add(Monomial m, int deg, const Poly& p) {
        if (deg > cap() || p.is_zero()) return;
        auto& slot = by_deg[deg][m];
        slot += p;
    }
};

// product terms of total degree in [lo, hi]
PSeries mul(const PSeries& a, const PSeries& b, int lo, int hi) {
    PSeries r(hi);
    for (int i = 0; i <= std::min(hi, a.cap()); ++i)
        for (int j = std::max(0, lo - i); i + j <= hi && j <= b.cap(); ++j)
            for (const auto& [ma, pa] : a.by_deg[i]) {
                if (pa.is_zero()) continue;
                for (const auto& [mb, pb] : b.by_deg[j]) {
                    if (pb.is_zero()) continue;
                    r.add(ma * mb, i + j, pa * pb);
                }
            }
    return r;
}

// degree p part of outer(in); the inputs have no constant terms
std::unordered_map<Monomial, Poly, MonomialHash> outer_slice(const TruncatedSeries& outer, const std::vector<PSeries>& in,
                                                             int p) {
    std::vector<std::vector<PSeries>> pw(in.size());
    auto power = [&](int i, int e) -> const PSeries& {
        auto& v = pw[i];
        if (v.empty()) v.push_back(PSeries(p));
        if (v.size() == 1) v.push_back(in[i]);
        while (static_cast<int>(v.size()) <= e) v.push_back(mul(v.back(), in[i], 0, p));
        return v[e];
    };
    std::unordered_map<Monomial, Poly, MonomialHash> acc;
    auto add_slice = [&](const PSeries& t, const GaussianRational& c) {
        if (t.cap() < p) return;
        for (const auto& [m, q] : t.by_deg[p]) {
            if (q.is_zero()) continue;
            Poly x = q;
            x *= c;
            acc[m] += x;
        }
    };
    for (const auto& [mono, c] : outer.terms()) {
        if (mono.degree() > p) continue;
        std::vector<std::pair<int, int>> factors;
        for (int i = 0; i < outer.arity(); ++i)
            if (mono.exp(i) > 0) factors.emplace_back(i, mono.exp(i));
        if (factors.empty()) continue;
        if (factors.size() == 1) {
            add_slice(power(factors[0].first, factors[0].second), c);
            continue;
        }
        PSeries term = power(factors[0].first, factors[0].second);
        int rest = 0;
        for (std::size_t f = 1; f < factors.size(); ++f) rest += factors[f].second;
        for (std::size_t f = 1; f < factors.size(); ++f) {
            rest -= factors[f].second;
            // later factors contribute at least their exponent in degree
            term = mul(term, power(factors[f].first, factors[f].second), f + 1 == factors.size() ? p : 0, p - rest);
        }
        add_slice(term, c);
    }
    return acc;
}

// ------------------------------------------------------------------ the solver

struct Unknown {
    int side = 0;  // 0: H, 1: Htilde
    int comp = 0;
    std::vector<int> mu;
    int deg = 0;
};

// an equation with its sorted unknowns
struct Eq {
    Poly q;
    std::vector<int> vars;
    explicit Eq(Poly p) : q(std::move(p)), vars(q.variables()) {}
    bool has(int v) const { return std::binary_search(vars.begin(), vars.end(), v); }
};

struct State {
    std::vector<std::optional<Poly>> sigma;
    std::vector<Eq> fresh;  // not yet examined since the last change
    std::vector<Eq> stuck;  // examined: no isolated unknown, not univariate
    std::vector<int> open;     // unknowns whose value still involves other unknowns
    int next_degree = 1;
    int cursor = 0;            // unknowns below are assigned
    bool specialized = false;  // some unknown was set by choice, not by an equation
    bool open_low = false;     // an unknown of degree <= D was specialized
    bool hold = false;         // keep every open unknown symbolic up to the last degree
    // states just before specializing such an unknown: the first one at all,
    // and the first one absent from every stuck equation
    int first_var = -1, loose_var = -1;
    std::shared_ptr<const State> first_snap, loose_snap;
};

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
    if (sgn(q) < 0) return std::nullopt;
    mpz_class n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return mpq_class(rn, rd);
}

// square root in Q(i), when it exists
std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& z) {
    if (z.is_zero()) return GaussianRational(0);
    auto r = rational_sqrt(z.norm());
    if (!r) return std::nullopt;
    auto x = rational_sqrt((z.re() + *r) / 2);
    if (!x) return std::nullopt;
    if (sgn(*x) == 0) {
        auto y = rational_sqrt(-z.re());
        if (!y) return std::nullopt;
        return GaussianRational(0, sgn(z.im()) < 0 ? mpq_class(-*y) : *y);
    }
    mpq_class y = z.im() / (2 * *x);
    return GaussianRational(*x, y);
}

// roots in Q(i) of a univariate equation, or nullopt when out of reach
std::optional<std::vector<GaussianRational>> univariate_roots(const Poly& p, int v) {
    std::map<int, GaussianRational> coef;
    for (const auto& [k, c] : p.terms()) coef[static_cast<int>(k.size())] = c;
    std::vector<GaussianRational> roots;
    const int low = coef.begin()->first;
    if (low > 0) roots.push_back(0);
    std::map<int, GaussianRational> q;
    for (const auto& [e, c] : coef) q[e - low] = c;
    const int deg = q.rbegin()->first;
    if (deg == 1) {
        roots.push_back(-q[0] / q[1]);
    } else if (deg == 2) {
        GaussianRational a = q[2], b = q.count(1) ? q[1] : GaussianRational(0), c = q.count(0) ? q[0] : GaussianRational(0);
        auto s = gaussian_sqrt(b * b - GaussianRational(4) * a * c);
        if (!s) return std::nullopt;
        roots.push_back((-b + *s) / (GaussianRational(2) * a));
        if (!s->is_zero()) roots.push_back((-b - *s) / (GaussianRational(2) * a));
    } else if (deg > 2) {
        return std::nullopt;
    }
    (void)v;
    std::vector<GaussianRational> uniq;
    for (const auto& r : roots)
        if (std::find(uniq.begin(), uniq.end(), r) == uniq.end()) uniq.push_back(r);
    return uniq;
}

// bound on the second-completion searches per branch
constexpr int kHeldAttempts = 8;

class Oracle {
public:
    Oracle(const GenericModel& M, const GenericModel& Mp, int D, int lag)
        : M_(M), Mp_(Mp), D_(D), P_(D + lag), lag_(lag) {
        const int P = P_;
        m_ = M.m;
        d_ = M.d;
        n_ = Mp.m;
        e_ = Mp.d;
        Mc_ = model_at_cap(M, P);
        Mpc_ = model_at_cap(Mp, P);
        const Truncation t = Mc_.truncation();
        // basis z^{mu_z} Q^{mu_w} on the graph, Htilde monomials renamed into (z, chi, tau)
        for (int k = 0; k <= P; ++k)
            for (const auto& mu : multi_indices(m_ + d_, k)) {
                TruncatedSeries b = TruncatedSeries::constant(t, 1);
                for (int j = 0; j < m_; ++j)
                    for (int c = 0; c < mu[j]; ++c) b = b * TruncatedSeries::variable(t, j);
                for (int r = 0; r < d_; ++r)
                    for (int c = 0; c < mu[m_ + r]; ++c) b = b * Mc_.Q[r];
                std::vector<std::vector<std::pair<Monomial, GaussianRational>>> g(P + 1);
                for (const auto& [mono, c] : b.terms()) g[mono.degree()].emplace_back(mono, c);
                basis_.emplace(mu, std::move(g));
                std::vector<int> ex(2 * m_ + d_, 0);
                for (int j = 0; j < m_; ++j) ex[m_ + j] = mu[j];
                for (int r = 0; r < d_; ++r) ex[2 * m_ + r] = mu[m_ + r];
                tilde_.emplace(mu, Monomial::from_exponents(ex));
            }
    }

    // known[side][(comp, mu)] = coefficient (not derivative)
    std::map<std::pair<int, std::vector<int>>, GaussianRational> known[2];
    int known_order[2] = {0, 0};

    OracleResult run();

private:
    struct OpenFailure : std::runtime_error {
        using std::runtime_error::runtime_error;
    };
    OracleResult solve(bool hold);
public:

private:
    const GenericModel &M_, &Mp_;
    GenericModel Mc_, Mpc_;
    int D_, P_, lag_;
    int m_ = 0, d_ = 0, n_ = 0, e_ = 0;
    // terms of z^{mu_z} Q^{mu_w} grouped by degree
    std::map<std::vector<int>, std::vector<std::vector<std::pair<Monomial, GaussianRational>>>> basis_;
    std::map<std::vector<int>, Monomial> tilde_;
    std::vector<Unknown> unknowns_;
    std::map<std::tuple<int, int, std::vector<int>>, int> index_;

    // degree-major, so an isolated unknown is expressed through older ones
    void build_unknowns() {
        for (int k = 1; k <= P_; ++k)
            for (int side = 0; side < 2; ++side) {
                if (k <= known_order[side]) continue;
                for (int c = 0; c < n_ + e_; ++c)
                    for (const auto& mu : multi_indices(m_ + d_, k)) {
                        index_[{side, c, mu}] = static_cast<int>(unknowns_.size());
                        unknowns_.push_back({side, c, mu, k});
                    }
            }
    }

    struct Search {
        std::vector<State> finished;
        int undecided = 0;  // branches lost after a specialization
        int genuine = 0;    // branches refuted by the equations alone
        int branch_points = 0;
    };
    void explore(std::vector<State> stack, Search& out, int& equations);

    Poly value(const State& s, int side, int comp, const std::vector<int>& mu) const {
        auto it = index_.find({side, comp, mu});
        if (it == index_.end()) {
            auto kt = known[side].find({comp, mu});
            return kt == known[side].end() ? Poly() : Poly::constant(kt->second);
        }
        const auto& sv = s.sigma[it->second];
        return sv ? *sv : Poly::var(it->second);
    }

    // degree p part of the verify residual, per component
    std::vector<std::unordered_map<Monomial, Poly, MonomialHash>> residual(const State& s, int p) const {
        std::vector<PSeries> FZ(n_ + e_, PSeries(p)), Ft(n_ + e_, PSeries(p));
        for (int c = 0; c < n_ + e_; ++c)
            for (int k = 1; k <= p; ++k)
                for (const auto& mu : multi_indices(m_ + d_, k)) {
                    Poly a = value(s, 0, c, mu);
                    if (!a.is_zero()) {
                        const auto& bs = basis_.at(mu);
                        for (int q = k; q <= p; ++q)
                            for (const auto& [mono, x] : bs[q]) {
                                Poly y = a;
                                y *= x;
                                FZ[c].add(mono, q, y);
                            }
                    }
                    Poly b = value(s, 1, c, mu);
                    if (!b.is_zero()) Ft[c].add(tilde_.at(mu), k, b);
                }
        std::vector<PSeries> in;
        for (int j = 0; j < n_; ++j) in.push_back(FZ[j]);
        for (int j = 0; j < n_; ++j) in.push_back(Ft[j]);
        for (int r = 0; r < e_; ++r) in.push_back(Ft[n_ + r]);
        std::vector<std::unordered_map<Monomial, Poly, MonomialHash>> out;
        for (int r = 0; r < e_; ++r) {
            auto slice = outer_slice(Mpc_.Q[r], in, p);
            for (auto& [m, q] : slice) q *= GaussianRational(-1);
            for (const auto& [m, q] : FZ[n_ + r].by_deg[p]) slice[m] += q;
            out.push_back(std::move(slice));
        }
        return out;
    }

    void assign(State& s, int v, const Poly& e) {
        s.sigma[v] = e;
        std::vector<int> still;
        for (int u : s.open) {
            Poly& x = *s.sigma[u];
            if (x.contains(v)) x = x.substitute(v, e);
            if (!x.is_constant()) still.push_back(u);
        }
        if (!e.is_constant()) still.push_back(v);
        s.open = std::move(still);
        for (auto& q : s.fresh)
            if (q.has(v)) q = Eq(q.q.substitute(v, e));
        std::vector<Eq> keep;
        for (auto& q : s.stuck) {
            if (q.has(v)) s.fresh.push_back(Eq(q.q.substitute(v, e)));
            else keep.push_back(std::move(q));
        }
        s.stuck = std::move(keep);
    }

    enum class Outcome { settled, conflict, branch };
    struct Step {
        Outcome outcome;
        int var = -1;
        std::vector<GaussianRational> roots;
    };

    // newest unknown occurring only in a linear term of q, or -1
    static int isolated(const Poly& q) {
        std::map<int, int> count;
        std::set<int> linear;
        for (const auto& [k, c] : q.terms()) {
            for (std::size_t i = 0; i < k.size(); ++i)
                if (i == 0 || k[i] != k[i - 1]) ++count[k[i]];
            if (k.size() == 1) linear.insert(k[0]);
        }
        for (auto it = count.rbegin(); it != count.rend(); ++it)
            if (it->second == 1 && linear.count(it->first)) return it->first;
        return -1;
    }

    Step settle(State& s) {
        while (!s.fresh.empty()) {
            Poly q = std::move(s.fresh.back().q);
            s.fresh.pop_back();
            if (q.is_zero()) continue;
            if (q.is_constant()) return {Outcome::conflict, -1, {}};
            const int v = isolated(q);
            if (v < 0) {
                s.stuck.emplace_back(std::move(q));
                continue;
            }
            GaussianRational c = q.terms().at({v});
            Poly lead = Poly::var(v);
            lead *= c;
            q -= lead;
            q *= -c.inverse();
            assign(s, v, q);
        }
        for (const auto& [q, vars] : s.stuck) {
            if (vars.size() != 1) continue;
            auto roots = univariate_roots(q, vars[0]);
            if (!roots) continue;
            if (roots->empty()) return {Outcome::conflict, -1, {}};
            return {Outcome::branch, vars[0], *roots};
        }
        return {Outcome::settled, -1, {}};
    }

    SegrePreservingMap completion(const State& s, const std::string& name) const {
        const Truncation t = Truncation::total(m_ + d_, D_);
        SeriesVec side[2];
        for (int sd = 0; sd < 2; ++sd)
            for (int c = 0; c < n_ + e_; ++c) {
                std::vector<TruncatedSeries::Term> terms;
                for (int k = 1; k <= D_; ++k)
                    for (const auto& mu : multi_indices(m_ + d_, k)) {
                        Poly v = value(s, sd, c, mu);
                        if (!v.is_constant()) throw std::logic_error("oracle: completion of an undetermined state");
                        if (!v.constant_value().is_zero())
                            terms.emplace_back(Monomial::from_exponents(mu), v.constant_value());
                    }
                side[sd].push_back(TruncatedSeries::from_terms(t, std::move(terms), false));
            }
        return make_map(name, model_at_cap(M_, D_), model_at_cap(Mp_, D_), side[0], side[1]);
    }
};

void Oracle::explore(std::vector<State> stack, Search& out, int& equations) {
    const int N = static_cast<int>(unknowns_.size());
    while (!stack.empty()) {
        State s = std::move(stack.back());
        stack.pop_back();
        bool dead = false;
        for (;;) {
            Step st = settle(s);
            if (st.outcome == Outcome::conflict) {
                dead = true;
                break;
            }
            if (st.outcome == Outcome::branch) {
                ++out.branch_points;
                for (std::size_t i = 1; i < st.roots.size(); ++i) {
                    State b = s;
                    assign(b, st.var, Poly::constant(st.roots[i]));
                    stack.push_back(std::move(b));
                }
                assign(s, st.var, Poly::constant(st.roots[0]));
                continue;
            }
            // unknowns still open lag_ degrees after their own are set to 0
            const int limit = s.next_degree > P_ ? P_ : s.next_degree - 1 - lag_;
            while (s.cursor < N && s.sigma[s.cursor]) ++s.cursor;
            int u = -1;
            for (int i = s.cursor; i < N && unknowns_[i].deg <= limit; ++i)
                if (!s.sigma[i] && (!s.hold || s.next_degree > P_)) {
                    u = i;
                    break;
                }
            if (u >= 0) {
                if (unknowns_[u].deg <= D_) {
                    bool loose = s.loose_var < 0;
                    for (const auto& q : s.stuck) loose = loose && !q.has(u);
                    if (loose || s.first_var < 0) {
                        auto snap = std::make_shared<State>(s);
                        snap->first_snap.reset();
                        snap->loose_snap.reset();
                        if (s.first_var < 0) {
                            s.first_var = u;
                            s.first_snap = snap;
                        }
                        if (loose) {
                            s.loose_var = u;
                            s.loose_snap = snap;
                        }
                    }
                    s.open_low = true;
                }
                s.specialized = true;
                assign(s, u, Poly());
                continue;
            }
            if (s.next_degree > P_) break;
            const int p = s.next_degree++;
            for (auto& R : residual(s, p))
                for (auto& [mono, q] : R)
                    if (!q.is_zero()) {
                        s.fresh.emplace_back(std::move(q));
                        ++equations;
                    }
        }
        if (!dead) out.finished.push_back(std::move(s));
        else if (s.specialized) ++out.undecided;
        else ++out.genuine;
    }
}

// Open unknowns are first set to 0 a lag after their degree; when that
// leaves the verdict undecided, the search is redone with all of them
// symbolic until the last degree.
OracleResult Oracle::run() {
    build_unknowns();
    try {
        return solve(false);
    } catch (const OpenFailure&) {
        return solve(true);
    }
}

OracleResult Oracle::solve(bool hold) {
    OracleResult res;
    res.unknowns = static_cast<int>(unknowns_.size());
    State init;
    init.sigma.assign(unknowns_.size(), std::nullopt);
    init.hold = hold;
    Search found;
    explore({init}, found, res.equations);

    auto fail_open = [&](const std::string& what) {
        return OpenFailure("oracle: " + what + "; " + std::to_string(found.undecided) +
                                  " branches could not be completed with the open coefficients set to 0");
    };

    // an open coefficient of degree <= D: realise a second completion with it set to 1
    for (const auto& s : found.finished) {
        if (s.first_var < 0) continue;
        // the loose unknown, the first one, then each unknown of that degree
        // with everything else kept symbolic until the end
        struct Attempt {
            const State* from;
            int var;
            bool hold;
        };
        std::vector<Attempt> attempts;
        if (s.loose_var >= 0) attempts.push_back({s.loose_snap.get(), s.loose_var, false});
        attempts.push_back({s.first_snap.get(), s.first_var, false});
        const int q = unknowns_[s.first_var].deg;
        int tried = 0;
        for (int v = s.first_var; v < static_cast<int>(unknowns_.size()) && unknowns_[v].deg == q; ++v)
            if (!s.first_snap->sigma[v] && tried++ < kHeldAttempts) attempts.push_back({s.first_snap.get(), v, true});
        int w = -1;
        std::optional<State> other_done;
        for (const auto& at : attempts) {
            State alt = *at.from;
            alt.specialized = true;
            alt.open_low = true;
            alt.first_var = alt.loose_var = 0;  // no further snapshots
            alt.hold = at.hold || hold;
            assign(alt, at.var, Poly::constant(1));
            Search other;
            explore({alt}, other, res.equations);
            if (other.finished.empty()) continue;
            w = at.var;
            other_done = std::move(other.finished.front());
            break;
        }
        if (w < 0) continue;
        res.verdict = OracleVerdict::ambiguous;
        res.alternatives.push_back(completion(s, "completion_1"));
        res.alternatives.push_back(completion(*other_done, "completion_2"));
        const Unknown& u = unknowns_[w];
        res.degree = u.deg;
        res.detail = "free coefficient of degree " + std::to_string(u.deg) + " (" + (u.side == 0 ? "H" : "Htilde") +
                     " component " + std::to_string(u.comp + 1) + ")";
        break;
    }
    if (res.alternatives.empty()) {
        for (const auto& s : found.finished) {
            if (s.open_low) throw fail_open("a free coefficient of degree <= D admits only one value");
            SegrePreservingMap c = completion(s, "completion_" + std::to_string(res.alternatives.size() + 1));
            bool seen = false;
            for (const auto& a : res.alternatives) seen |= map_equal(a, c);
            if (!seen) res.alternatives.push_back(std::move(c));
        }
        if (res.alternatives.empty()) {
            if (found.undecided > 0) throw fail_open("no completion found");
            res.verdict = OracleVerdict::inconsistent;
            res.detail = "no completion satisfies the residual up to degree " + std::to_string(P_);
            return res;
        }
        if (res.alternatives.size() == 1) {
            if (found.undecided > 0) throw fail_open("uniqueness not established");
            res.verdict = OracleVerdict::unique;
            res.solution = res.alternatives.front();
            res.detail = "all coefficients up to degree " + std::to_string(D_) + " determined";
            return res;
        }
        res.verdict = OracleVerdict::ambiguous;
        res.detail = std::to_string(res.alternatives.size()) + " distinct completions after " +
                     std::to_string(found.branch_points) + " branch points";
    }
    const auto& a = res.alternatives[0];
    const auto& b = res.alternatives[1];
    SeriesVec ha = a.H(), hb = b.H(), ta = a.Htilde(), tb = b.Htilde();
    for (std::size_t c = 0; c < ha.size(); ++c) res.witness.push_back(hb[c] - ha[c]);
    for (std::size_t c = 0; c < ta.size(); ++c) res.witness.push_back(tb[c] - ta[c]);
    int low = D_ + 1;
    for (const auto& w : res.witness)
        if (!w.is_zero()) low = std::min(low, w.valuation());
    res.degree = low;
    return res;
}

int slack_for(const GenericModel& Mp) {
    int v = std::numeric_limits<int>::max();
    for (int r = 0; r < Mp.d; ++r) {
        std::vector<int> ex(Mp.arity(), 0);
        ex[2 * Mp.m + r] = 1;
        TruncatedSeries q = Mp.Q[r] - TruncatedSeries::monomial(Mp.truncation(), ex, 1);
        if (!q.is_zero()) v = std::min(v, q.valuation());
    }
    if (v == std::numeric_limits<int>::max()) return 1;
    return std::max(1, v - 1) + 1;
}

void load_table(Oracle& o, int side, const JetTable& t) {
    for (const auto& [key, val] : t.entries)
        if (!val.is_zero()) o.known[side][key] = val / multi_factorial(key.second);
    o.known_order[side] = t.K;
}

// margin over the first degree at which an unknown can enter the equations
constexpr int kLagMargin = 2;

}  // namespace

OracleResult jet_determination_oracle(const GenericModel& source, const GenericModel& target, const JetPair& jets,
                                      int D) {
    if (D < 0) D = source.D;
    if (jets.K > D) throw std::invalid_argument("oracle: jet order exceeds D");
    Oracle o(source, target, D, slack_for(target) + kLagMargin);
    load_table(o, 0, jets.left);
    load_table(o, 1, jets.right);
    return o.run();
}

OracleResult partner_oracle(const GenericModel& source, const GenericModel& target, KnownSide known,
                            const SeriesVec& data, int D) {
    if (D < 0) D = source.D;
    const int C = data.front().degree_cap();
    const int side = known == KnownSide::H ? 0 : 1;
    const int lag = slack_for(target) + kLagMargin;
    Oracle o(source, target, D, lag);
    load_table(o, side, jet_table(data, std::min(C, D + lag)));
    o.known_order[1 - side] = 0;
    return o.run();
}

MembershipResult jet_extends_to_automorphism(const GenericModel& M, const JetPair& jets) {
    MembershipResult out;
    try {
        ReconstructionResult r = full_jet_reconstruct(M, M, jets);
        out.method = "full_jet";
        out.member = r.certified;
        if (r.certified) out.automorphism = r.recovered;
        out.detail = r.certified ? r.detail : "does not extend: " + r.detail;
        return out;
    } catch (const ReconstructionError& e) {
        if (e.kind() == "inconsistent") {
            out.method = "full_jet";
            out.detail = std::string("does not extend: ") + e.what();
            return out;
        }
        if (e.kind() == "not-well-posed") throw;
        out.detail = std::string(e.what()) + "; ";
    }
    OracleResult o = jet_determination_oracle(M, M, jets);
    out.method = "oracle";
    out.member = o.verdict != OracleVerdict::inconsistent;
    if (o.solution) out.automorphism = o.solution;
    out.detail += to_string(o.verdict) + ": " + o.detail;
    if (!out.member) out.detail = "does not extend: " + out.detail;
    return out;
}

}  // namespace segrekit
