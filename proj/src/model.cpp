#include "segrekit/model.hpp"

#include <algorithm>
#include <map>

namespace segrekit {

ModelError::ModelError(std::string kind, int component, std::string monomial)
    : std::runtime_error(kind + " violation in component " + std::to_string(component) +
                         (monomial.empty() ? "" : " at monomial " + monomial)),
      kind_(std::move(kind)), component_(component), monomial_(std::move(monomial)) {}

SeriesVec GenericModel::Qbar() const {
    SeriesVec out;
    for (const auto& q : Q) out.push_back(conjugate_series(q));
    return out;
}

std::vector<std::string> GenericModel::names() const {
    auto n = indexed_names("z", m);
    auto c = indexed_names("chi", m);
    auto t = indexed_names("tau", d);
    n.insert(n.end(), c.begin(), c.end());
    n.insert(n.end(), t.begin(), t.end());
    return n;
}

std::vector<std::string> GenericModel::graph_names() const {
    auto n = indexed_names("z", m);
    auto c = indexed_names("chi", m);
    auto w = indexed_names("w", d);
    n.insert(n.end(), c.begin(), c.end());
    n.insert(n.end(), w.begin(), w.end());
    return n;
}

namespace {

std::vector<int> range(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i < hi; ++i) v.push_back(i);
    return v;
}

// Qbar(chi, z, w) written in the (z, chi, w) slots
SeriesVec qbar_swapped(const GenericModel& M, const Truncation& t) {
    std::vector<int> map(M.arity());
    for (int j = 0; j < M.m; ++j) {
        map[j] = M.m + j;
        map[M.m + j] = j;
    }
    for (int r = 0; r < M.d; ++r) map[2 * M.m + r] = 2 * M.m + r;
    SeriesVec out;
    for (const auto& q : M.Qbar()) out.push_back(rename(with_cap(q, t.degree_cap()), t, map));
    return out;
}

}  // namespace

std::optional<ModelError> normality_violation(const GenericModel& M) {
    const int m = M.m;
    for (int r = 0; r < M.d; ++r) {
        TruncatedSeries tau = TruncatedSeries::variable(M.truncation(), 2 * m + r);
        TruncatedSeries a = set_zero(M.Q[r], range(0, m)) - tau;
        if (!a.is_zero()) return ModelError("normality", r + 1, lowest_monomial(a, M.names()));
        TruncatedSeries b = set_zero(M.Q[r], range(m, 2 * m)) - tau;
        if (!b.is_zero()) return ModelError("normality", r + 1, lowest_monomial(b, M.names()));
    }
    return std::nullopt;
}

std::optional<ModelError> reality_violation(const GenericModel& M) {
    const Truncation t = M.truncation();
    SeriesVec inner;
    for (int i = 0; i < 2 * M.m; ++i) inner.push_back(TruncatedSeries::variable(t, i));
    SeriesVec qb = qbar_swapped(M, t);
    inner.insert(inner.end(), qb.begin(), qb.end());
    for (int r = 0; r < M.d; ++r) {
        TruncatedSeries res = compose(M.Q[r], inner) - TruncatedSeries::variable(t, 2 * M.m + r);
        if (!res.is_zero()) return ModelError("reality", r + 1, lowest_monomial(res, M.graph_names()));
    }
    return std::nullopt;
}

GenericModel from_normal(int m, int d, int D, SeriesVec Q, std::string name) {
    if (m < 1 || d < 1) throw std::invalid_argument("model needs m >= 1 and d >= 1");
    if (static_cast<int>(Q.size()) != d)
        throw std::invalid_argument("model declares d=" + std::to_string(d) + " but has " + std::to_string(Q.size()) +
                                    " components");
    GenericModel M{std::move(name), m, d, D, {}};
    for (auto& q : Q) {
        if (q.arity() != 2 * m + d) throw std::invalid_argument("model component arity != 2m+d");
        M.Q.push_back(q.truncation() == M.truncation() ? q : retruncate(q, M.truncation()));
    }
    if (auto e = normality_violation(M)) throw *e;
    if (auto e = reality_violation(M)) throw *e;
    return M;
}

GenericModel from_real_graph(int m, int d, int D, const SeriesVec& phi, std::string name) {
    if (static_cast<int>(phi.size()) != d) throw std::invalid_argument("graph: expected d components");
    const int n = 2 * m + d;
    for (int r = 0; r < d; ++r) {
        if (phi[r].arity() != n) throw std::invalid_argument("graph component arity != 2m+d");
        auto names = indexed_names("z", m);
        auto c = indexed_names("chi", m);
        auto s = d == 1 ? std::vector<std::string>{"s"} : indexed_names("s", d);
        names.insert(names.end(), c.begin(), c.end());
        names.insert(names.end(), s.begin(), s.end());
        TruncatedSeries a = set_zero(phi[r], range(0, m));
        if (!a.is_zero()) throw ModelError("graph vanishing", r + 1, lowest_monomial(a, names));
        TruncatedSeries b = set_zero(phi[r], range(m, 2 * m));
        if (!b.is_zero()) throw ModelError("graph vanishing", r + 1, lowest_monomial(b, names));
    }
    // phi free of s: Q = tau + 2i phi, no solve and no truncation loss
    bool rigid = true;
    for (const auto& p : phi)
        for (const auto& [mono, c] : p.terms())
            for (int r = 0; r < d; ++r) rigid &= mono.exp(2 * m + r) == 0;
    if (rigid) {
        const Truncation tq = Truncation::total(n, D);
        SeriesVec Q;
        for (int r = 0; r < d; ++r) {
            TruncatedSeries p = phi[r].truncation() == tq ? phi[r] : retruncate(phi[r], tq);
            if (!phi[r].exact() && phi[r].degree_cap() <= D) p.set_exact(false);
            Q.push_back(TruncatedSeries::variable(tq, 2 * m + r) + p * GaussianRational(0, 2));
        }
        return from_normal(m, d, D, std::move(Q), std::move(name));
    }
    // F = w - tau - 2i phi(z, chi, (w + tau)/2) over (z, chi, tau, w)
    const Truncation t = Truncation::total(n + d, D);
    SeriesVec inner;
    for (int i = 0; i < 2 * m; ++i) inner.push_back(TruncatedSeries::variable(t, i));
    for (int r = 0; r < d; ++r)
        inner.push_back((TruncatedSeries::variable(t, n + r) + TruncatedSeries::variable(t, 2 * m + r)) *
                        GaussianRational::frac(1, 2));
    SeriesVec F;
    const GaussianRational two_i(0, 2);
    for (int r = 0; r < d; ++r) {
        TruncatedSeries p = phi[r].truncation() == Truncation::total(n, D) ? phi[r] : retruncate(phi[r], Truncation::total(n, D));
        F.push_back(TruncatedSeries::variable(t, n + r) - TruncatedSeries::variable(t, 2 * m + r) -
                    compose(p, inner) * two_i);
    }
    SeriesVec Q = ift_solve(F, n);
    return from_normal(m, d, D, std::move(Q), std::move(name));
}

// ------------------------------------------------------------------ frames

namespace {

// Composition on the graph: ambient (z, w, chi, tau) -> params (z, chi, tau)
SeriesVec graph_embedding(const GenericModel& M, int cap) {
    const Truncation t = Truncation::total(M.arity(), cap);
    SeriesVec in;
    for (int j = 0; j < M.m; ++j) in.push_back(TruncatedSeries::variable(t, j));
    for (int r = 0; r < M.d; ++r) in.push_back(with_cap(M.Q[r], cap));
    for (int j = 0; j < M.m; ++j) in.push_back(TruncatedSeries::variable(t, M.m + j));
    for (int r = 0; r < M.d; ++r) in.push_back(TruncatedSeries::variable(t, 2 * M.m + r));
    return in;
}

}  // namespace

CrFrame cr_frame(const GenericModel& M) {
    const int m = M.m, d = M.d;
    const Truncation amb = Truncation::total(2 * m + 2 * d, M.D - 1);
    // Q(z, chi, tau): slots go to ambient z, chi, tau
    std::vector<int> q_map(M.arity()), qb_map(M.arity());
    for (int j = 0; j < m; ++j) {
        q_map[j] = j;
        q_map[m + j] = m + d + j;
        qb_map[j] = m + d + j;  // first slot of Qbar receives chi
        qb_map[m + j] = j;      // second receives z
    }
    for (int r = 0; r < d; ++r) {
        q_map[2 * m + r] = 2 * m + d + r;
        qb_map[2 * m + r] = m + r;  // third receives w
    }
    CrFrame F{m, d, {}, {}};
    SeriesVec qb = M.Qbar();
    for (int j = 0; j < m; ++j) {
        SeriesVec l, lt;
        for (int r = 0; r < d; ++r) {
            l.push_back(rename(differentiate(M.Q[r], j), amb, q_map));
            lt.push_back(rename(differentiate(qb[r], j), amb, qb_map));
        }
        F.L.push_back(std::move(l));
        F.Ltilde.push_back(std::move(lt));
    }
    return F;
}

std::vector<TruncatedSeries> frame_tangency_residuals(const GenericModel& M, const CrFrame& F) {
    const int m = M.m, d = M.d;
    const int cap = M.D - 1;
    const Truncation full = Truncation::total(2 * m + 2 * d, M.D);
    // rho_r = w_r - Q^r(z,chi,tau), rhot_r = tau_r - Qbar^r(chi,z,w), both ambient
    std::vector<int> q_map(M.arity()), qb_map(M.arity());
    for (int j = 0; j < m; ++j) {
        q_map[j] = j;
        q_map[m + j] = m + d + j;
        qb_map[j] = m + d + j;
        qb_map[m + j] = j;
    }
    for (int r = 0; r < d; ++r) {
        q_map[2 * m + r] = 2 * m + d + r;
        qb_map[2 * m + r] = m + r;
    }
    SeriesVec rho, rhot;
    SeriesVec qb = M.Qbar();
    for (int r = 0; r < d; ++r) {
        rho.push_back(TruncatedSeries::variable(full, m + r) - rename(M.Q[r], full, q_map));
        rhot.push_back(TruncatedSeries::variable(full, 2 * m + d + r) - rename(qb[r], full, qb_map));
    }
    auto apply = [&](bool tilde, int j, const TruncatedSeries& f) {
        // d/dz_j (or d/dchi_j) plus the transverse part
        const int base = tilde ? m + d + j : j;
        TruncatedSeries out = differentiate(f, base);
        for (int s = 0; s < d; ++s) {
            const int target = tilde ? 2 * m + d + s : m + s;
            const TruncatedSeries& c = tilde ? F.Ltilde[j][s] : F.L[j][s];
            out += c * differentiate(f, target);
        }
        return out;
    };
    SeriesVec emb = graph_embedding(M, cap);
    std::vector<TruncatedSeries> out;
    for (int j = 0; j < m; ++j)
        for (int r = 0; r < d; ++r) {
            for (bool tilde : {false, true}) {
                out.push_back(compose(apply(tilde, j, rho[r]), emb));
                out.push_back(compose(apply(tilde, j, rhot[r]), emb));
            }
        }
    return out;
}

std::vector<VectorField> intrinsic_frame(const GenericModel& M) {
    const int m = M.m, d = M.d, n = M.arity();
    const int cap = M.D - 1;
    const Truncation t = Truncation::total(n, cap);
    // (chi, z, Q(z,chi,tau)) substituted into the Qbar slots
    SeriesVec in;
    for (int j = 0; j < m; ++j) in.push_back(TruncatedSeries::variable(t, m + j));
    for (int j = 0; j < m; ++j) in.push_back(TruncatedSeries::variable(t, j));
    for (int r = 0; r < d; ++r) in.push_back(with_cap(M.Q[r], cap));
    SeriesVec qb = M.Qbar();
    std::vector<VectorField> gens;
    for (int j = 0; j < m; ++j) {
        VectorField L{SeriesVec(n, TruncatedSeries(t))};
        L.c[j] = TruncatedSeries::constant(t, 1);
        gens.push_back(std::move(L));
    }
    for (int j = 0; j < m; ++j) {
        VectorField Lt{SeriesVec(n, TruncatedSeries(t))};
        Lt.c[m + j] = TruncatedSeries::constant(t, 1);
        for (int r = 0; r < d; ++r) Lt.c[2 * m + r] = compose(differentiate(qb[r], j), in);
        gens.push_back(std::move(Lt));
    }
    return gens;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
    const int n = static_cast<int>(X.c.size());
    const int cap = X.c.front().degree_cap();
    VectorField out{SeriesVec(n, TruncatedSeries(Truncation::total(n, cap - 1)))};
    for (int i = 0; i < n; ++i) {
        TruncatedSeries xi = with_cap(X.c[i], cap - 1);
        TruncatedSeries yi = with_cap(Y.c[i], cap - 1);
        for (int k = 0; k < n; ++k) {
            if (!xi.is_zero()) {
                TruncatedSeries dy = differentiate(Y.c[k], i);
                if (!dy.is_zero()) out.c[k] += xi * dy;
            }
            if (!yi.is_zero()) {
                TruncatedSeries dx = differentiate(X.c[k], i);
                if (!dx.is_zero()) out.c[k] -= yi * dx;
            }
        }
    }
    return out;
}

namespace {

using SparseKey = std::pair<int, unsigned __int128>;
using SparseRow = std::map<SparseKey, GaussianRational>;

SparseRow flatten(const VectorField& X) {
    SparseRow row;
    for (std::size_t k = 0; k < X.c.size(); ++k)
        for (const auto& [mono, c] : X.c[k].terms()) row.emplace(SparseKey{static_cast<int>(k), mono.bits()}, c);
    return row;
}

// Incremental elimination over sparse rows; keeps rows with distinct leading keys.
class SparseEchelon {
public:
    // true if `row` was independent of the rows seen so far
    bool insert(SparseRow row) {
        for (;;) {
            if (row.empty()) return false;
            auto lead = row.begin()->first;
            auto it = basis_.find(lead);
            if (it == basis_.end()) {
                GaussianRational inv = row.begin()->second.inverse();
                for (auto& [k, v] : row) v *= inv;
                basis_.emplace(lead, std::move(row));
                return true;
            }
            GaussianRational f = row.begin()->second;
            for (const auto& [k, v] : it->second) {
                auto& slot = row[k];
                slot -= f * v;
                if (slot.is_zero()) row.erase(k);
            }
        }
    }

private:
    std::map<SparseKey, SparseRow> basis_;
};

}  // namespace

FiniteTypeResult finite_type_order(const GenericModel& M, int bracket_bound) {
    if (bracket_bound < 2) throw std::invalid_argument("bracket bound must be >= 2");
    const int n = M.arity();
    FiniteTypeResult res;
    res.bound = bracket_bound;
    std::vector<VectorField> gens = intrinsic_frame(M);
    Matrix values;  // values at 0 collected so far
    auto add_values = [&](const std::vector<VectorField>& fs) {
        for (const auto& f : fs) {
            Vector v(n);
            for (int k = 0; k < n; ++k) v[k] = f.c[k].constant_term();
            values.push_back(std::move(v));
        }
        return values.empty() ? 0 : rank(values);
    };
    std::vector<VectorField> level = gens;
    int dim = add_values(level);
    res.span_dims.push_back(dim);
    res.reached = 1;
    if (dim == n) {
        res.order = 1;
        return res;
    }
    for (int len = 2; len <= bracket_bound; ++len) {
        const int cap = level.empty() ? 0 : level.front().c.front().degree_cap();
        if (level.empty() || cap < 1) break;
        std::vector<VectorField> next;
        SparseEchelon ech;
        for (const auto& g : gens) {
            VectorField gl{SeriesVec()};
            for (const auto& c : g.c) gl.c.push_back(with_cap(c, cap));
            for (const auto& b : level) {
                VectorField br = lie_bracket(gl, b);
                if (ech.insert(flatten(br))) next.push_back(std::move(br));
            }
        }
        level = std::move(next);
        dim = add_values(level);
        res.span_dims.push_back(dim);
        res.reached = len;
        if (dim == n) {
            res.order = len;
            return res;
        }
    }
    return res;
}

namespace {

// linear slot `lin` (0: z, 1: chi), alpha in the other slot
NondegeneracyResult nondeg_impl(const GenericModel& M, const SeriesVec& Q, int K_max, int lin) {
    if (K_max > M.D - 1) throw std::invalid_argument("nondegeneracy bound exceeds D-1");
    NondegeneracyResult res;
    res.bound = K_max;
    Matrix rows;
    int current = 0;
    for (int K = 1; K <= K_max; ++K) {
        for (const auto& alpha : multi_indices(M.m, K)) {
            for (int r = 0; r < M.d; ++r) {
                Vector v(M.m);
                GaussianRational fac = multi_factorial(alpha);
                for (int j = 0; j < M.m; ++j) {
                    std::vector<int> e(M.arity(), 0);
                    e[lin * M.m + j] = 1;
                    for (int i = 0; i < M.m; ++i) e[(1 - lin) * M.m + i] = alpha[i];
                    v[j] = Q[r].coeff(e) * fac;
                }
                rows.push_back(v);
                int rk = rank(rows);
                if (rk > current) {
                    current = rk;
                    if (!res.k) res.span.push_back(SpanRow{r, alpha});
                } else {
                    rows.pop_back();
                }
            }
        }
        res.ranks.push_back(current);
        if (current == M.m && !res.k) res.k = K;
    }
    if (!res.k) res.span.clear();
    return res;
}

}  // namespace

NondegeneracyResult nondegeneracy_order(const GenericModel& M, int K_max) { return nondeg_impl(M, M.Q, K_max, 0); }
// Qbar(chi', z', w'): rows d/dz' of the chi'^alpha coefficients, i.e. slot 1 linear
NondegeneracyResult nondegeneracy_order_bar(const GenericModel& M, int K_max) {
    return nondeg_impl(M, M.Qbar(), K_max, 1);
}

Inertia levi_signature(const GenericModel& M) {
    if (M.d != 1) throw std::invalid_argument("levi_signature needs codimension 1");
    Matrix h = zero_matrix(M.m, M.m);
    const GaussianRational inv_two_i = GaussianRational(0, 2).inverse();
    for (int j = 0; j < M.m; ++j)
        for (int k = 0; k < M.m; ++k) {
            std::vector<int> e(M.arity(), 0);
            e[j] = 1;
            e[M.m + k] = 1;
            h[j][k] = M.Q[0].coeff(e) * inv_two_i;
        }
    return hermitian_inertia(h);
}

// ------------------------------------------------------------------- Segre

SegreMapping segre_map(const GenericModel& M, int r) {
    if (r < 1) throw std::invalid_argument("segre order must be >= 1");
    const int m = M.m, d = M.d;
    if (r * m > Monomial::kMaxVars)
        throw std::invalid_argument("segre order " + std::to_string(r) + " needs " + std::to_string(r * m) +
                                    " variables (limit " + std::to_string(Monomial::kMaxVars) + ")");
    const Truncation t = Truncation::total(r * m, M.D);
    SegreMapping S{r, m, d, {}};
    for (int j = 0; j < m; ++j) S.v.push_back(TruncatedSeries::variable(t, j));
    SeriesVec qb = M.Qbar();
    // X_{r-1} = 0, X_b = P_b(t^b, t^{b+1}, X_{b+1}), P_b = Q for even b, Qbar for odd b
    SeriesVec X(d, TruncatedSeries(t));
    for (int b = r - 2; b >= 0; --b) {
        SeriesVec in;
        for (int j = 0; j < m; ++j) in.push_back(TruncatedSeries::variable(t, b * m + j));
        for (int j = 0; j < m; ++j) in.push_back(TruncatedSeries::variable(t, (b + 1) * m + j));
        in.insert(in.end(), X.begin(), X.end());
        const SeriesVec& P = b % 2 == 0 ? M.Q : qb;
        SeriesVec next;
        for (int k = 0; k < d; ++k) next.push_back(compose(P[k], in));
        X = std::move(next);
    }
    S.v.insert(S.v.end(), X.begin(), X.end());
    return S;
}

bool segre_stability(const GenericModel& M, int r) {
    SegreMapping a = segre_map(M, r + 1), b = segre_map(M, r);
    const int m = M.m;
    const Truncation t = Truncation::total(r * m, M.D);
    std::vector<int> last = range(r * m, (r + 1) * m);
    std::vector<int> map(static_cast<std::size_t>((r + 1) * m), 0);
    for (int i = 0; i < r * m; ++i) map[i] = i;
    for (std::size_t k = 0; k < a.v.size(); ++k) {
        TruncatedSeries s = rename(set_zero(a.v[k], last), t, map);
        if (s != b.v[k]) return false;
    }
    return true;
}

namespace {

// blocks of v^{2r}: 0 -> dropped, j -> x^j (1..r), r+j -> x^{r-j}
std::vector<int> symmetric_map(int r, int m) {
    std::vector<int> map(static_cast<std::size_t>(2 * r * m), 0);
    for (int j = 1; j <= r; ++j)
        for (int i = 0; i < m; ++i) map[j * m + i] = (j - 1) * m + i;
    for (int j = 1; j <= r - 1; ++j)
        for (int i = 0; i < m; ++i) map[(r + j) * m + i] = (r - j - 1) * m + i;
    return map;
}

}  // namespace

SeriesVec segre_symmetric_restriction(const GenericModel& M, int r) {
    const int m = M.m;
    SegreMapping v = segre_map(M, 2 * r);
    const Truncation t = Truncation::total(r * m, M.D);
    auto map = symmetric_map(r, m);
    SeriesVec out;
    for (const auto& s : v.v) out.push_back(rename(set_zero(s, range(0, m)), t, map));
    return out;
}

SegreRankResult segre_rank_r(const GenericModel& M, int r_max, int trials, Sampler& sampler) {
    const int m = M.m, d = M.d;
    SegreRankResult res;
    res.bound = r_max;
    for (int r = 1; r <= r_max; ++r) {
        if (2 * r * m > Monomial::kMaxVars) break;
        SegreMapping v = segre_map(M, 2 * r);
        auto map = symmetric_map(r, m);
        const Truncation tx = Truncation::total(r * m, M.D);
        for (std::size_t k = 0; k < v.v.size(); ++k) {
            TruncatedSeries s = rename(set_zero(v.v[k], range(0, m)), tx, map);
            if (!s.is_zero())
                throw std::logic_error("symmetric-point identity fails for r=" + std::to_string(r) +
                                       " in component " + std::to_string(k + 1));
        }
        // Jacobian in the block (t^0, t^{r+1}, ..., t^{2r-1}) at the symmetric point
        std::vector<int> cols = range(0, m);
        for (int b = r + 1; b <= 2 * r - 1; ++b)
            for (int i = 0; i < m; ++i) cols.push_back(b * m + i);
        const int rows = m + d;
        if (static_cast<int>(cols.size()) < rows) {
            res.ranks.push_back(static_cast<int>(cols.size()) < m ? 0 : m);
            res.method = "dimension";
            continue;
        }
        const Truncation tj = Truncation::total(r * m, M.D - 1);
        // the t^0 slot is evaluated at 0 after differentiation
        std::vector<std::vector<TruncatedSeries>> J(rows);
        bool exact = true;
        for (int k = 0; k < rows; ++k)
            for (int c : cols) {
                TruncatedSeries dv = differentiate(v.v[k], c);
                TruncatedSeries s = rename(set_zero(dv, range(0, m)), tj, map);
                exact = exact && dv.exact();
                J[k].push_back(std::move(s));
            }
        int best = 0;
        if (exact) {
            res.method = "sampled";
            for (int trial = 0; trial < trials && best < rows; ++trial) {
                std::vector<GaussianRational> x0(r * m);
                for (auto& x : x0) x = sampler.small_nonzero_rational();
                Matrix a = zero_matrix(rows, static_cast<int>(cols.size()));
                for (int k = 0; k < rows; ++k)
                    for (std::size_t c = 0; c < cols.size(); ++c) a[k][c] = evaluate(J[k][c], x0);
                best = std::max(best, rank(a));
            }
        } else {
            // truncated entries: a nonzero truncated minor certifies a nonzero minor
            res.method = "minor-series";
            const int nc = static_cast<int>(cols.size());
            std::vector<int> pick(rows);
            for (int i = 0; i < rows; ++i) pick[i] = i;
            for (;;) {
                SeriesMatrix sm(rows, rows, tj);
                for (int k = 0; k < rows; ++k)
                    for (int l = 0; l < rows; ++l) sm.at(k, l) = J[k][pick[l]];
                if (!series_determinant(sm).is_zero()) {
                    best = rows;
                    break;
                }
                int i = rows - 1;
                while (i >= 0 && pick[i] == nc - rows + i) --i;
                if (i < 0) break;
                ++pick[i];
                for (int k = i + 1; k < rows; ++k) pick[k] = pick[k - 1] + 1;
            }
        }
        res.ranks.push_back(best);
        if (best == rows) {
            res.r = r;
            return res;
        }
    }
    return res;
}

AnalysisReport analyze(const GenericModel& M, const AnalysisOptions& opt) {
    AnalysisReport rep;
    rep.finite_type = finite_type_order(M, opt.bracket_bound);
    const int kb = opt.nondeg_bound < 0 ? M.D - 1 : opt.nondeg_bound;
    rep.nondeg = nondegeneracy_order(M, kb);
    if (M.d == 1) rep.levi = levi_signature(M);
    if (2 * M.m > Monomial::kMaxVars) {
        rep.segre_error = "Segre mapping v^2 exceeds the variable limit";
    } else {
        Sampler s(opt.seed);
        rep.segre = segre_rank_r(M, opt.segre_bound, opt.trials, s);
    }
    return rep;
}

}  // namespace segrekit
