#include "segrekit/reflection.hpp"

#include <map>
#include <stdexcept>
#include <unordered_map>

namespace segrekit {

namespace {

std::vector<std::vector<int>> subsets(int m, int n) {
    std::vector<std::vector<int>> out;
    if (n > m || n <= 0) return out;
    std::vector<int> cur(n);
    for (int i = 0; i < n; ++i) cur[i] = i;
    for (;;) {
        out.push_back(cur);
        int i = n - 1;
        while (i >= 0 && cur[i] == m - n + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int k = i + 1; k < n; ++k) cur[k] = cur[k - 1] + 1;
    }
    return out;
}

TruncatedSeries lower(const TruncatedSeries& s, const Truncation& t) {
    return s.truncation() == t ? s : retruncate(s, t);
}

// Sets the variables with map[i] < 0 to zero and moves the rest to map[i].
// The caller guarantees that out_t is no finer than the input truncation.
TruncatedSeries restrict_vars(const TruncatedSeries& a, const Truncation& out_t, const std::vector<int>& map) {
    std::vector<TruncatedSeries::Term> out;
    for (const auto& [mono, c] : a.terms()) {
        Monomial n;
        bool keep = true;
        for (int i = 0; i < a.arity() && keep; ++i) {
            const int e = mono.exp(i);
            if (e == 0) continue;
            if (map[i] < 0) keep = false;
            else n.set(map[i], e);
        }
        if (keep) out.emplace_back(n, c);
    }
    return TruncatedSeries::from_terms(out_t, std::move(out), false);
}

SeriesVec conj_all(const SeriesVec& v) {
    SeriesVec out;
    for (const auto& s : v) out.push_back(conjugate_series(s));
    return out;
}

// Working space of one reflection step: s Segre blocks t^0..t^{s-1}, then
// offsets a (m), b (m), e (d). With s = 0 a single total grading on the
// offsets; otherwise an offset grading (cap N) and a total grading (cap T).
struct Frame {
    int s = 0, m = 0, d = 0, N = 0, T = 0;

    int arity() const { return s * m + 2 * m + d; }
    int tv(int blk, int j) const { return blk * m + j; }
    int av(int j) const { return s * m + j; }
    int bv(int j) const { return s * m + m + j; }
    int ev(int r) const { return s * m + 2 * m + r; }

    Truncation level(int l) const {
        if (s == 0) return Truncation::total(arity(), N - l);
        std::vector<int> off(arity(), 1);
        for (int i = 0; i < s * m; ++i) off[i] = 0;
        return Truncation(arity(), {Grading{off, N - l}, Grading{std::vector<int>(arity(), 1), T - l}});
    }
    // the same space without b
    Truncation output(int l) const {
        const int A = s * m + m + d;
        if (s == 0) return Truncation::total(A, N - l);
        std::vector<int> off(A, 1);
        for (int i = 0; i < s * m; ++i) off[i] = 0;
        return Truncation(A, {Grading{off, N - l}, Grading{std::vector<int>(A, 1), T - l}});
    }
};

// Htilde at the point zeta of the complexification over Z = (t^0 + a, u^s + e),
// with chi = t^1 + b, from the input series Ktilde_{s-1}(t^1.., b, c).
SeriesVec known_at_point(const GenericModel& M, const Frame& F, const SeriesVec& input) {
    const int m = F.m, d = F.d, s = F.s;
    const Truncation W = F.level(0);
    if (F.arity() > Monomial::kMaxVars)
        throw std::invalid_argument("reflection step needs " + std::to_string(F.arity()) + " variables (limit " +
                                    std::to_string(Monomial::kMaxVars) + ")");
    auto var = [&](int i) { return TruncatedSeries::variable(W, i); };
    SeriesVec z, chi;
    for (int j = 0; j < m; ++j) {
        z.push_back(s >= 1 ? var(F.tv(0, j)) + var(F.av(j)) : var(F.av(j)));
        chi.push_back(s >= 2 ? var(F.tv(1, j)) + var(F.bv(j)) : var(F.bv(j)));
    }
    // Segre recursion inside W: X_{s-1} = 0, X_b = P_b(t^b, t^{b+1}, X_{b+1})
    const SeriesVec qb = M.Qbar();
    SeriesVec X(d, TruncatedSeries(W));
    SeriesVec X1(d, TruncatedSeries(W));
    for (int blk = s - 2; blk >= 0; --blk) {
        SeriesVec in;
        for (int j = 0; j < m; ++j) in.push_back(var(F.tv(blk, j)));
        for (int j = 0; j < m; ++j) in.push_back(var(F.tv(blk + 1, j)));
        in.insert(in.end(), X.begin(), X.end());
        const SeriesVec& P = blk % 2 == 0 ? M.Q : qb;
        SeriesVec next;
        for (int r = 0; r < d; ++r) next.push_back(compose(P[r], in));
        X = std::move(next);
        if (blk == 1) X1 = X;
    }
    // X now holds u^s (zero for s <= 1)
    SeriesVec w;
    for (int r = 0; r < d; ++r) w.push_back(X[r] + var(F.ev(r)));
    SeriesVec inner = chi;
    inner.insert(inner.end(), z.begin(), z.end());
    inner.insert(inner.end(), w.begin(), w.end());
    SeriesVec c;
    for (int r = 0; r < d; ++r) c.push_back(compose(qb[r], inner) - X1[r]);

    SeriesVec in;
    const int blocks_in = s >= 1 ? s - 1 : 0;
    for (int blk = 0; blk < blocks_in; ++blk)
        for (int j = 0; j < m; ++j) in.push_back(var(F.tv(blk + 1, j)));
    for (int j = 0; j < m; ++j) in.push_back(var(F.bv(j)));
    in.insert(in.end(), c.begin(), c.end());
    SeriesVec out;
    for (const auto& k : input) {
        if (k.arity() != static_cast<int>(in.size()))
            throw std::invalid_argument("reflection step: input arity " + std::to_string(k.arity()) + ", expected " +
                                        std::to_string(in.size()));
        out.push_back(compose(k, in));
    }
    return out;
}

// P_gamma = (d^gamma_{chi'} Qbar')(ft, H) rebuilt from the known side, |gamma| <= k.
using PTable = std::map<std::vector<int>, SeriesVec>;

PTable p_table(const Frame& F, const SeriesVec& known, int n, int e, const std::vector<int>& nu, int k) {
    const Truncation W1 = F.level(1);
    SeriesMatrix A(n, n, W1);
    for (int q = 0; q < n; ++q)
        for (int i = 0; i < n; ++i) A.at(q, i) = lower(differentiate(known[i], F.bv(nu[q])), W1);
    if (determinant(A.constant_part()).is_zero())
        throw ReconstructionError("singular", "the chosen chi-block of ft_chi(0) is singular");
    SeriesMatrix Ainv = series_inverse(A);

    PTable P;
    const Truncation W0 = F.level(0);
    SeriesVec g0;
    for (int r = 0; r < e; ++r) g0.push_back(lower(known[n + r], W0));
    P[std::vector<int>(n, 0)] = g0;
    for (int l = 0; l < k; ++l) {
        const Truncation Wn = F.level(l + 1);
        for (const auto& gamma : multi_indices(n, l)) {
            const SeriesVec& Pg = P.at(gamma);
            std::vector<SeriesVec> dq(n);
            for (int q = 0; q < n; ++q)
                for (int r = 0; r < e; ++r) dq[q].push_back(lower(differentiate(Pg[r], F.bv(nu[q])), Wn));
            for (int i = 0; i < n; ++i) {
                std::vector<int> next = gamma;
                ++next[i];
                if (P.count(next)) continue;
                SeriesVec v(e, TruncatedSeries(Wn));
                for (int q = 0; q < n; ++q) {
                    TruncatedSeries c = lower(Ainv.at(i, q), Wn);
                    for (int r = 0; r < e; ++r) v[r] += c * dq[q][r];
                }
                P[next] = std::move(v);
            }
        }
    }
    return P;
}

TruncatedSeries derive(TruncatedSeries s, const std::vector<int>& alpha, int first_var) {
    for (std::size_t i = 0; i < alpha.size(); ++i)
        for (int c = 0; c < alpha[i]; ++c) s = differentiate(s, first_var + static_cast<int>(i));
    return s;
}

// One step: H(t^0 + a, u^s + e) from Ktilde_{s-1}. Output over (t, a, e).
SeriesVec reflection_step(const GenericModel& M, const GenericModel& Mp, const SpanningSet& span,
                          const std::vector<int>& nu, int s, const SeriesVec& input, int N, int T) {
    const int n = Mp.m, e = Mp.d, k = span.k;
    if (N < k) throw ReconstructionError("insufficient-jets", "known order " + std::to_string(N) + " is below k = " +
                                                                  std::to_string(k));
    Frame F{s, M.m, M.d, N, T};
    const SeriesVec known = known_at_point(M, F, input);
    const PTable P = p_table(F, known, n, e, nu, k);

    const Truncation Wk = F.level(k);
    SeriesVec ftz;
    for (int i = 0; i < n; ++i) ftz.push_back(lower(known[i], Wk));

    // equations: Qbar'^r(ft, y) = gt and d^alpha_l Qbar'^{j_l}(ft, y) = P_{alpha_l}^{j_l}
    const SeriesVec qbp = Mp.Qbar();
    SeriesVec outer, rhs;
    for (int r = 0; r < e; ++r) {
        outer.push_back(qbp[r]);
        rhs.push_back(lower(P.at(std::vector<int>(n, 0))[r], Wk));
    }
    for (const auto& row : span.rows) {
        outer.push_back(derive(qbp[row.component], row.alpha, 0));
        rhs.push_back(lower(P.at(row.alpha)[row.component], Wk));
    }
    const int U = n + e;
    for (const auto& c : rhs)
        if (!c.constant_term().is_zero())
            throw ReconstructionError("inconsistent", "reflection data has a nonzero constant term");

    std::vector<std::vector<TruncatedSeries>> jac_outer(U);
    Matrix J0 = zero_matrix(U, U);
    for (int row = 0; row < U; ++row)
        for (int col = 0; col < U; ++col) {
            jac_outer[row].push_back(differentiate(outer[row], n + col));
            std::vector<int> ex(2 * n + e, 0);
            ex[n + col] = 1;
            J0[row][col] = outer[row].coeff(ex);
        }
    auto J0inv = inverse(J0);
    if (!J0inv) throw ReconstructionError("singular", "linearized reflection system is singular");

    auto inner_of = [&](const SeriesVec& y) {
        SeriesVec in = ftz;
        in.insert(in.end(), y.begin(), y.end());
        return in;
    };
    auto residual = [&](const SeriesVec& y) {
        SeriesVec in = inner_of(y), out;
        for (int row = 0; row < U; ++row) out.push_back(compose(outer[row], in) - rhs[row]);
        return out;
    };
    auto jacobian = [&](const SeriesVec& y) {
        SeriesVec in = inner_of(y);
        SeriesMatrix J(U, U, Wk);
        for (int row = 0; row < U; ++row)
            for (int col = 0; col < U; ++col) J.at(row, col) = compose(jac_outer[row][col], in);
        return J;
    };
    SeriesVec y = newton_solve(residual, jacobian, *J0inv, SeriesVec(U, TruncatedSeries(Wk)));

    // H does not depend on chi: drop b
    const Truncation out_t = F.output(k);
    std::vector<int> map(F.arity());
    for (int i = 0; i < F.arity(); ++i)
        map[i] = i < F.bv(0) ? i : i < F.bv(0) + F.m ? -1 : i - F.m;
    SeriesVec out;
    for (const auto& c : y) out.push_back(restrict_vars(c, out_t, map));
    return out;
}

Matrix linear_block(const JetTable& t, int comps, int count, bool conj) {
    Matrix a = zero_matrix(comps, count);
    for (int i = 0; i < comps; ++i)
        for (int j = 0; j < count; ++j) {
            std::vector<int> ex(t.vars, 0);
            ex[j] = 1;
            a[i][j] = conj ? t.at(i, ex).conj() : t.at(i, ex);
        }
    return a;
}

JetTable conj_table(const JetTable& t) {
    JetTable c = t;
    for (auto& [key, v] : c.entries) v = v.conj();
    return c;
}

// K_s(t, a, e) = H(t^0 + a, u^s(t) + e) from (left, right) jets of order K.
SeriesVec segre_pipeline(const GenericModel& M, const GenericModel& Mp, const SpanningSet& span, int s,
                         const JetTable& left, const JetTable& right, int K, int T) {
    const int m = M.m, d = M.d, n = Mp.m, k = span.k;
    if (s * k > K)
        throw ReconstructionError("insufficient-jets", std::to_string(s) + " steps need jets of order " +
                                                           std::to_string(s * k) + ", have " + std::to_string(K));
    const Truncation t0 = Truncation::total(m + d, K);
    const auto nu_h = first_witness(linear_block(right, n, m, false));
    const auto nu_conj = first_witness(linear_block(left, n, m, true));
    // s even: start from K_0 = H, else from Ktilde_0 = Htilde
    bool have_tilde = s % 2 == 1;
    SeriesVec cur = jet_polynomial(have_tilde ? right : left, t0);
    for (auto& c : cur) c.set_exact(false);
    int N = K;
    for (int i = 1; i <= s; ++i) {
        const int Tin = T + (s - i + 1) * k;
        if (have_tilde) {
            if (!nu_h) throw ReconstructionError("singular", "ft_chi(0) has rank below n");
            cur = reflection_step(M, Mp, span, *nu_h, i, cur, N, Tin);
        } else {
            if (!nu_conj) throw ReconstructionError("singular", "f_z(0) has rank below n");
            cur = conj_all(reflection_step(M, Mp, span, *nu_conj, i, conj_all(cur), N, Tin));
        }
        have_tilde = !have_tilde;
        N -= k;
    }
    return cur;
}

}  // namespace

GenericModel model_at_cap(const GenericModel& M, int cap) {
    if (cap == M.D) return M;
    GenericModel r = M;
    r.D = cap;
    try {
        for (auto& q : r.Q) q = retruncate(q, Truncation::total(M.arity(), cap));
    } catch (const std::invalid_argument&) {
        throw ReconstructionError("insufficient-degree", "model " + M.name + " is truncated at degree " +
                                                             std::to_string(M.D) + ", needs " + std::to_string(cap));
    }
    return r;
}

namespace {

// Coefficient columns z^{mu_z} u^{mu_w} of H o v^s, for every mu of weighted
// degree |mu_z| + sum mu_w val(u) <= T.
struct SegreSystem {
    std::vector<std::vector<int>> mus;
    std::unordered_map<Monomial, int, MonomialHash> rows;
    std::vector<std::vector<std::pair<int, GaussianRational>>> cols;
};

void enumerate_mus(int vars, const std::vector<int>& weight, int T, std::vector<int>& cur, int i, int used,
                   std::vector<std::vector<int>>& out) {
    if (i == vars) {
        if (used > 0) out.push_back(cur);
        return;
    }
    for (int a = 0; used + a * weight[i] <= T; ++a) {
        cur[i] = a;
        enumerate_mus(vars, weight, T, cur, i + 1, used + a * weight[i], out);
    }
    cur[i] = 0;
}

SegreSystem segre_system(const GenericModel& M, int s, int T) {
    const int m = M.m, d = M.d;
    SegreMapping v = segre_map(model_at_cap(M, T), s);
    std::vector<int> weight(m + d, 1);
    for (int r = 0; r < d; ++r) {
        if (v.v[m + r].is_zero()) throw ReconstructionError("degenerate-segre", "u^s has a zero component");
        weight[m + r] = v.v[m + r].valuation();
    }
    SegreSystem S;
    std::vector<int> cur(m + d, 0);
    enumerate_mus(m + d, weight, T, cur, 0, 0, S.mus);
    // powers of each Segre component
    std::vector<SeriesVec> pw(m + d);
    for (const auto& mu : S.mus) {
        TruncatedSeries col = TruncatedSeries::constant(v.v[0].truncation(), 1);
        for (int i = 0; i < m + d; ++i) {
            auto& p = pw[i];
            if (p.empty()) p.push_back(TruncatedSeries::constant(v.v[0].truncation(), 1));
            while (static_cast<int>(p.size()) <= mu[i]) p.push_back(p.back() * v.v[i]);
            if (mu[i] > 0) col = col * p[mu[i]];
        }
        std::vector<std::pair<int, GaussianRational>> entries;
        for (const auto& [mono, c] : col.terms()) {
            auto [it, fresh] = S.rows.emplace(mono, static_cast<int>(S.rows.size()));
            entries.emplace_back(it->second, c);
        }
        S.cols.push_back(std::move(entries));
    }
    return S;
}

Matrix system_matrix(const SegreSystem& S, int extra) {
    Matrix a = zero_matrix(static_cast<int>(S.rows.size()), static_cast<int>(S.cols.size()) + extra);
    for (std::size_t c = 0; c < S.cols.size(); ++c)
        for (const auto& [r, v] : S.cols[c]) a[r][c] = v;
    return a;
}

int max_valuation(const GenericModel& M, int s) {
    SegreMapping v = segre_map(M, s);
    int val = 1;
    for (int r = 0; r < M.d; ++r) {
        if (v.v[M.m + r].is_zero()) return -1;
        val = std::max(val, v.v[M.m + r].valuation());
    }
    return val;
}

JetPair swapped(const JetPair& j) { return JetPair{j.K, conj_table(j.right), conj_table(j.left)}; }

}  // namespace

std::optional<std::vector<int>> first_witness(const Matrix& block) {
    if (block.empty()) return std::nullopt;
    const int n = static_cast<int>(block.size()), m = static_cast<int>(block.front().size());
    for (const auto& cols : subsets(m, n)) {
        Matrix s = zero_matrix(n, n);
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) s[i][l] = block[i][cols[l]];
        if (!determinant(s).is_zero()) return cols;
    }
    return std::nullopt;
}

std::optional<SpanningSet> spanning_set(const GenericModel& target, int K_max) {
    NondegeneracyResult r = nondegeneracy_order_bar(target, K_max < 0 ? target.D - 1 : K_max);
    if (!r.k) return std::nullopt;
    return SpanningSet{*r.k, r.span};
}

TruncatedSeries reflection_rhs(const GenericModel& source, const GenericModel& target, const SeriesVec& Htilde,
                               const std::vector<int>& nu, const std::vector<int>& beta, int l) {
    const int n = target.m, e = target.d;
    if (static_cast<int>(beta.size()) != n) throw std::invalid_argument("reflection_rhs: beta needs n entries");
    int k = 0;
    for (int b : beta) k += b;
    const int C = Htilde.front().degree_cap();
    Frame F{0, source.m, source.d, C, C};
    const SeriesVec known = known_at_point(source, F, Htilde);
    const PTable P = p_table(F, known, n, e, nu, k);
    // (a, b, e) is already (z, chi, w)
    return P.at(beta).at(l);
}

ReconstructionResult partner_reconstruct(const GenericModel& source, const GenericModel& target, KnownSide known,
                                         const SeriesVec& data, const std::optional<SpanningSet>& span_in) {
    const int n = target.m, m = source.m, d = source.d;
    std::optional<SpanningSet> span = span_in ? span_in : spanning_set(target);
    if (!span)
        throw ReconstructionError("not-well-posed", "target " + target.name +
                                                        " is not finitely nondegenerate within the degree cap");
    if (static_cast<int>(data.size()) != n + target.d) throw std::invalid_argument("partner_reconstruct: need n+e series");
    const int C = data.front().degree_cap();
    const int out_cap = C - span->k;
    if (out_cap < 1) throw ReconstructionError("insufficient-degree", "input cap too small for k");
    JetTable lin = jet_table(data, 1);
    auto nu = first_witness(linear_block(lin, n, m, known == KnownSide::H));
    if (!nu) throw ReconstructionError("singular", "known side is not Segre submersive");

    const Truncation t_out = Truncation::total(m + d, out_cap);
    SeriesVec given;
    for (const auto& c : data) given.push_back(retruncate(c, t_out));
    SeriesVec other = known == KnownSide::Htilde
                          ? reflection_step(source, target, *span, *nu, 0, data, C, C)
                          : conj_all(reflection_step(source, target, *span, *nu, 0, conj_all(data), C, C));
    for (auto& c : other) c = retruncate(c, t_out);

    ReconstructionResult res;
    const GenericModel S = model_at_cap(source, out_cap), Tg = model_at_cap(target, out_cap);
    res.recovered = known == KnownSide::Htilde ? make_map("partner", S, Tg, other, given)
                                               : make_map("partner", S, Tg, given, other);
    VerifyResult v = hspm_verify(res.recovered);
    res.method = "partner";
    res.certificate = v.residual;
    res.certified = v.pass;
    res.detail = "k=" + std::to_string(span->k) + ", cap " + std::to_string(out_cap);
    return res;
}

SeriesVec segre_side_series(const GenericModel& source, const GenericModel& target, int s, const JetPair& jets, int T,
                            KnownSide side) {
    auto span = spanning_set(target);
    if (!span) throw ReconstructionError("not-well-posed", "target is finitely degenerate within the degree cap");
    if (side == KnownSide::H) return segre_pipeline(source, target, *span, s, jets.left, jets.right, jets.K, T);
    JetPair sw = swapped(jets);
    return conj_all(segre_pipeline(source, target, *span, s, sw.left, sw.right, jets.K, T));
}

TruncatedSeries segre_jet_recursion(const GenericModel& source, const GenericModel& target, int s, const JetPair& jets,
                                    const std::vector<int>& gamma, int component, int T) {
    const int m = source.m, d = source.d;
    if (static_cast<int>(gamma.size()) != m + d) throw std::invalid_argument("gamma needs m+d entries");
    int g = 0;
    for (int x : gamma) g += x;
    // offsets count toward the total grading, so ask for T + |gamma|
    SeriesVec K = segre_side_series(source, target, s, jets, T + g, KnownSide::H);
    if (K.front().truncation().gradings().front().cap < g)
        throw ReconstructionError("insufficient-jets", "offset order below |gamma|");
    const Truncation t = Truncation::total(s * m, T);
    std::vector<TruncatedSeries::Term> out;
    for (const auto& [mono, c] : K.at(component).terms()) {
        bool match = true;
        for (int i = 0; i < m + d && match; ++i) match = mono.exp(s * m + i) == gamma[i];
        if (!match) continue;
        Monomial tm;
        for (int i = 0; i < s * m; ++i) tm.set(i, mono.exp(i));
        out.emplace_back(tm, c * multi_factorial(gamma));
    }
    return TruncatedSeries::from_terms(t, std::move(out), false);
}

std::optional<SegreChoice> choose_segre_order(const GenericModel& source, int s_max) {
    const int m = source.m, d = source.d;
    for (int s = 1; s <= s_max; ++s) {
        if (s * m + 2 * m + d > Monomial::kMaxVars) break;
        const int val = max_valuation(source, s);
        if (val < 0) continue;
        const int T = source.D * val;
        if (T > Monomial::kMaxCap) break;
        SegreSystem S;
        try {
            S = segre_system(source, s, T);
        } catch (const ReconstructionError&) {
            continue;
        }
        if (rank(system_matrix(S, 0)) == static_cast<int>(S.cols.size())) return SegreChoice{s, T};
    }
    return std::nullopt;
}

SeriesVec invert_segre_composition(const GenericModel& source, int s, const SeriesVec& G, int T) {
    const int m = source.m, d = source.d, D = source.D;
    SegreSystem S = segre_system(source, s, T);
    const int cols = static_cast<int>(S.cols.size()), rhs = static_cast<int>(G.size());
    // right-hand sides may contain monomials no column reaches
    for (const auto& g : G)
        for (const auto& [mono, c] : g.terms()) S.rows.emplace(mono, static_cast<int>(S.rows.size()));
    Matrix a = system_matrix(S, rhs);
    for (int c = 0; c < rhs; ++c)
        for (const auto& [mono, v] : G[c].terms()) a[S.rows.at(mono)][cols + c] = v;
    std::vector<int> piv = rref(a);
    int used = 0;
    for (int p : piv) {
        if (p >= cols) throw ReconstructionError("inconsistent", "data is not a composition with the Segre map");
        ++used;
    }
    if (used < cols) throw ReconstructionError("degenerate-segre", "Segre map does not separate coefficients");
    const Truncation t = Truncation::total(m + d, D);
    std::vector<std::vector<TruncatedSeries::Term>> terms(rhs);
    for (std::size_t i = 0; i < piv.size(); ++i) {
        const auto& mu = S.mus[piv[i]];
        int deg = 0;
        for (int x : mu) deg += x;
        if (deg > D) continue;
        for (int c = 0; c < rhs; ++c)
            if (!a[i][cols + c].is_zero()) terms[c].emplace_back(Monomial::from_exponents(mu), a[i][cols + c]);
    }
    SeriesVec out;
    for (auto& ts : terms) out.push_back(TruncatedSeries::from_terms(t, std::move(ts), false));
    return out;
}

ReconstructionResult full_jet_reconstruct(const GenericModel& source, const GenericModel& target, const JetPair& jets) {
    const int m = source.m, d = source.d;
    auto span = spanning_set(target);
    if (!span) throw ReconstructionError("not-well-posed", "target is finitely degenerate within the degree cap");
    auto choice = choose_segre_order(source, jets.K / span->k);
    if (!choice)
        throw ReconstructionError("insufficient-jets", "no Segre order s with s*k <= " + std::to_string(jets.K) +
                                                           " separates coefficients");
    const int s = choice->s, T = choice->T;
    auto at_zero = [&](const SeriesVec& K) {
        std::vector<int> map(s * m + m + d, -1);
        for (int i = 0; i < s * m; ++i) map[i] = i;
        SeriesVec G;
        for (const auto& c : K) G.push_back(restrict_vars(c, Truncation::total(s * m, T), map));
        return G;
    };
    SeriesVec H = invert_segre_composition(
        source, s, at_zero(segre_pipeline(source, target, *span, s, jets.left, jets.right, jets.K, T)), T);
    JetPair sw = swapped(jets);
    SeriesVec Ht = conj_all(invert_segre_composition(
        source, s, at_zero(segre_pipeline(source, target, *span, s, sw.left, sw.right, jets.K, T)), T));

    ReconstructionResult res;
    res.recovered = make_map("reconstructed", source, model_at_cap(target, source.D), H, Ht);
    VerifyResult v = hspm_verify(res.recovered);
    res.method = "full_jet";
    res.certificate = v.residual;
    const bool jets_match = jet_extract(res.recovered, jets.K) == jets;
    res.certified = v.pass && jets_match;
    res.detail = "s=" + std::to_string(s) + ", k=" + std::to_string(span->k) + ", T=" + std::to_string(T);
    if (!v.pass) res.detail += "; residual in component " + std::to_string(v.component) + " at " + v.monomial;
    if (!jets_match) res.detail += "; jets not reproduced";
    return res;
}

}  // namespace segrekit
