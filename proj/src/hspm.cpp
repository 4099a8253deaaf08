#include "segrekit/hspm.hpp"

#include <stdexcept>

namespace segrekit {

SeriesVec SegrePreservingMap::H() const {
    SeriesVec v = f;
    v.insert(v.end(), g.begin(), g.end());
    return v;
}

SeriesVec SegrePreservingMap::Htilde() const {
    SeriesVec v = ft;
    v.insert(v.end(), gt.begin(), gt.end());
    return v;
}

void validate_shape(const SegrePreservingMap& h) {
    const int m = h.source.m, d = h.source.d;
    auto check = [&](const SeriesVec& v, int count, const char* what) {
        if (static_cast<int>(v.size()) != count)
            throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(count) + " components, got " +
                                        std::to_string(v.size()));
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (v[k].arity() != m + d)
                throw std::invalid_argument(std::string(what) + std::to_string(k + 1) + ": arity mismatch");
            if (!v[k].constant_term().is_zero())
                throw std::invalid_argument(std::string(what) + std::to_string(k + 1) + ": nonzero constant term");
        }
    };
    check(h.f, h.n(), "f");
    check(h.g, h.e(), "g");
    check(h.ft, h.n(), "tf");
    check(h.gt, h.e(), "tg");
}

SegrePreservingMap make_map(std::string name, const GenericModel& source, const GenericModel& target, SeriesVec H,
                            SeriesVec Htilde) {
    SegrePreservingMap h;
    h.name = std::move(name);
    h.source = source;
    h.target = target;
    const int n = target.m;
    if (static_cast<int>(H.size()) != target.m + target.d || static_cast<int>(Htilde.size()) != target.m + target.d)
        throw std::invalid_argument("map needs n+e components on each side");
    h.f.assign(H.begin(), H.begin() + n);
    h.g.assign(H.begin() + n, H.end());
    h.ft.assign(Htilde.begin(), Htilde.begin() + n);
    h.gt.assign(Htilde.begin() + n, Htilde.end());
    validate_shape(h);
    return h;
}

SegrePreservingMap identity_map(const GenericModel& M) {
    const Truncation t = Truncation::total(M.m + M.d, M.D);
    SeriesVec id;
    for (int i = 0; i < M.m + M.d; ++i) id.push_back(TruncatedSeries::variable(t, i));
    return make_map("id", M, M, id, id);
}

VerifyResult hspm_verify(const SegrePreservingMap& h) {
    validate_shape(h);
    const GenericModel& M = h.source;
    const GenericModel& Mp = h.target;
    const int m = M.m, d = M.d, n = h.n(), e = h.e();
    const int D = M.D;
    const Truncation t = M.truncation();  // (z, chi, tau)
    // Z on the graph: (z, Q(z, chi, tau))
    SeriesVec Z;
    for (int j = 0; j < m; ++j) Z.push_back(TruncatedSeries::variable(t, j));
    for (int r = 0; r < d; ++r) Z.push_back(M.Q[r]);
    std::vector<int> zeta_map(m + d);
    for (int j = 0; j < m; ++j) zeta_map[j] = m + j;
    for (int r = 0; r < d; ++r) zeta_map[m + r] = 2 * m + r;
    auto fit = [&](const TruncatedSeries& s) {
        return s.degree_cap() == D ? s : retruncate(s, Truncation::total(s.arity(), D));
    };
    SeriesVec inner;
    for (int j = 0; j < n; ++j) inner.push_back(compose(fit(h.f[j]), Z));
    for (int j = 0; j < n; ++j) inner.push_back(rename(fit(h.ft[j]), t, zeta_map));
    for (int r = 0; r < e; ++r) inner.push_back(rename(fit(h.gt[r]), t, zeta_map));
    VerifyResult res;
    res.pass = true;
    for (int r = 0; r < e; ++r) {
        TruncatedSeries qp = Mp.D == D ? Mp.Q[r] : retruncate(Mp.Q[r], Truncation::total(Mp.arity(), D));
        TruncatedSeries resid = compose(fit(h.g[r]), Z) - compose(qp, inner);
        if (!resid.is_zero() && res.pass) {
            res.pass = false;
            res.component = r + 1;
            res.monomial = lowest_monomial(resid, M.names());
        }
        res.residual.push_back(std::move(resid));
    }
    return res;
}

namespace {

Matrix linear_block(const SeriesVec& comps, int vars_from, int count, int arity) {
    Matrix a = zero_matrix(static_cast<int>(comps.size()), count);
    for (std::size_t j = 0; j < comps.size(); ++j)
        for (int l = 0; l < count; ++l) {
            std::vector<int> e(arity, 0);
            e[vars_from + l] = 1;
            a[j][l] = comps[j].coeff(e);
        }
    return a;
}

std::vector<std::vector<int>> subsets(int m, int n) {
    std::vector<std::vector<int>> out;
    if (n > m || n < 0) return out;
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

GaussianRational minor(const Matrix& a, const std::vector<int>& cols) {
    Matrix s = zero_matrix(static_cast<int>(a.size()), static_cast<int>(cols.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t l = 0; l < cols.size(); ++l) s[i][l] = a[i][cols[l]];
    return determinant(s);
}

}  // namespace

Matrix fz0(const SegrePreservingMap& h) { return linear_block(h.f, 0, h.source.m, h.source.m + h.source.d); }
Matrix ftchi0(const SegrePreservingMap& h) { return linear_block(h.ft, 0, h.source.m, h.source.m + h.source.d); }

bool segre_submersive(const SegrePreservingMap& h) {
    validate_shape(h);
    return rank(fz0(h)) == h.n() && rank(ftchi0(h)) == h.n();
}

std::vector<ConditionDWitness> condition_D_witnesses(const SegrePreservingMap& h) {
    validate_shape(h);
    const Matrix a = fz0(h), b = ftchi0(h);
    std::vector<ConditionDWitness> out;
    auto sets = subsets(h.source.m, h.n());
    for (const auto& mu : sets) {
        GaussianRational df = minor(a, mu);
        if (df.is_zero()) continue;
        for (const auto& nu : sets) {
            GaussianRational dft = minor(b, nu);
            if (dft.is_zero()) continue;
            ConditionDWitness w;
            for (int x : mu) w.mu.push_back(x + 1);
            for (int x : nu) w.nu.push_back(x + 1);
            w.det_f = df;
            w.det_ft = dft;
            out.push_back(std::move(w));
        }
    }
    return out;
}

SegrePreservingMap conjugate_swap(const SegrePreservingMap& h) {
    SegrePreservingMap s = h;
    s.f.clear();
    s.g.clear();
    s.ft.clear();
    s.gt.clear();
    for (const auto& x : h.ft) s.f.push_back(conjugate_series(x));
    for (const auto& x : h.gt) s.g.push_back(conjugate_series(x));
    for (const auto& x : h.f) s.ft.push_back(conjugate_series(x));
    for (const auto& x : h.g) s.gt.push_back(conjugate_series(x));
    if (!h.name.empty()) s.name = h.name + "_swap";
    return s;
}

GaussianRational JetTable::at(int component, const std::vector<int>& alpha) const {
    auto it = entries.find({component, alpha});
    if (it == entries.end()) throw std::out_of_range("jet index out of range");
    return it->second;
}

JetTable jet_table(const SeriesVec& comps, int K) {
    JetTable t;
    t.K = K;
    t.vars = comps.empty() ? 0 : comps.front().arity();
    for (std::size_t c = 0; c < comps.size(); ++c) {
        if (K > comps[c].degree_cap()) throw std::invalid_argument("jet order exceeds the degree cap");
        for (int k = 1; k <= K; ++k)
            for (const auto& alpha : multi_indices(t.vars, k))
                t.entries[{static_cast<int>(c), alpha}] = comps[c].coeff(alpha) * multi_factorial(alpha);
    }
    return t;
}

JetPair jet_extract(const SegrePreservingMap& h, int K) {
    return JetPair{K, jet_table(h.H(), K), jet_table(h.Htilde(), K)};
}

SeriesVec jet_polynomial(const JetTable& t, const Truncation& trunc) {
    int comps = 0;
    for (const auto& [key, v] : t.entries) comps = std::max(comps, key.first + 1);
    std::vector<std::vector<TruncatedSeries::Term>> terms(comps);
    for (const auto& [key, v] : t.entries) {
        if (v.is_zero()) continue;
        terms[key.first].emplace_back(Monomial::from_exponents(key.second), v / multi_factorial(key.second));
    }
    SeriesVec out;
    for (auto& ts : terms) out.push_back(TruncatedSeries::from_terms(trunc, std::move(ts)));
    return out;
}

bool same_model(const GenericModel& a, const GenericModel& b) {
    return a.m == b.m && a.d == b.d && a.D == b.D && a.Q == b.Q;
}

SegrePreservingMap compose_hspm(const SegrePreservingMap& h2, const SegrePreservingMap& h1) {
    if (!same_model(h1.target, h2.source)) throw std::invalid_argument("compose_hspm: mismatched model chain");
    SeriesVec H1 = h1.H(), Ht1 = h1.Htilde();
    SeriesVec H, Ht;
    for (const auto& c : h2.H()) H.push_back(compose(c, H1));
    for (const auto& c : h2.Htilde()) Ht.push_back(compose(c, Ht1));
    std::string name = h2.name.empty() || h1.name.empty() ? "" : h2.name + "*" + h1.name;
    return make_map(name, h1.source, h2.target, H, Ht);
}

SeriesVec invert_germ(const SeriesVec& P) {
    const int N = static_cast<int>(P.size());
    if (N == 0) return {};
    const int D = P.front().degree_cap();
    const Truncation t = Truncation::total(2 * N, D);
    std::vector<int> map(N);
    for (int i = 0; i < N; ++i) map[i] = N + i;
    SeriesVec F;
    for (int i = 0; i < N; ++i) F.push_back(rename(P[i], t, map) - TruncatedSeries::variable(t, i));
    return ift_solve(F, N);
}

SegrePreservingMap invert_hspm(const SegrePreservingMap& h) {
    validate_shape(h);
    if (h.source.m != h.target.m || h.source.d != h.target.d)
        throw std::invalid_argument("invert_hspm: source and target dimensions differ");
    SeriesVec Hi, Hti;
    try {
        Hi = invert_germ(h.H());
        Hti = invert_germ(h.Htilde());
    } catch (const std::domain_error&) {
        throw std::domain_error("invert_hspm: singular Jacobian");
    }
    return make_map(h.name.empty() ? "" : h.name + "^-1", h.target, h.source, Hi, Hti);
}

bool real_slice_check(const SegrePreservingMap& h) {
    if (h.source.m != h.target.m || h.source.d != h.target.d)
        throw std::invalid_argument("real_slice_check: source and target dimensions differ");
    for (int j = 0; j < h.n(); ++j)
        if (h.ft[j] != conjugate_series(h.f[j])) return false;
    for (int r = 0; r < h.e(); ++r)
        if (h.gt[r] != conjugate_series(h.g[r])) return false;
    return true;
}

bool map_equal(const SegrePreservingMap& a, const SegrePreservingMap& b) {
    return a.f == b.f && a.g == b.g && a.ft == b.ft && a.gt == b.gt;
}

}  // namespace segrekit
