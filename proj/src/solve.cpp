#include "segrekit/solve.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace segrekit {

int Sampler::uniform(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(gen_() % span);
}

GaussianRational Sampler::small_rational() {
    int p = uniform(-9, 9);
    int q = uniform(1, 9);
    return GaussianRational::frac(p, q);
}

GaussianRational Sampler::small_nonzero_rational() {
    for (;;) {
        GaussianRational r = small_rational();
        if (!r.is_zero()) return r;
    }
}

GaussianRational Sampler::small_gaussian() {
    GaussianRational re = small_rational();
    GaussianRational im = small_rational();
    return {re.re(), im.re()};
}

GaussianRational Sampler::small_nonzero_gaussian() {
    for (;;) {
        GaussianRational g = small_gaussian();
        if (!g.is_zero()) return g;
    }
}

std::uint64_t default_seed(std::uint64_t fallback) {
    const char* env = std::getenv("SEGREKIT_SEED");
    if (env == nullptr || *env == '\0') return fallback;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0') return fallback;
    return v;
}

Truncation restrict_truncation(const Truncation& t, int n) {
    std::vector<Grading> gs;
    for (const auto& g : t.gradings()) {
        Grading h{std::vector<int>(g.weights.begin(), g.weights.begin() + n), g.cap};
        gs.push_back(std::move(h));
    }
    return Truncation(n, std::move(gs));
}

namespace {

bool all_zero(const SeriesVec& v) {
    for (const auto& s : v)
        if (!s.is_zero()) return false;
    return true;
}

}  // namespace

SeriesVec newton_solve(const std::function<SeriesVec(const SeriesVec&)>& residual,
                       const std::function<SeriesMatrix(const SeriesVec&)>& jacobian, const Matrix& j0_inv,
                       SeriesVec y, int max_iter) {
    if (y.empty()) return y;
    const Truncation& t = y.front().truncation();
    SeriesMatrix chord = SeriesMatrix::from_constant(j0_inv, t);
    for (int it = 0; it < max_iter; ++it) {
        SeriesVec r = residual(y);
        if (all_zero(r)) return y;
        SeriesVec step = jacobian ? series_inverse(jacobian(y)).apply(r) : chord.apply(r);
        for (std::size_t k = 0; k < y.size(); ++k) y[k] -= step[k];
    }
    throw std::runtime_error("newton_solve: residual did not vanish (inconsistent system)");
}

SeriesVec ift_solve(const SeriesVec& F, int n) {
    if (F.empty()) return {};
    const int e = static_cast<int>(F.size());
    const Truncation& T = F.front().truncation();
    if (T.arity() != n + e)
        throw std::invalid_argument("ift_solve: expected " + std::to_string(n + e) + " variables, got " +
                                    std::to_string(T.arity()));
    for (const auto& f : F)
        if (f.truncation() != T) throw std::invalid_argument("ift_solve: equations disagree in degree cap");
    for (const auto& f : F)
        if (!f.constant_term().is_zero()) throw std::invalid_argument("ift_solve: F(0,0) != 0");

    Matrix j0 = zero_matrix(e, e);
    std::vector<std::vector<TruncatedSeries>> dF(e);
    for (int k = 0; k < e; ++k)
        for (int j = 0; j < e; ++j) {
            dF[k].push_back(differentiate(F[k], n + j));
            j0[k][j] = dF[k].back().constant_term();
        }
    auto j0_inv = inverse(j0);
    if (!j0_inv) throw std::domain_error("ift_solve: singular Jacobian at 0");

    const Truncation tx = restrict_truncation(T, n);
    SeriesVec xs;
    for (int i = 0; i < n; ++i) xs.push_back(TruncatedSeries::variable(tx, i));
    auto args = [&](const SeriesVec& y) {
        SeriesVec a = xs;
        a.insert(a.end(), y.begin(), y.end());
        return a;
    };
    auto residual = [&](const SeriesVec& y) {
        SeriesVec a = args(y), r;
        for (const auto& f : F) r.push_back(compose(f, a));
        return r;
    };
    // dF/dy at (x, y(x)); derivatives carry a lower cap, padded back up
    auto jacobian = [&](const SeriesVec& y) {
        SeriesVec a = args(y);
        SeriesMatrix J(e, e, tx);
        for (int k = 0; k < e; ++k)
            for (int j = 0; j < e; ++j) {
                const TruncatedSeries& d = dF[k][j];
                TruncatedSeries lowered(restrict_truncation(d.truncation(), n));
                SeriesVec al;
                for (const auto& s : a) al.push_back(TruncatedSeries::from_terms(lowered.truncation(), s.terms(), false));
                TruncatedSeries c = compose(d, al);
                J.at(k, j) = TruncatedSeries::from_terms(tx, c.terms(), false);
            }
        return J;
    };
    SeriesVec y0(e, TruncatedSeries(tx));
    SeriesVec y = newton_solve(residual, jacobian, *j0_inv, y0, 200);
    for (auto& s : y) s.set_exact(false);
    return y;
}

DenominatorInverse denominator_inverse(const SeriesVec& V, int rx, Sampler& sampler, int max_attempts) {
    if (V.empty()) throw std::invalid_argument("denominator_inverse: empty map");
    const int N = static_cast<int>(V.size());
    const Truncation& T = V.front().truncation();
    const int rxi = T.arity() - rx;
    if (rxi < N) throw std::domain_error("rank deficient");
    if (!T.is_total()) throw std::invalid_argument("denominator_inverse: total-degree truncation required");
    for (const auto& v : V) {
        if (v.truncation() != T) throw std::invalid_argument("denominator_inverse: components disagree in degree cap");
        if (!v.exact()) throw std::invalid_argument("denominator_inverse: V must be an exact polynomial map");
    }
    std::vector<int> xi_vars, x_vars;
    for (int i = 0; i < rx; ++i) x_vars.push_back(i);
    for (int j = 0; j < rxi; ++j) xi_vars.push_back(rx + j);
    for (const auto& v : V)
        if (!set_zero(v, xi_vars).is_zero()) throw std::invalid_argument("denominator_inverse: V(x,0) is not zero");

    // A(x) = dV/dxi (x, 0)
    std::vector<std::vector<TruncatedSeries>> A(N);
    for (int k = 0; k < N; ++k)
        for (int j = 0; j < rxi; ++j) A[k].push_back(set_zero(differentiate(V[k], rx + j), xi_vars));

    // N-subsets of [0, rxi) in lexicographic order
    std::vector<std::vector<int>> blocks;
    std::vector<int> cur(N);
    for (int i = 0; i < N; ++i) cur[i] = i;
    for (;;) {
        blocks.push_back(cur);
        int i = N - 1;
        while (i >= 0 && cur[i] == rxi - N + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int k = i + 1; k < N; ++k) cur[k] = cur[k - 1] + 1;
    }

    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        std::vector<GaussianRational> x0(rx);
        for (auto& c : x0) c = sampler.small_nonzero_rational();
        Matrix a0 = zero_matrix(N, rxi);
        for (int k = 0; k < N; ++k)
            for (int j = 0; j < rxi; ++j) a0[k][j] = evaluate_vars(A[k][j], x_vars, x0).constant_term();
        for (const auto& block : blocks) {
            Matrix sub = zero_matrix(N, N);
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l) sub[k][l] = a0[k][block[l]];
            GaussianRational d = determinant(sub);
            if (d.is_zero()) continue;

            // F(Z, xi') = V(x0, xi', 0) - Z over 2N variables
            const Truncation tf = Truncation::total(2 * N, T.degree_cap());
            std::vector<int> map(T.arity(), 0);
            for (int l = 0; l < N; ++l) map[rx + block[l]] = N + l;
            std::vector<int> others;
            for (int j = 0; j < rxi; ++j)
                if (std::find(block.begin(), block.end(), j) == block.end()) others.push_back(rx + j);
            SeriesVec F;
            for (int k = 0; k < N; ++k) {
                TruncatedSeries v0 = set_zero(evaluate_vars(V[k], x_vars, x0), others);
                F.push_back(rename(v0, tf, map) - TruncatedSeries::variable(tf, k));
            }
            SeriesVec sol = ift_solve(F, N);
            DenominatorInverse out;
            out.x0_det = d;
            out.delta0 = d * d;
            out.x0 = x0;
            out.xi_block = block;
            out.attempts = attempt;
            const Truncation tz = Truncation::total(N, T.degree_cap());
            out.phi0.assign(rxi, TruncatedSeries(tz));
            for (int l = 0; l < N; ++l) out.phi0[block[l]] = sol[l];
            return out;
        }
    }
    throw std::domain_error("rank deficient");
}

}  // namespace segrekit
