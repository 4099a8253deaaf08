#pragma once

// Algebraic laws checked on seeded random instances; shared by the unit
// tests and the acceptance binary.

#include "segrekit/linalg.hpp"
#include "segrekit/solve.hpp"
#include "test_support.hpp"

#include <string>
#include <vector>

namespace segrekit::testing {

struct PropertyTally {
    int instances = 0;
    int checks = 0;
    int ift_solved = 0;
    std::vector<std::string> failures;  // "law @ instance"
    bool ok() const { return failures.empty(); }
};

inline SeriesMatrix random_matrix(Sampler& rng, int k, const Truncation& t, bool identity_at_zero) {
    SeriesMatrix m(k, k, t);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            m.at(i, j) = random_series(rng, t, identity_at_zero);
            if (identity_at_zero && i == j) m.at(i, j) += TruncatedSeries::constant(t, 1);
        }
    return m;
}

inline PropertyTally run_property_suite(std::uint64_t seed, int count, int max_degree = 6) {
    PropertyTally out;
    Sampler rng(seed);
    for (int trial = 0; trial < count; ++trial) {
        auto law = [&](bool holds, const char* name) {
            ++out.checks;
            if (!holds) out.failures.push_back(std::string(name) + " @ " + std::to_string(trial));
        };
        ++out.instances;
        const int n = rng.uniform(1, 3);
        const int D = rng.uniform(2, max_degree);
        const auto t = Truncation::total(n, D);
        auto a = random_series(rng, t, false), b = random_series(rng, t, false), c = random_series(rng, t, false);

        law((a + b) + c == a + (b + c), "additive associativity");
        law(a + b == b + a, "additive commutativity");
        law(a * b == b * a, "commutativity");
        law((a * b) * c == a * (b * c), "associativity");
        law(a * (b + c) == a * b + a * c, "distributivity");
        law(a * TruncatedSeries::constant(t, 1) == a, "unit");
        law((a - a).is_zero(), "negation");

        // composition: associativity and the identity substitution
        std::vector<TruncatedSeries> id, p, q;
        for (int v = 0; v < n; ++v) {
            id.push_back(TruncatedSeries::variable(t, v));
            p.push_back(random_series(rng, t, true));
            q.push_back(random_series(rng, t, true));
        }
        law(compose(a, id) == a, "composition identity");
        std::vector<TruncatedSeries> pq;
        for (const auto& x : p) pq.push_back(compose(x, q));
        law(compose(compose(a, p), q) == compose(a, pq), "composition associativity");
        law(compose(a * b, p) == compose(a, p) * compose(b, p), "composition is multiplicative");

        const int v = rng.uniform(0, n - 1);
        law(differentiate(a * b, v) ==
                with_cap(differentiate(a, v) * with_cap(b, D - 1) + with_cap(a, D - 1) * differentiate(b, v), D - 1),
            "Leibniz");
        law(conjugate_series(a * b) == conjugate_series(a) * conjugate_series(b), "conjugation is multiplicative");
        law(conjugate_series(conjugate_series(a)) == a, "conjugation is an involution");

        // F(x, y) = y - g(x, y), g without constant or linear-in-y part
        {
            const int e = rng.uniform(1, 2);
            const auto tx = Truncation::total(n + e, D);
            SeriesVec F;
            for (int r = 0; r < e; ++r) {
                TruncatedSeries g = random_series(rng, tx, true);
                for (int s = 0; s < e; ++s) {
                    std::vector<int> ys(n + e, 0);
                    ys[n + s] = 1;
                    g -= TruncatedSeries::variable(tx, n + s) * g.coeff(ys);
                }
                F.push_back(TruncatedSeries::variable(tx, n + r) - g);
            }
            SeriesVec y = ift_solve(F, n);
            ++out.ift_solved;
            std::vector<TruncatedSeries> xy;
            for (int k = 0; k < n; ++k) xy.push_back(TruncatedSeries::variable(t, k));
            for (const auto& s : y) xy.push_back(s);
            bool zero = true;
            for (const auto& f : F) zero &= compose(f, xy).is_zero();
            law(zero, "ift residual");
        }

        const int k = rng.uniform(1, 3);
        SeriesMatrix M = random_matrix(rng, k, t, true);
        law(neumann_inverse(M) * M == SeriesMatrix::identity(k, t), "neumann inverse");
        SeriesMatrix A = random_matrix(rng, k, t, false);
        DetAdj da = det_adjugate(A);
        law(da.adj * A == da.det * SeriesMatrix::identity(k, t), "adjugate");
    }
    return out;
}

}  // namespace segrekit::testing
