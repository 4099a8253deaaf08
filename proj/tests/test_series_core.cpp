#include "doctest.h"
#include "segrekit/linalg.hpp"
#include "segrekit/solve.hpp"
#include "property_suite.hpp"
#include "test_support.hpp"

using namespace segrekit;
using segrekit::testing::PropertyTally;
using segrekit::testing::random_series;
using segrekit::testing::run_property_suite;

namespace {

const GaussianRational I = GaussianRational::unit_i();

TruncatedSeries var(int n, int D, int k) { return TruncatedSeries::variable(n, D, k); }
TruncatedSeries cst(int n, int D, const GaussianRational& c) { return TruncatedSeries::constant(n, D, c); }

}  // namespace

TEST_CASE("gaussian rationals print and parse canonically") {
    GaussianRational a(mpq_class(3, 2), mpq_class(1, 4));
    CHECK(a.str() == "3/2+1/4i");
    CHECK(GaussianRational::parse("3/2+1/4i") == a);
    CHECK(GaussianRational::parse("-i") == -I);
    CHECK(GaussianRational::parse("i") == I);
    CHECK(GaussianRational::parse("6/4") == GaussianRational::frac(3, 2));
    CHECK(GaussianRational::parse("-2/3-5i").str() == "-2/3-5i");
    CHECK((a * a.inverse()).is_one());
    CHECK(pow(I, 4).is_one());
    CHECK_THROWS(GaussianRational::parse("1/x"));
}

TEST_CASE("arith basics and truncation") {
    // z, w, chi in three variables
    auto z = var(3, 4, 0), w = var(3, 4, 1), chi = var(3, 4, 2);
    CHECK((z * chi + (-(z * chi))).is_zero());
    CHECK((z + w) * (z - w) == z * z - w * w);
    CHECK((z * z * chi * chi * chi).is_zero());  // degree 5 > 4
    CHECK_FALSE((z * z * chi * chi * chi).exact());
    CHECK_THROWS_AS(var(3, 4, 0) + var(3, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(var(3, 4, 0) + var(2, 4, 0), std::invalid_argument);
    CHECK(arith(ArithOp::scale, z, GaussianRational(3)) == z + z + z);
}

TEST_CASE("compose examples") {
    const int D = 6;
    // y^2 at [z+w]
    auto y = var(1, D, 0);
    auto z = var(2, D, 0), w = var(2, D, 1);
    CHECK(compose(y * y, {z + w}) == z * z + cst(2, D, 2) * z * w + w * w);
    // Lewy graph tau + 2i z chi at (z, chi, 0); variables ordered z, chi, tau
    auto Z = var(3, D, 0), C = var(3, D, 1), T = var(3, D, 2);
    auto Q = T + cst(3, D, 2 * I) * Z * C;
    auto z2 = var(2, D, 0), c2 = var(2, D, 1);
    CHECK(compose(Q, {z2, c2, TruncatedSeries(2, D)}) == cst(2, D, 2 * I) * z2 * c2);
    // identity
    CHECK(compose(y, {z * w + z}) == z * w + z);
    CHECK_THROWS_AS(compose(y, {z + cst(2, D, 1)}), std::invalid_argument);
    CHECK_THROWS_AS(compose(Q, {z2, c2}), std::invalid_argument);
}

TEST_CASE("compose of a lower-cap outer lowers the result cap") {
    auto y = var(1, 3, 0);
    auto outer = y * y * y + y;  // exact at cap 3
    outer.set_exact(false);
    auto x = var(1, 6, 0);
    auto r = compose(outer, {x + x * x});
    // inner valuation 1: only degrees <= 3 are trustworthy
    CHECK(r.degree_cap() == 3);
    auto x3 = var(1, 3, 0);
    CHECK(r == x3 + x3 * x3 + x3 * x3 * x3);
}

TEST_CASE("differentiate and conjugate") {
    const int D = 5;
    auto z = var(3, D, 0), chi = var(3, D, 1), w = var(3, D, 2);
    auto s = cst(3, D, 2 * I) * z * chi;
    auto dz = differentiate(s, 0);
    CHECK(dz.degree_cap() == D - 1);
    CHECK(dz == cst(3, D - 1, 2 * I) * var(3, D - 1, 1));
    CHECK(differentiate(z * z * z, 2).is_zero());
    CHECK(differentiate(differentiate(s, 0), 1).constant_term() == 2 * I);
    CHECK(conjugate_series(s) == cst(3, D, -2 * I) * z * chi);
    (void)w;
}

TEST_CASE("reciprocal and powers") {
    auto x = var(1, 7, 0);
    auto one = cst(1, 7, 1);
    auto r = reciprocal(one - x);
    TruncatedSeries expect(1, 7);
    for (int k = 0; k <= 7; ++k) expect += power(x, k);
    CHECK(r == expect);
    CHECK((r * (one - x)) == one);
    CHECK(power(one + x, -1) == reciprocal(one + x));
}

TEST_CASE("rename, set_zero, evaluate") {
    const int D = 4;
    auto a = var(2, D, 0) * var(2, D, 1) + var(2, D, 1);
    auto t3 = Truncation::total(3, D);
    auto r = rename(a, t3, {2, 0});
    CHECK(r == TruncatedSeries::variable(t3, 2) * TruncatedSeries::variable(t3, 0) + TruncatedSeries::variable(t3, 0));
    CHECK(set_zero(a, {0}) == var(2, D, 1));
    CHECK(evaluate(a, {GaussianRational(2), GaussianRational(3)}) == GaussianRational(9));
}

TEST_CASE("det_adjugate examples") {
    auto t = Truncation::total(2, 4);
    Matrix m = {{1, 0}, {1, -1}};
    auto da = det_adjugate(SeriesMatrix::from_constant(m, t));
    CHECK(da.det == TruncatedSeries::constant(t, -1));
    auto id = SeriesMatrix::identity(3, t);
    CHECK(det_adjugate(id).adj == id);
}

TEST_CASE("neumann inverse examples") {
    auto t = Truncation::total(1, 6);
    auto id = SeriesMatrix::identity(2, t);
    CHECK(neumann_inverse(id) == id);
    auto m = id;
    m.at(0, 1) = TruncatedSeries::variable(t, 0);
    auto expect = id;
    expect.at(0, 1) = -TruncatedSeries::variable(t, 0);
    CHECK(neumann_inverse(m) == expect);
    auto bad = id;
    bad.at(0, 0) = TruncatedSeries::constant(t, 2);
    CHECK_THROWS(neumann_inverse(bad));
}

TEST_CASE("ift_solve examples") {
    const int D = 8;
    // w - tau - 2i z chi = 0 for w, variables (z, chi, tau, w)
    {
        auto z = var(4, D, 0), c = var(4, D, 1), t = var(4, D, 2), w = var(4, D, 3);
        auto sol = ift_solve({w - t - cst(4, D, 2 * I) * z * c}, 3);
        REQUIRE(sol.size() == 1);
        CHECK(sol[0] == var(3, D, 2) + cst(3, D, 2 * I) * var(3, D, 0) * var(3, D, 1));
    }
    // y - x - y^2 = 0: Catalan numbers, oracle by the convolution recursion
    {
        auto x = var(2, D, 0), y = var(2, D, 1);
        auto sol = ift_solve({y - x - y * y}, 1);
        // c_0 = 1, c_{n+1} = sum c_i c_{n-i}; y = sum_{n>=1} c_{n-1} x^n
        std::vector<long> c{1};
        for (int n = 0; n < D; ++n) {
            long s = 0;
            for (int i = 0; i <= n; ++i) s += c[i] * c[n - i];
            c.push_back(s);
        }
        for (int n = 1; n <= D; ++n) CHECK(sol[0].coeff(std::vector<int>{n}) == GaussianRational(c[n - 1]));
        CHECK(sol[0].coeff(std::vector<int>{4}) == GaussianRational(5));
    }
    {
        auto x = var(2, D, 0), y = var(2, D, 1);
        auto sol = ift_solve({y - x}, 1);
        CHECK(sol[0] == var(1, D, 0));
    }
    {
        auto x = var(2, D, 0), y = var(2, D, 1);
        CHECK_THROWS_AS(ift_solve({y * y - x * x}, 1), std::domain_error);
    }
}

TEST_CASE("denominator_inverse examples") {
    Sampler rng(11);
    const int D = 6;
    {
        // V(x, xi) = xi with one x variable, N = 2
        auto V = SeriesVec{var(3, D, 1), var(3, D, 2)};
        auto r = denominator_inverse(V, 1, rng);
        CHECK(r.delta0.is_one());
        CHECK(r.phi0[0] == var(2, D, 0));
        CHECK(r.phi0[1] == var(2, D, 1));
    }
    {
        // V = (x xi1, xi2): d(x) = x
        auto V = SeriesVec{var(3, D, 0) * var(3, D, 1), var(3, D, 2)};
        auto r = denominator_inverse(V, 1, rng);
        auto x0 = r.x0[0];
        CHECK(r.delta0 == x0 * x0);
        CHECK(r.phi0[0] == cst(2, D, x0.inverse()) * var(2, D, 0));
        CHECK(r.phi0[1] == var(2, D, 1));
    }
    {
        auto V = SeriesVec{var(3, D, 0) * var(3, D, 1), var(3, D, 0) * var(3, D, 1)};
        CHECK_THROWS_AS(denominator_inverse(V, 1, rng), std::domain_error);
    }
}

TEST_CASE("hermitian inertia by exact congruence") {
    CHECK(hermitian_inertia({{1, 0}, {0, 1}}) == Inertia{2, 0, 0});
    CHECK(hermitian_inertia({{1, 0}, {0, -1}}) == Inertia{1, 1, 0});
    CHECK(hermitian_inertia({{0, I}, {-I, 0}}) == Inertia{1, 1, 0});
    CHECK(hermitian_inertia({{0}}) == Inertia{0, 0, 1});
    CHECK(hermitian_inertia({{2, 1, 0}, {1, 2, 0}, {0, 0, 0}}) == Inertia{2, 0, 1});
}

TEST_CASE("exact linear algebra") {
    Matrix a = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    CHECK(rank(a) == 2);
    CHECK(determinant(a).is_zero());
    auto k = kernel(a);
    REQUIRE(k.size() == 1);
    auto prod = matmul(a, {{k[0][0]}, {k[0][1]}, {k[0][2]}});
    for (auto& row : prod) CHECK(row[0].is_zero());
    CHECK_FALSE(solve(a, {1, 1, 1}).has_value());
    auto x = solve(a, {1, 2, 0});
    REQUIRE(x.has_value());
    auto chk = matmul(a, {{(*x)[0]}, {(*x)[1]}, {(*x)[2]}});
    CHECK(chk[0][0] == GaussianRational(1));
    CHECK(chk[2][0].is_zero());
    Matrix b = {{2, I}, {0, 1}};
    CHECK(matmul(b, *inverse(b)) == identity_matrix(2));
}

TEST_CASE("property suite on 200 seeded instances") {
    PropertyTally t = run_property_suite(default_seed(2024), 200);
    CHECK(t.instances == 200);
    CHECK(t.ift_solved == 200);
    for (const auto& f : t.failures) FAIL_CHECK(f);
}
