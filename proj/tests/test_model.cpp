#include "doctest.h"
#include "segrekit/dsl.hpp"
#include "test_support.hpp"

using namespace segrekit;

namespace {

const GaussianRational I = GaussianRational::unit_i();

GenericModel model(const std::string& src, int D = 8) {
    DslDocument doc = parse_document(src);
    REQUIRE(doc.models.size() == 1);
    return build_model(doc.models.front(), D);
}

TruncatedSeries series(const GenericModel& M, const std::string& text) {
    std::vector<std::string> names = M.names();
    return eval_expr(parse_expression(text), names, M.truncation());
}

const char* kLewy = "model Lewy { Q1 = tau1 + 2*i*z1*chi1; }";
const char* kQuartic = "model Quartic { Q1 = tau + 2*i*z^2*chi^2; }";

}  // namespace

TEST_CASE("from_normal accepts Lewy and quartic, rejects a normality violation") {
    GenericModel L = model(kLewy);
    CHECK(L.m == 1);
    CHECK(L.d == 1);
    CHECK(L.Q[0] == series(L, "tau1 + 2*i*z1*chi1"));
    GenericModel Qm = model(kQuartic);
    CHECK(Qm.Q[0].coeff({2, 2, 0}) == 2 * I);
    try {
        model("model Bad { Q1 = tau + z; }");
        FAIL("expected a normality violation");
    } catch (const ModelError& e) {
        CHECK(e.kind() == "normality");
        CHECK(e.component() == 1);
        CHECK(e.monomial() == "z1");
    }
    // 2zchi without the i is not real
    CHECK_THROWS_AS(model("model Bad { Q1 = tau + 2*z*chi; }"), ModelError);
}

TEST_CASE("from_real_graph solves the graph equation") {
    GenericModel L = model("model L { graph phi1 = z*chi; }");
    CHECK(L.Q[0] == series(L, "tau1 + 2*i*z1*chi1"));
    GenericModel R = model("model R { graph phi1 = z*chi + z*chi*(z^2 + chi^2)/2; }");
    CHECK(R.Q[0] == series(R, "tau1 + 2*i*z1*chi1 + i*z1^3*chi1 + i*z1*chi1^3"));
    // s-dependent graph: residual of the solved equation is exactly zero
    GenericModel S = model("model S { graph phi1 = z*chi + z^4*chi^2*(1 + i*s) + z^2*chi^4*(1 - i*s); }");
    CHECK_FALSE(normality_violation(S));
    CHECK_FALSE(reality_violation(S));
    CHECK(S.Q[0].coeff({4, 2, 1}) != GaussianRational(0));
}

TEST_CASE("cr frame of Lewy and quartic") {
    GenericModel L = model(kLewy);
    CrFrame F = cr_frame(L);
    // ambient (z, w, chi, tau)
    const Truncation t = Truncation::total(4, L.D - 1);
    CHECK(F.L[0][0] == 2 * I * TruncatedSeries::variable(t, 2));
    CHECK(F.Ltilde[0][0] == -2 * I * TruncatedSeries::variable(t, 0));
    for (const auto& r : frame_tangency_residuals(L, F)) CHECK(r.is_zero());
    GenericModel Qm = model(kQuartic);
    CrFrame G = cr_frame(Qm);
    CHECK(G.L[0][0].coeff({1, 0, 2, 0}) == 4 * I);
    for (const auto& r : frame_tangency_residuals(Qm, G)) CHECK(r.is_zero());
}

TEST_CASE("finite type orders") {
    CHECK(finite_type_order(model(kLewy)).order == 2);
    CHECK(finite_type_order(model(kQuartic)).order == 4);
    FiniteTypeResult flat = finite_type_order(model("model F { m=1 d=1 Q1 = tau1; }"), 8);
    CHECK_FALSE(flat.order);
    // raising the bound never lowers the order
    GenericModel Qm = model(kQuartic);
    CHECK_FALSE(finite_type_order(Qm, 3).order);
    CHECK(finite_type_order(Qm, 6).order == 4);
}

TEST_CASE("finite nondegeneracy") {
    NondegeneracyResult L = nondegeneracy_order(model(kLewy), 7);
    CHECK(L.k == 1);
    NondegeneracyResult Qd = nondegeneracy_order(model(kQuartic), 7);
    CHECK_FALSE(Qd.k);
    for (int r : Qd.ranks) CHECK(r == 0);
    GenericModel S3 = model("model S3 { Q1 = tau + 2*i*(z1*chi1 + z2*chi2 + z3*chi3); }");
    CHECK(nondegeneracy_order(S3, 7).k == 1);
    for (const char* sig : {"z1*chi1 - z2*chi2", "-z1*chi1 + z2*chi2 - z3*chi3"}) {
        GenericModel M = model(std::string("model E { Q1 = tau + 2*i*(") + sig + "); }");
        CHECK(nondegeneracy_order(M, 7).k == 1);
    }
}

TEST_CASE("levi signature") {
    auto sig = [](const std::string& f) {
        return levi_signature(model("model E { Q1 = tau + 2*i*(" + f + "); }"));
    };
    Inertia a = sig("z1*chi1 + z2*chi2");
    CHECK(a.plus == 2);
    CHECK(a.minus == 0);
    Inertia b = sig("z1*chi1 - z2*chi2");
    CHECK(b.plus == 1);
    CHECK(b.minus == 1);
    Inertia c = levi_signature(model(kQuartic));
    CHECK(c.zero == 1);
    Inertia l = levi_signature(model(kLewy));
    CHECK((l.plus == 1 && l.minus == 0 && l.zero == 0));
    // permuting coordinates keeps the signature
    Inertia p = sig("-z2*chi2 + z1*chi1");
    CHECK((p.plus == 1 && p.minus == 1));
    // off-diagonal form z1 chi2 + z2 chi1 has signature (1,1,0)
    Inertia o = sig("z1*chi2 + z2*chi1");
    CHECK((o.plus == 1 && o.minus == 1 && o.zero == 0));
    CHECK_THROWS(levi_signature(model("model T { Q1 = tau1; Q2 = tau2 + 2*i*z*chi; }")));
}

TEST_CASE("segre maps of Lewy") {
    GenericModel L = model(kLewy);
    SegreMapping v1 = segre_map(L, 1);
    CHECK(v1.v[0] == TruncatedSeries::variable(1, L.D, 0));
    CHECK(v1.v[1].is_zero());
    SegreMapping v2 = segre_map(L, 2);
    const Truncation t2 = v2.v[0].truncation();
    auto x = [&](const Truncation& t, int k) { return TruncatedSeries::variable(t, k); };
    CHECK(v2.v[1] == 2 * I * x(t2, 0) * x(t2, 1));
    SegreMapping v3 = segre_map(L, 3);
    const Truncation t3 = v3.v[0].truncation();
    CHECK(v3.v[1] == 2 * I * x(t3, 0) * x(t3, 1) - 2 * I * x(t3, 1) * x(t3, 2));
}

TEST_CASE("segre stability and symmetric points on test models") {
    const char* models[] = {
        kLewy,
        kQuartic,
        "model R { Q1 = tau + 2*i*z*chi + i*z^3*chi + i*z*chi^3; }",
        "model E { Q1 = tau + 2*i*(z1*chi1 - z2*chi2); }",
        "model T { Q1 = tau1 + 2*i*z*chi; Q2 = tau2 + 2*i*z^2*chi^2; }",
    };
    for (const char* src : models) {
        GenericModel M = model(src, 6);
        CAPTURE(M.name);
        for (int r = 1; r <= 3; ++r) {
            CHECK(segre_stability(M, r));
            for (const auto& s : segre_symmetric_restriction(M, r)) CHECK(s.is_zero());
        }
    }
}

TEST_CASE("segre rank") {
    Sampler s(11);
    SegreRankResult L = segre_rank_r(model(kLewy), 3, 5, s);
    CHECK(L.r == 2);
    REQUIRE(L.ranks.size() >= 2);
    CHECK(L.ranks[0] < 2);
    SegreRankResult F = segre_rank_r(model("model F { m=1 d=1 Q1 = tau1; }"), 3, 5, s);
    CHECK_FALSE(F.r);
}

TEST_CASE("random real graphs give valid models") {
    Sampler rng(5);
    for (int trial = 0; trial < 12; ++trial) {
        // phi = sum of real pairs c z^a chi^b s^k + conj(c) z^b chi^a s^k with a,b >= 1
        std::string phi = "0";
        for (int k = 0; k < 3; ++k) {
            int a = static_cast<int>(rng.uniform(1, 2)), b = static_cast<int>(rng.uniform(1, 2)),
                e = static_cast<int>(rng.uniform(0, 1));
            GaussianRational c = rng.small_gaussian();
            phi += " + " + to_dsl(c) + "*z^" + std::to_string(a) + "*chi^" + std::to_string(b) + "*s^" +
                   std::to_string(e) + " + " + to_dsl(c.conj()) + "*z^" + std::to_string(b) + "*chi^" +
                   std::to_string(a) + "*s^" + std::to_string(e);
        }
        GenericModel M = model("model G { graph phi1 = " + phi + "; }", 6);
        CHECK_FALSE(normality_violation(M));
        CHECK_FALSE(reality_violation(M));
    }
}
