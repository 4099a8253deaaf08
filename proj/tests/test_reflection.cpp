#include "doctest.h"
#include "segrekit/corpus.hpp"
#include "segrekit/dsl.hpp"
#include "segrekit/reflection.hpp"

using namespace segrekit;

namespace {

const GaussianRational I = GaussianRational::unit_i();

Workspace load(const std::string& src, int D = 8) {
    Workspace ws = build_workspace(parse_document(src), D);
    for (const auto& [k, v] : ws.errors) FAIL_CHECK(k << ": " << v);
    return ws;
}

const char* kQuartic = R"(
model quartic { Q1 = tau + 2*i*z^2*chi^2; }
map H1 : quartic -> quartic { f1 = z; g1 = w; tf1 = chi; tg1 = tau; }
map H2 : quartic -> quartic { f1 = z; g1 = w; tf1 = -chi; tg1 = tau; }
)";

// g(Z) composed with Qbar'^l_{chi'^beta} at (ft(chi, Qbar(chi, z, w)), f, g), in (z, chi, w)
TruncatedSeries substitution_oracle(const SegrePreservingMap& h, const std::vector<int>& beta, int l) {
    const GenericModel& M = h.source;
    const int m = M.m, d = M.d, n = h.n();
    const Truncation t = Truncation::total(2 * m + d, M.D);
    auto var = [&](int i) { return TruncatedSeries::variable(t, i); };
    SeriesVec Z, chi_z_w;
    for (int j = 0; j < m; ++j) Z.push_back(var(j));
    for (int r = 0; r < d; ++r) Z.push_back(var(2 * m + r));
    for (int j = 0; j < m; ++j) chi_z_w.push_back(var(m + j));
    for (int j = 0; j < m; ++j) chi_z_w.push_back(var(j));
    for (int r = 0; r < d; ++r) chi_z_w.push_back(var(2 * m + r));
    SeriesVec zeta;
    for (int j = 0; j < m; ++j) zeta.push_back(var(m + j));
    for (const auto& q : M.Qbar()) zeta.push_back(compose(q, chi_z_w));
    SeriesVec inner;
    for (const auto& c : h.ft) inner.push_back(compose(c, zeta));
    for (const auto& c : h.f) inner.push_back(compose(c, Z));
    for (const auto& c : h.g) inner.push_back(compose(c, Z));
    TruncatedSeries outer = h.target.Qbar()[l];
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < beta[i]; ++k) outer = differentiate(outer, i);
    return compose(outer, inner);
}

}  // namespace

TEST_CASE("spanning set of the Lewy target, none for the quartic") {
    Workspace l = load(kLewyModelDsl);
    auto s = spanning_set(l.models.at("lewy"));
    REQUIRE(s);
    CHECK(s->k == 1);
    REQUIRE(s->rows.size() == 1);
    CHECK(s->rows[0].alpha == std::vector<int>{1});
    CHECK_FALSE(spanning_set(load(kQuartic).models.at("quartic")));
}

TEST_CASE("reflection_rhs against direct substitution") {
    Workspace l = load(std::string(kLewyModelDsl) + lewy_member_dsl("id", {1, 0, 0, 1, 0}));
    const auto& h = l.maps.at("id");
    TruncatedSeries r = reflection_rhs(h.source, h.target, h.Htilde(), {0}, {1}, 0);
    CHECK(r == -2 * I * TruncatedSeries::variable(r.truncation(), 0));
    // |beta| = 0 gives gt itself on the graph
    TruncatedSeries r0 = reflection_rhs(h.source, h.target, h.Htilde(), {0}, {0}, 0);
    CHECK(r0 == retruncate(substitution_oracle(h, {0}, 0), r0.truncation()));

    Sampler s(31);
    std::string src = kLewyModelDsl;
    for (int k = 0; k < 3; ++k) src += lewy_member_dsl("L" + std::to_string(k), sample_lewy_params(s));
    Workspace ws = load(src);
    for (const auto& [name, m] : ws.maps) {
        CAPTURE(name);
        for (int b = 0; b <= 3; ++b) {
            TruncatedSeries x = reflection_rhs(m.source, m.target, m.Htilde(), {0}, {b}, 0);
            CHECK(x == retruncate(substitution_oracle(m, {b}, 0), x.truncation()));
        }
    }
    // degenerate target, the formula itself still holds
    Workspace q = load(kQuartic);
    const auto& h2 = q.maps.at("H2");
    for (int b = 1; b <= 4; ++b) {
        TruncatedSeries x = reflection_rhs(h2.source, h2.target, h2.Htilde(), {0}, {b}, 0);
        CHECK(x == retruncate(substitution_oracle(h2, {b}, 0), x.truncation()));
    }
    CHECK_THROWS_AS(reflection_rhs(h2.source, h2.target, SeriesVec{h2.gt[0], h2.gt[0]}, {0}, {1}, 0),
                    ReconstructionError);
}

TEST_CASE("partner reconstruction on Lewy members recovers the other side exactly") {
    Sampler s(77);
    std::string src = kLewyModelDsl;
    for (int k = 0; k < 4; ++k) src += lewy_member_dsl("L" + std::to_string(k), sample_lewy_params(s));
    src += lewy_member_dsl("id", {1, 0, 0, 1, 0});
    Workspace hi = load(src, 9), lo = load(src, 8);
    for (const auto& [name, h] : hi.maps) {
        CAPTURE(name);
        const auto& want = lo.maps.at(name);
        ReconstructionResult a = partner_reconstruct(h.source, h.target, KnownSide::H, h.H());
        CHECK(a.certified);
        CHECK(a.recovered.ft == want.ft);
        CHECK(a.recovered.gt == want.gt);
        ReconstructionResult b = partner_reconstruct(h.source, h.target, KnownSide::Htilde, h.Htilde());
        CHECK(b.certified);
        CHECK(b.recovered.f == want.f);
        CHECK(b.recovered.g == want.g);
        // reconstruct then swap equals swap then reconstruct
        SegrePreservingMap sw = conjugate_swap(h);
        ReconstructionResult c = partner_reconstruct(sw.source, sw.target, KnownSide::Htilde, sw.Htilde());
        CHECK(map_equal(c.recovered, conjugate_swap(a.recovered)));
    }
}

TEST_CASE("partner reconstruction is not well-posed on the quartic") {
    Workspace q = load(kQuartic);
    const auto& h = q.maps.at("H1");
    try {
        partner_reconstruct(h.source, h.target, KnownSide::H, h.H());
        FAIL("expected not-well-posed");
    } catch (const ReconstructionError& e) {
        CHECK(e.kind() == "not-well-posed");
    }
    // both completions of H = id verify
    CHECK(hspm_verify(q.maps.at("H1")).pass);
    CHECK(hspm_verify(q.maps.at("H2")).pass);
}

TEST_CASE("segre jet recursion matches direct composition") {
    Sampler s(5);
    std::string src = kLewyModelDsl;
    for (int k = 0; k < 3; ++k) src += lewy_member_dsl("L" + std::to_string(k), sample_lewy_params(s));
    src += lewy_member_dsl("id", {1, 0, 0, 1, 0});
    Workspace ws = load(src, 8);
    const int T = 8;
    for (const auto& [name, h] : ws.maps) {
        CAPTURE(name);
        JetPair jets = jet_extract(h, 3);
        for (int sord = 1; sord <= 2; ++sord) {
            SegreMapping v = segre_map(h.source, sord);
            for (const std::vector<int>& gamma : {std::vector<int>{0, 0}, {1, 0}, {0, 1}}) {
                if (sord + gamma[0] + gamma[1] > 3) continue;
                for (int c = 0; c < 2; ++c) {
                    TruncatedSeries direct = h.H()[c];
                    for (int i = 0; i < 2; ++i)
                        for (int k = 0; k < gamma[i]; ++k) direct = differentiate(direct, i);
                    direct = retruncate(compose(direct, v.v), Truncation::total(sord, T - 2));
                    TruncatedSeries rec = segre_jet_recursion(h.source, h.target, sord, jets, gamma, c, T);
                    CHECK(retruncate(rec, Truncation::total(sord, T - 2)) == direct);
                }
            }
        }
    }
    // identity: H o v^2 = (t0, 2i t0 t1)
    const auto& id = ws.maps.at("id");
    JetPair j = jet_extract(id, 2);
    TruncatedSeries u = segre_jet_recursion(id.source, id.target, 2, j, {0, 0}, 1, 6);
    const Truncation t = u.truncation();
    CHECK(u == 2 * I * TruncatedSeries::variable(t, 0) * TruncatedSeries::variable(t, 1));
}

TEST_CASE("full jet reconstruction on Lewy at K = 2") {
    Sampler s(2026);
    std::string src = kLewyModelDsl;
    for (int k = 0; k < 4; ++k) src += lewy_member_dsl("L" + std::to_string(k), sample_lewy_params(s));
    src += lewy_member_dsl("id", {1, 0, 0, 1, 0});
    Workspace ws = load(src, 8);
    for (const auto& [name, h] : ws.maps) {
        CAPTURE(name);
        ReconstructionResult r = full_jet_reconstruct(h.source, h.target, jet_extract(h, 2));
        CHECK(r.certified);
        CHECK(map_equal(r.recovered, h));
    }
    // perturb d^2 f / dz^2
    const auto& h = ws.maps.at("L0");
    JetPair bad = jet_extract(h, 2);
    bad.left.entries[{0, {2, 0}}] += GaussianRational(1);
    bool extends = false;
    try {
        extends = full_jet_reconstruct(h.source, h.target, bad).certified;
    } catch (const ReconstructionError& e) {
        CAPTURE(e.what());
        CHECK(e.kind() == "inconsistent");
    }
    CHECK_FALSE(extends);
    // K = 1 is below 2k
    CHECK_THROWS_AS(full_jet_reconstruct(h.source, h.target, jet_extract(h, 1)), ReconstructionError);
}
