#include "doctest.h"
#include "segrekit/corpus.hpp"
#include "segrekit/dsl.hpp"
#include "segrekit/oracle.hpp"

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

}  // namespace

TEST_CASE("Poly arithmetic and substitution") {
    Poly x = Poly::var(0), y = Poly::var(1);
    Poly p = x * x + Poly::constant(3) * y;
    CHECK(p.degree() == 2);
    CHECK(p.variables() == std::vector<int>{0, 1});
    Poly q = p.substitute(0, y + Poly::constant(1));
    // (y+1)^2 + 3y = y^2 + 5y + 1
    CHECK(q == y * y + Poly::constant(5) * y + Poly::constant(1));
    CHECK_FALSE(q.isolated_linear(1));
    CHECK(*(Poly::constant(2) * x + y * y).isolated_linear(0) == GaussianRational(2));
    CHECK((x - x).is_zero());
}

TEST_CASE("oracle: Lewy 2-jets determine the map") {
    Sampler s(404);
    std::string src = kLewyModelDsl;
    for (int k = 0; k < 2; ++k) src += lewy_member_dsl("L" + std::to_string(k), sample_lewy_params(s));
    Workspace ws = load(src, 8);
    for (const auto& [name, h] : ws.maps) {
        CAPTURE(name);
        JetPair j = jet_extract(h, 2);
        OracleResult o = jet_determination_oracle(h.source, h.target, j);
        CAPTURE(o.detail);
        REQUIRE(o.verdict == OracleVerdict::unique);
        CHECK(map_equal(*o.solution, h));
        ReconstructionResult r = full_jet_reconstruct(h.source, h.target, j);
        CHECK(map_equal(*o.solution, r.recovered));
    }
}

TEST_CASE("oracle: the quartic partner problem is ambiguous along (-chi, tau)") {
    Workspace q = load(kQuartic);
    const auto& h = q.maps.at("H1");
    OracleResult o = partner_oracle(h.source, h.target, KnownSide::H, h.H());
    CAPTURE(o.detail);
    REQUIRE(o.verdict == OracleVerdict::ambiguous);
    REQUIRE(o.alternatives.size() == 2);
    bool has_minus = false;
    for (const auto& a : o.alternatives) {
        CHECK(hspm_verify(a).pass);
        has_minus |= map_equal(a, q.maps.at("H2"));
    }
    CHECK(has_minus);
}

TEST_CASE("oracle: shared 1-jets leave the m < n example undetermined") {
    Workspace ws = load(corpus_source(1), 8);
    const auto& h2 = ws.maps.at("undet_H2");
    const auto& h3 = ws.maps.at("undet_H3");
    CHECK(jet_extract(h2, 1) == jet_extract(h3, 1));
    CHECK_FALSE(jet_extract(h2, 2) == jet_extract(h3, 2));
    OracleResult o = jet_determination_oracle(h2.source, h2.target, jet_extract(h2, 1));
    CAPTURE(o.detail);
    REQUIRE(o.verdict == OracleVerdict::ambiguous);
    REQUIRE(o.alternatives.size() == 2);
    for (const auto& a : o.alternatives) {
        CHECK(hspm_verify(a).pass);
        CHECK(jet_extract(a, 1) == jet_extract(h2, 1));
    }
    CHECK_FALSE(map_equal(o.alternatives[0], o.alternatives[1]));
    CHECK(o.degree == 2);
    bool moved = false;
    for (const auto& w : o.witness) moved |= !w.is_zero();
    CHECK(moved);
}

TEST_CASE("jet membership in the Lewy automorphism family") {
    std::string src = kLewyModelDsl;
    src += lewy_member_dsl("a1", {1, 0, 0, 2, 0});
    Sampler s(99);
    src += lewy_member_dsl("real", sample_real_lewy_params(s));
    Workspace ws = load(src, 8);
    const GenericModel& M = ws.models.at("lewy");

    JetPair j = jet_extract(ws.maps.at("a1"), 2);
    CHECK(j.left.at(0, {1, 0}) == GaussianRational(1));
    CHECK(j.right.at(0, {1, 0}) == GaussianRational(2));
    MembershipResult yes = jet_extends_to_automorphism(M, j);
    CAPTURE(yes.detail);
    CHECK(yes.member);
    REQUIRE(yes.automorphism);
    CHECK(map_equal(*yes.automorphism, ws.maps.at("a1")));

    // g_w = 1 with f_z = 1, ft_chi = 2 breaks g_w = alpha alpha~
    JetPair bad = j;
    bad.left.entries[{1, {0, 1}}] = GaussianRational(1);
    bad.right.entries[{1, {0, 1}}] = GaussianRational(1);
    MembershipResult no = jet_extends_to_automorphism(M, bad);
    CAPTURE(no.detail);
    CHECK_FALSE(no.member);
    CHECK(no.detail.find("does not extend") != std::string::npos);

    MembershipResult r = jet_extends_to_automorphism(M, jet_extract(ws.maps.at("real"), 2));
    CHECK(r.member);
    REQUIRE(r.automorphism);
    CHECK(real_slice_check(*r.automorphism));
}

TEST_CASE("oracle: perturbed Lewy jets are inconsistent") {
    Sampler s(8);
    Workspace ws = load(std::string(kLewyModelDsl) + lewy_member_dsl("L", sample_lewy_params(s)), 8);
    const auto& h = ws.maps.at("L");
    JetPair bad = jet_extract(h, 2);
    bad.left.entries[{0, {2, 0}}] += GaussianRational(1);
    OracleResult o = jet_determination_oracle(h.source, h.target, bad);
    CAPTURE(o.detail);
    CHECK(o.verdict == OracleVerdict::inconsistent);
}
