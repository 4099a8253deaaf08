// Acceptance run at D = 8: one PASS/FAIL line per criterion, exit 1 on any FAIL.

#include "property_suite.hpp"

#include "segrekit/corpus.hpp"
#include "segrekit/dsl.hpp"
#include "segrekit/hspm.hpp"
#include "segrekit/model.hpp"
#include "segrekit/oracle.hpp"
#include "segrekit/reflection.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace segrekit;

namespace {

constexpr int D = 8;
constexpr int kTuples = 10;

// collects the reasons a criterion fails
struct Check {
    std::vector<std::string> why;
    void expect(bool ok, const std::string& what) {
        if (!ok) why.push_back(what);
    }
};

Workspace load(const std::string& src, int degree = D) {
    Workspace ws = build_workspace(parse_document(src), degree);
    if (!ws.errors.empty()) throw std::runtime_error(ws.errors.begin()->first + ": " + ws.errors.begin()->second);
    return ws;
}

std::string lewy_members(std::uint64_t seed, int count, const char* stem = "L") {
    Sampler s(seed);
    std::string src = kLewyModelDsl;
    for (int k = 0; k < count; ++k) src += lewy_member_dsl(stem + std::to_string(k), sample_lewy_params(s));
    return src;
}

std::string name_of(int k) { return "L" + std::to_string(k); }

// ---------------------------------------------------------------------------

void corpus_maps(Check& c, std::uint64_t seed) {
    Workspace ws = build_workspace(parse_document(corpus_source(seed)), D);
    for (const auto& [k, v] : ws.errors) c.expect(false, k + ": " + v);
    for (const auto& e : corpus_expectations(seed)) {
        auto it = ws.maps.find(e.map);
        if (it == ws.maps.end()) {
            c.expect(false, e.map + " missing");
            continue;
        }
        VerifyResult v = hspm_verify(it->second);
        bool zero = v.pass;
        for (const auto& r : v.residual) zero = zero && r.is_zero();
        c.expect(zero, e.map + " residual at " + v.monomial);
        if (e.real_slice_applicable)
            c.expect(real_slice_check(it->second) == e.real_slice, e.map + " real slice");
    }
    // HSPMs without a real-slice counterpart
    for (const char* n : {"sig_map_1", "sig_map_2", "sig3_map_1", "twist_map"})
        c.expect(ws.maps.count(n) && !real_slice_check(ws.maps.at(n)), std::string(n) + " should not be real");
}

void invariants(Check& c, std::uint64_t seed) {
    Workspace ws = load(corpus_source(seed));
    AnalysisOptions opt;
    opt.seed = seed;
    auto an = [&](const char* n) { return analyze(ws.models.at(n), opt); };

    AnalysisReport lewy = an("lewy");
    c.expect(lewy.finite_type.order == 2, "Lewy type order");
    c.expect(lewy.nondeg.k == 1, "Lewy k");
    c.expect(lewy.levi == Inertia{1, 0, 0}, "Lewy Levi signature");

    AnalysisReport q = an("quartic");
    c.expect(q.finite_type.order == 4, "quartic type order");
    c.expect(!q.nondeg.k && q.nondeg.bound == D - 1, "quartic should be degenerate through D-1");

    const GenericModel& sphere = ws.models.at("undet_tgt");
    c.expect(sphere.m == 3 && sphere.d == 1, "undet_tgt lives in C^4");
    c.expect(nondegeneracy_order(sphere, D - 1).k == 1, "sum |z_j|^2 in C^4: k");

    c.expect(levi_signature(ws.models.at("sig_pp")) == Inertia{2, 0, 0}, "sig_pp signature");
    c.expect(levi_signature(ws.models.at("sig_pm")) == Inertia{1, 1, 0}, "sig_pm signature");
}

void condition_d(Check& c, std::uint64_t seed) {
    Workspace ws = load(corpus_source(seed));
    const SegrePreservingMap& h = ws.maps.at("c4c3_map");
    auto w = condition_D_witnesses(h);
    c.expect(w.size() == 9, "expected 9 pairs, got " + std::to_string(w.size()));
    // minors straight from the linear parts f = (z1 + z3, z1 - z2), ft = (chi1 - chi2, chi2 + chi3)
    const int F[2][3] = {{1, 0, 1}, {1, -1, 0}}, FT[2][3] = {{1, -1, 0}, {0, 1, 1}};
    auto minor = [](const int (&m)[2][3], const std::vector<int>& s) {
        int a = s[0] - 1, b = s[1] - 1;
        return GaussianRational(m[0][a] * m[1][b] - m[0][b] * m[1][a]);
    };
    Matrix fz = fz0(h), ft = ftchi0(h);
    for (const auto& x : w) {
        c.expect(x.det_f == minor(F, x.mu), "det f minor");
        c.expect(x.det_ft == minor(FT, x.nu), "det ft minor");
        Matrix a{{fz[0][x.mu[0] - 1], fz[0][x.mu[1] - 1]}, {fz[1][x.mu[0] - 1], fz[1][x.mu[1] - 1]}};
        c.expect(determinant(a) == x.det_f, "det f against the Jacobian");
    }
}

void segre_machinery(Check& c, std::uint64_t seed) {
    Workspace ws = load(corpus_source(seed));
    for (const auto& [name, M] : ws.models)
        for (int r = 1; r <= 3; ++r) {
            c.expect(segre_stability(M, r), name + " stability r=" + std::to_string(r));
            for (const auto& s : segre_symmetric_restriction(M, r))
                c.expect(s.is_zero(), name + " symmetric identity r=" + std::to_string(r));
        }
    Sampler s(seed);
    c.expect(segre_rank_r(ws.models.at("lewy"), 3, 5, s).r == 2, "Lewy segre rank");
}

void partner(Check& c, std::uint64_t seed) {
    // inputs one degree higher so the recovered side reaches D
    const std::string src = lewy_members(seed, kTuples);
    Workspace hi = load(src, D + 1), lo = load(src, D);
    for (int k = 0; k < kTuples; ++k) {
        const auto& h = hi.maps.at(name_of(k));
        const auto& want = lo.maps.at(name_of(k));
        ReconstructionResult a = partner_reconstruct(h.source, h.target, KnownSide::H, h.H());
        c.expect(a.certified && a.recovered.ft == want.ft && a.recovered.gt == want.gt, name_of(k) + " Htilde from H");
        SegrePreservingMap sw = conjugate_swap(h);
        ReconstructionResult b = partner_reconstruct(sw.source, sw.target, KnownSide::H, sw.H());
        SegrePreservingMap back = conjugate_swap(b.recovered);
        c.expect(b.certified && back.f == want.f && back.g == want.g, name_of(k) + " H from Htilde via swap");
    }

    Workspace q = load(corpus_source(seed));
    const auto& h1 = q.maps.at("quartic_pair_H1");
    try {
        partner_reconstruct(h1.source, h1.target, KnownSide::H, h1.H());
        c.expect(false, "quartic partner should be not-well-posed");
    } catch (const ReconstructionError& e) {
        c.expect(e.kind() == "not-well-posed", std::string("quartic: ") + e.what());
    }
    OracleResult o = partner_oracle(h1.source, h1.target, KnownSide::H, h1.H());
    c.expect(o.verdict == OracleVerdict::ambiguous, "quartic oracle: " + to_string(o.verdict));
    bool minus = false;
    for (const auto& alt : o.alternatives) {
        c.expect(hspm_verify(alt).pass, "quartic alternative verifies");
        minus = minus || map_equal(alt, q.maps.at("quartic_pair_H2"));
    }
    c.expect(minus, "quartic alternatives miss (-chi, tau)");
    // the direction only moves chi
    c.expect(o.witness.size() == 4 && o.witness[0].is_zero() && o.witness[1].is_zero() && !o.witness[2].is_zero() &&
                 o.witness[3].is_zero(),
             "quartic witness direction");
}

void jets(Check& c, std::uint64_t seed) {
    const std::string src = lewy_members(seed + 1, kTuples);
    Workspace ws = load(src);
    const GenericModel& M = ws.models.at("lewy");
    std::vector<JetPair> seen;
    for (int k = 0; k < kTuples; ++k) {
        const auto& h = ws.maps.at(name_of(k));
        JetPair j = jet_extract(h, 2);
        OracleResult o = jet_determination_oracle(h.source, h.target, j);
        c.expect(o.verdict == OracleVerdict::unique, name_of(k) + " oracle " + to_string(o.verdict));
        if (o.solution) {
            ReconstructionResult r = full_jet_reconstruct(h.source, h.target, j);
            c.expect(r.certified && map_equal(r.recovered, *o.solution), name_of(k) + " full_jet disagrees");
            c.expect(map_equal(*o.solution, h), name_of(k) + " oracle solution differs from the member");
        }
        for (const auto& s : seen) c.expect(!(s == j), name_of(k) + " shares its jets");
        seen.push_back(j);
    }
    JetPair bad = seen.front();
    bad.left.entries[{0, {2, 0}}] += GaussianRational(1);
    MembershipResult m = jet_extends_to_automorphism(M, bad);
    c.expect(!m.member && m.detail.find("does not extend") != std::string::npos, "perturbed jet: " + m.detail);

    Workspace rem = load(corpus_source(seed));
    const auto& h2 = rem.maps.at("undet_H2");
    const auto& h3 = rem.maps.at("undet_H3");
    JetPair shared = jet_extract(h2, 1);
    c.expect(shared == jet_extract(h3, 1), "undet 1-jets should agree");
    OracleResult o = jet_determination_oracle(h2.source, h2.target, shared);
    c.expect(o.verdict == OracleVerdict::ambiguous, "undet oracle " + to_string(o.verdict));
}

void groups(Check& c, std::uint64_t seed) {
    Workspace ws = load(lewy_members(seed + 2, 4));
    const GenericModel& M = ws.models.at("lewy");
    auto in_family = [&](const SegrePreservingMap& h) {
        MembershipResult r = jet_extends_to_automorphism(M, jet_extract(h, 2));
        return hspm_verify(h).pass && r.member && r.automorphism && map_equal(*r.automorphism, h);
    };
    for (int a = 0; a < 4; ++a) {
        const auto& ha = ws.maps.at(name_of(a));
        c.expect(in_family(invert_hspm(ha)), name_of(a) + " inverse");
        for (int b = 0; b < 4; ++b)
            c.expect(in_family(compose_hspm(ha, ws.maps.at(name_of(b)))), name_of(a) + " o " + name_of(b));
    }

    Workspace q = load(corpus_source(seed));
    const char* rez[] = {"rez_H1", "rez_H2", "rez_H3", "rez_H4"};
    auto at = [&](const char* n) -> const SegrePreservingMap& { return q.maps.at(n); };
    c.expect(map_equal(compose_hspm(at("rez_H2"), at("rez_H3")), at("rez_H4")), "H2 o H3 = H4");
    for (const char* a : rez) {
        int inverses = 0;
        for (const char* b : rez) {
            SegrePreservingMap ab = compose_hspm(at(a), at(b));
            int hits = 0;
            for (const char* x : rez) hits += map_equal(ab, at(x));
            c.expect(hits == 1, std::string(a) + " o " + b + " leaves the set");
            inverses += map_equal(ab, at("rez_H1"));
        }
        c.expect(inverses == 1, std::string(a) + " inverse");
    }
    for (const char* a : rez)
        for (const char* b : rez)
            if (std::string(a) < b) c.expect(!map_equal(at(a), at(b)), std::string(a) + " = " + b);

    // (m, n) = (2, 4): c = 1 and c = -1; H_{-1} never real
    Sampler s(seed);
    std::string src = "model octic { graph phi1 = z^2*chi^2 + z^4*chi^4; }\n";
    for (int k = 0; k < 6; ++k) {
        GaussianRational a = s.small_nonzero_gaussian();
        src += root_family_dsl("p" + std::to_string(k), "octic", a, 1);
        src += root_family_dsl("m" + std::to_string(k), "octic", a, -1);
    }
    // |a| = 1 makes H_1 real
    src += root_family_dsl("p_real", "octic", GaussianRational(mpq_class(3, 5), mpq_class(4, 5)), 1);
    src += root_family_dsl("m_unit", "octic", GaussianRational(mpq_class(3, 5), mpq_class(4, 5)), -1);
    Workspace o = load(src);
    for (const auto& [n, h] : o.maps) {
        c.expect(hspm_verify(h).pass, n + " verifies");
        if (n[0] == 'm') c.expect(!real_slice_check(h), n + " is real");
    }
    c.expect(real_slice_check(o.maps.at("p_real")), "p_real should be real");
}

void properties(Check& c, std::uint64_t seed) {
    testing::PropertyTally t = testing::run_property_suite(seed, 200, 6);
    c.expect(t.instances == 200 && t.ift_solved == 200, "instance count");
    for (const auto& f : t.failures) c.expect(false, f);
}

}  // namespace

int main() {
    const std::uint64_t seed = default_seed(2026);
    struct Criterion {
        const char* label;
        std::function<void(Check&, std::uint64_t)> run;
    };
    const Criterion all[] = {
        {"corpus maps verify with zero residual", corpus_maps},
        {"invariants", invariants},
        {"condition D enumeration", condition_d},
        {"Segre machinery", segre_machinery},
        {"partner reconstruction", partner},
        {"jet determination", jets},
        {"group structure", groups},
        {"property suites", properties},
    };
    std::cout << "acceptance at D=" << D << ", seed " << seed << "\n";
    bool ok = true;
    int i = 0;
    for (const auto& cr : all) {
        ++i;
        Check c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            cr.run(c, seed);
        } catch (const std::exception& e) {
            c.why.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream line;
        line << (c.why.empty() ? "PASS" : "FAIL") << " criterion " << i << ": " << cr.label;
        line.precision(2);
        line << std::fixed << " (" << secs << " s)";
        std::cout << line.str() << "\n";
        for (std::size_t k = 0; k < c.why.size() && k < 10; ++k) std::cout << "    " << c.why[k] << "\n";
        ok = ok && c.why.empty();
    }
    return ok ? 0 : 1;
}
