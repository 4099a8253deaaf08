#include "segrekit/corpus.hpp"

#include "segrekit/dsl.hpp"

namespace segrekit {

const char* const kLewyModelDsl = "model lewy { Q1 = tau + 2*i*z*chi; }\n";

std::string lewy_member_dsl(const std::string& name, const std::vector<GaussianRational>& p,
                            const std::string& model) {
    const std::string a = to_dsl(p[0]), b = to_dsl(p[1]), c = to_dsl(p[2]), at = to_dsl(p[3]), bt = to_dsl(p[4]);
    const std::string den = "(1 - (" + c + " + i*" + b + "*" + bt + ")*w - 2*i*" + bt + "*z)";
    const std::string dent = "(1 - (" + c + " - i*" + b + "*" + bt + ")*tau + 2*i*" + b + "*chi)";
    return "map " + name + " : " + model + " -> " + model + " {\n  f1 = " + a + "*(z + " + b + "*w)/" + den +
           ";\n  g1 = " + a + "*" + at + "*w/" + den + ";\n  tf1 = " + at + "*(chi + " + bt + "*tau)/" + dent +
           ";\n  tg1 = " + a + "*" + at + "*tau/" + dent + ";\n}\n";
}

std::vector<GaussianRational> sample_lewy_params(Sampler& s) {
    return {s.small_nonzero_gaussian(), s.small_gaussian(), s.small_gaussian(), s.small_nonzero_gaussian(),
            s.small_gaussian()};
}

std::vector<GaussianRational> sample_real_lewy_params(Sampler& s) {
    GaussianRational a = s.small_nonzero_gaussian(), b = s.small_gaussian(), c = s.small_rational();
    return {a, b, c, a.conj(), b.conj()};
}

// H_c = (a z, c^m w, (c/a) chi, c^m tau) with m = 2
std::string root_family_dsl(const std::string& name, const std::string& model, const GaussianRational& a, int c) {
    const GaussianRational cm(c * c);
    return "map " + name + " : " + model + " -> " + model + " {\n  f1 = " + to_dsl(a) + "*z;\n  g1 = " + to_dsl(cm) +
           "*w;\n  tf1 = " + to_dsl(GaussianRational(c) / a) + "*chi;\n  tg1 = " + to_dsl(cm) + "*tau;\n}\n";
}

namespace {

bool lewy_is_real(const std::vector<GaussianRational>& p) {
    return p[3] == p[0].conj() && p[4] == p[1].conj() && p[2] == p[2].conj();
}

constexpr int kLewyMembers = 4;

// |z|^{2m} family at m = 2: (a z (1+alpha w)^{-1/2}, a^2 a~^2 w/(1+alpha w), ...)
std::string quartic_family(const std::string& name, const GaussianRational& a, const GaussianRational& at,
                           const GaussianRational& al) {
    const std::string C = to_dsl(a * a * at * at), A = to_dsl(al);
    return "map " + name + " : quartic -> quartic {\n  f1 = " + to_dsl(a) + "*z*binom_pow(1 + " + A +
           "*w, -1/2);\n  g1 = " + C + "*w/(1 + " + A + "*w);\n  tf1 = " + to_dsl(at) + "*chi*binom_pow(1 + " + A +
           "*tau, -1/2);\n  tg1 = " + C + "*tau/(1 + " + A + "*tau);\n}\n";
}

// (eps_j c_j z_j, a w, a sigma_j / c_j chi_j, a tau)
std::string signature_map(const std::string& name, const std::string& src, const std::string& dst,
                          const std::vector<int>& eps, const std::vector<int>& sigma,
                          const std::vector<GaussianRational>& c, const GaussianRational& a) {
    std::string out = "map " + name + " : " + src + " -> " + dst + " {\n";
    for (std::size_t j = 0; j < eps.size(); ++j)
        out += "  f" + std::to_string(j + 1) + " = " + to_dsl(GaussianRational(eps[j]) * c[j]) + "*z" +
               std::to_string(j + 1) + ";\n";
    out += "  g1 = " + to_dsl(a) + "*w;\n";
    for (std::size_t j = 0; j < eps.size(); ++j)
        out += "  tf" + std::to_string(j + 1) + " = " + to_dsl(a * GaussianRational(sigma[j]) / c[j]) + "*chi" +
               std::to_string(j + 1) + ";\n";
    out += "  tg1 = " + to_dsl(a) + "*tau;\n}\n";
    return out;
}

std::string signature_model(const std::string& name, const std::vector<int>& eps) {
    std::string phi;
    for (std::size_t j = 0; j < eps.size(); ++j)
        phi += (eps[j] > 0 ? (j ? " + " : "") : " - ") + std::string("z") + std::to_string(j + 1) + "*chi" +
               std::to_string(j + 1);
    return "model " + name + " { graph phi1 = " + phi + "; }\n";
}

std::string undetermined_map(int r) {
    const std::string R = std::to_string(r), R1 = std::to_string(r + 1);
    return "map undet_H" + R + " : undet_src -> undet_tgt {\n  f1 = z1;\n  f2 = z2;\n  f3 = w1;\n  g1 = w1 + w2;\n" +
           "  tf1 = chi1 - 2*i*chi1*tau1 - 2*i*chi1*tau1^" + R + ";\n  tf2 = chi2;\n  tf3 = tau1^" + R +
           " + tau1;\n  tg1 = tau1 + tau2 - 2*i*tau1^2 - 2*i*tau1^" + R1 + ";\n}\n";
}

GaussianRational gr(long p, long q = 1, long pi = 0, long qi = 1) {
    return GaussianRational(mpq_class(p, q), mpq_class(pi, qi));
}

}  // namespace

const char* const kSexticDsl = R"(# Im w = |z|^4 + |z|^6; c^{n-m} = 1 leaves c = 1
model sextic { graph phi1 = z^2*chi^2 + z^3*chi^3; }
map sextic_H1 : sextic -> sextic { f1 = (2 + i)*z; g1 = w; tf1 = (2/5 - 1/5*i)*chi; tg1 = tau; }
map sextic_H1_real : sextic -> sextic { f1 = (3/5 + 4/5*i)*z; g1 = w; tf1 = (3/5 - 4/5*i)*chi; tg1 = tau; }
)";

std::string corpus_source(std::uint64_t seed) {
    Sampler s(seed);
    std::string src = "# built-in example suite\n";
    src += kLewyModelDsl;
    for (int k = 1; k <= kLewyMembers; ++k) src += lewy_member_dsl("lewy_member_" + std::to_string(k), sample_lewy_params(s));
    src += lewy_member_dsl("lewy_real_1", sample_real_lewy_params(s));
    src += lewy_member_dsl("lewy_identity", {1, 0, 0, 1, 0});

    src += R"(
# Im w = |z|^4: two distinct maps over H = id
model quartic { Q1 = tau + 2*i*z^2*chi^2; }
map quartic_pair_H1 : quartic -> quartic { f1 = z; g1 = w; tf1 = chi; tg1 = tau; }
map quartic_pair_H2 : quartic -> quartic { f1 = z; g1 = w; tf1 = -chi; tg1 = tau; }
)";
    src += quartic_family("quartic_family_1", gr(2, 1, 1), gr(1, 3), gr(1, 2, -1));
    src += quartic_family("quartic_family_real", gr(1, 1, 1), gr(1, 1, -1), gr(-3, 4));

    src += R"(
# Im w = |z|^2 + (Re z^2)|z|^2 and its four maps
model rez { graph phi1 = z*chi + z*chi*(z^2 + chi^2)/2; }
map rez_H1 : rez -> rez { f1 = z; g1 = w; tf1 = chi; tg1 = tau; }
map rez_H2 : rez -> rez { f1 = -z; g1 = w; tf1 = -chi; tg1 = tau; }
map rez_H3 : rez -> rez { f1 = -z; g1 = -w; tf1 = chi; tg1 = -tau; }
map rez_H4 : rez -> rez { f1 = z; g1 = -w; tf1 = -chi; tg1 = -tau; }
)";

    src += "\n# sign patterns with different Levi signatures\n";
    src += signature_model("sig_pp", {1, 1});
    src += signature_model("sig_pm", {1, -1});
    src += signature_map("sig_map_1", "sig_pp", "sig_pm", {1, 1}, {1, -1}, {gr(1), gr(1)}, gr(1));
    src += signature_map("sig_map_2", "sig_pp", "sig_pm", {1, 1}, {1, -1}, {gr(2, 1, 1), gr(-1, 3)}, gr(3, 2, -1));
    src += signature_model("sig_ppp", {1, 1, 1});
    src += signature_model("sig_ppm", {1, 1, -1});
    src += signature_map("sig3_map_1", "sig_ppp", "sig_ppm", {1, 1, 1}, {1, 1, -1}, {gr(1, 2), gr(0, 1, 1), gr(3)},
                         gr(-2, 1, 1));

    src += R"(
# |z|^2 + 2 Re[z^4 zbar^2 (1 +- i Re w)]
model twist_src { graph phi1 = z*chi + z^4*chi^2*(1 + i*s) + z^2*chi^4*(1 - i*s); }
model twist_tgt { graph phi1 = z*chi + z^4*chi^2*(1 - i*s) + z^2*chi^4*(1 + i*s); }
map twist_map : twist_src -> twist_tgt { f1 = i*z; g1 = -w; tf1 = i*chi; tg1 = -tau; }

# condition D: C^4 -> C^3
model c4 { graph phi1 = z1*chi1 + z3*chi1 + z1*chi3 - z3*chi2 - z2*chi3 - z2*chi2; }
model c3 { graph phi1 = z1*chi1 + z2*chi2; }
map c4c3_map : c4 -> c3 { f1 = z1 + z3; f2 = z1 - z2; g1 = w; tf1 = chi1 - chi2; tf2 = chi2 + chi3; tg1 = tau; }

# m < n: no jet determination
model undet_src { graph phi1 = z1*chi1; graph phi2 = z2*chi2; }
model undet_tgt { graph phi1 = z1*chi1 + z2*chi2 + z3*chi3; }
)";
    for (int r = 1; r <= 3; ++r) src += undetermined_map(r);

    src += "\n";
    src += kSexticDsl;
    src += R"(
# Im w = |z|^4 + |z|^8; c = 1 and c = -1
model octic { graph phi1 = z^2*chi^2 + z^4*chi^4; }
)";
    src += root_family_dsl("octic_Hp", "octic", gr(2, 1, 1), 1);
    src += root_family_dsl("octic_Hm", "octic", gr(2, 1, 1), -1);
    src += root_family_dsl("octic_Hp_real", "octic", gr(3, 5, 4, 5), 1);
    src += root_family_dsl("octic_Hm_2", "octic", gr(1, 2, -3, 2), -1);
    return src;
}

std::vector<CorpusExpectation> corpus_expectations(std::uint64_t seed) {
    Sampler s(seed);
    std::vector<CorpusExpectation> out;
    for (int k = 1; k <= kLewyMembers; ++k)
        out.push_back({"lewy_member_" + std::to_string(k), true, lewy_is_real(sample_lewy_params(s))});
    out.push_back({"lewy_real_1", true, true});
    out.push_back({"lewy_identity", true, true});
    out.push_back({"quartic_pair_H1", true, true});
    out.push_back({"quartic_pair_H2", true, false});
    out.push_back({"quartic_family_1", true, false});
    out.push_back({"quartic_family_real", true, true});
    out.push_back({"rez_H1", true, true});
    out.push_back({"rez_H2", true, true});
    out.push_back({"rez_H3", true, false});
    out.push_back({"rez_H4", true, false});
    out.push_back({"sig_map_1", true, false});
    out.push_back({"sig_map_2", true, false});
    out.push_back({"sig3_map_1", true, false});
    out.push_back({"twist_map", true, false});
    out.push_back({"c4c3_map", false, false});
    for (int r = 1; r <= 3; ++r) out.push_back({"undet_H" + std::to_string(r), false, false});
    out.push_back({"sextic_H1", true, false});
    out.push_back({"sextic_H1_real", true, true});
    out.push_back({"octic_Hp", true, false});
    out.push_back({"octic_Hm", true, false});
    out.push_back({"octic_Hp_real", true, true});
    out.push_back({"octic_Hm_2", true, false});
    return out;
}

}  // namespace segrekit
