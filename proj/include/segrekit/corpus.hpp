#pragma once

#include "segrekit/gaussian.hpp"
#include "segrekit/solve.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace segrekit {

// Lewy model Q = tau + 2i z chi and its automorphism family; params are
// (alpha, beta, gamma, alpha~, beta~).
extern const char* const kLewyModelDsl;
std::string lewy_member_dsl(const std::string& name, const std::vector<GaussianRational>& params,
                            const std::string& model = "lewy");
std::vector<GaussianRational> sample_lewy_params(Sampler& s);
// alpha~ = conj(alpha), beta~ = conj(beta), gamma real
std::vector<GaussianRational> sample_real_lewy_params(Sampler& s);

// (a z, c^2 w, (c/a) chi, c^2 tau) on a model Im w = |z|^4 + |z|^{2n}; c^{n-2} = 1
std::string root_family_dsl(const std::string& name, const std::string& model, const GaussianRational& a, int c);

// Expected verdicts of a corpus map.
struct CorpusExpectation {
    std::string map;
    bool real_slice_applicable = true;  // source and target of equal dimensions
    bool real_slice = false;
};

// The built-in example suite as DSL text; Lewy members are drawn from the seed.
std::string corpus_source(std::uint64_t seed);
std::vector<CorpusExpectation> corpus_expectations(std::uint64_t seed);

// The |z|^2 + |z|^6-type family that needs degree 6 terms; at D < 6 the
// graph equation cannot be represented and models report insufficient degree.
extern const char* const kSexticDsl;

}  // namespace segrekit
