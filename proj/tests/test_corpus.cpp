#include "doctest.h"
#include "segrekit/corpus.hpp"
#include "segrekit/dsl.hpp"
#include "segrekit/hspm.hpp"

#include <set>

using namespace segrekit;

TEST_CASE("corpus at D = 8: every map verifies with zero residual") {
    for (std::uint64_t seed : {1ull, 2026ull}) {
        CAPTURE(seed);
        Workspace ws = build_workspace(parse_document(corpus_source(seed)), 8);
        for (const auto& [k, v] : ws.errors) FAIL_CHECK(k << ": " << v);
        auto expect = corpus_expectations(seed);
        std::set<std::string> listed;
        for (const auto& e : expect) {
            CAPTURE(e.map);
            listed.insert(e.map);
            REQUIRE(ws.maps.count(e.map));
            const auto& h = ws.maps.at(e.map);
            VerifyResult v = hspm_verify(h);
            CHECK(v.pass);
            for (const auto& r : v.residual) CHECK(r.is_zero());
            if (e.real_slice_applicable) CHECK(real_slice_check(h) == e.real_slice);
        }
        for (const auto& [name, h] : ws.maps) CHECK_MESSAGE(listed.count(name), name);
    }
}

TEST_CASE("corpus at D = 4: the degree 6 graphs report an insufficient cap") {
    Workspace ws = build_workspace(parse_document(corpus_source(1)), 4);
    for (const char* name : {"sextic", "sextic_H1", "octic", "twist_src", "twist_map"}) {
        CAPTURE(name);
        REQUIRE(ws.errors.count(name));
        CHECK(ws.errors.at(name).find("insufficient degree cap") != std::string::npos);
    }
    // the low-degree part still loads
    CHECK(ws.maps.count("lewy_identity"));
    CHECK(hspm_verify(ws.maps.at("quartic_pair_H2")).pass);
}

TEST_CASE("a tampered map fails verification at the tampered monomial") {
    Workspace ws = build_workspace(parse_document(corpus_source(1)), 8);
    SegrePreservingMap h = ws.maps.at("rez_H4");
    h.g[0] += TruncatedSeries::monomial(h.g[0].truncation(), {0, 2}, 1);
    VerifyResult v = hspm_verify(h);
    CHECK_FALSE(v.pass);
    CHECK(v.component == 1);
    CHECK(v.monomial.find("tau1^2") != std::string::npos);
}
