// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "typdec/simlm.hpp"

using namespace typdec;

TEST_CASE("profile parsing and validation") {
    CHECK(parse_lm_kind("loop_prone") == LmKind::loop_prone);
    CHECK(to_string(LmKind::mixed) == "mixed");
    CHECK_THROWS(parse_lm_kind("bogus"));
    LmProfile p;
    p.loop_gamma = 0.5;
    CHECK_THROWS(p.validate());
    p = {};
    p.base_temperature = 0;
    CHECK_THROWS(p.validate());
}

TEST_CASE("next distribution") {
    auto vocab = Vocabulary::numbered(64);
    const std::vector<TokenId> history{3, 9, 27};

    SUBCASE("deterministic") {
        for (auto kind : {LmKind::peaked, LmKind::flat, LmKind::mixed, LmKind::loop_prone}) {
            SyntheticLm lm(LmProfile{kind, 0.7, 2.0, 4, 5}, vocab);
            auto a = lm.next_distribution(history);
            auto b = lm.next_distribution(history);
            CHECK(std::equal(a.probs().begin(), a.probs().end(), b.probs().begin()));
        }
    }
    SUBCASE("flat at high temperature beats peaked at low temperature on entropy") {
        SyntheticLm flat(LmProfile{LmKind::flat, 10.0, 1.0, 4, 5}, vocab);
        SyntheticLm peaked(LmProfile{LmKind::peaked, 0.3, 1.0, 4, 5}, vocab);
        CHECK(entropy(flat.next_distribution(history)) > entropy(peaked.next_distribution(history)));
    }
    SUBCASE("loop boost raises the probability of a recent token") {
        const std::vector<TokenId> after_a{11};
        SyntheticLm boosted(LmProfile{LmKind::loop_prone, 1.0, 3.0, 4, 5}, vocab);
        SyntheticLm plain(LmProfile{LmKind::loop_prone, 1.0, 1.0, 4, 5}, vocab);
        CHECK(boosted.next_distribution(after_a)[11] > plain.next_distribution(after_a)[11]);
    }
    SUBCASE("only the trailing window matters") {
        SyntheticLm lm(LmProfile{LmKind::peaked, 1.0, 1.0, 2, 5}, vocab);
        const std::vector<TokenId> longer{50, 40, 9, 27};
        auto a = lm.next_distribution(history);
        auto b = lm.next_distribution(longer);
        CHECK(std::equal(a.probs().begin(), a.probs().end(), b.probs().begin()));
    }
}

TEST_CASE("generate") {
    auto vocab = Vocabulary::numbered(32);
    SyntheticLm lm(LmProfile{LmKind::peaked, 1.0, 1.0, 4, 2}, vocab);

    GreedySampler greedy;
    auto one = generate(lm, greedy, 0, 1);
    CHECK(one.tokens.size() == 1);
    CHECK(one.entropy_trace.size() == 1);

    auto a = generate(lm, greedy, 1, 50);
    auto b = generate(lm, greedy, 99, 50);
    CHECK(a.tokens == b.tokens);

    TopKSampler topk(5);
    auto c = generate(lm, topk, 7, 100);
    auto d = generate(lm, topk, 7, 100);
    CHECK(c.tokens == d.tokens);
    CHECK(c.entropy_trace == d.entropy_trace);

    SUBCASE("entropy trace matches recomputation") {
        GenerationContext ctx(8);
        for (std::size_t i = 0; i < c.tokens.size(); ++i) {
            REQUIRE(c.entropy_trace[i] == entropy(lm.next_distribution(ctx)));
            ctx.push_token(c.tokens[i]);
        }
    }
    SUBCASE("prompt conditions the first step") {
        const std::vector<TokenId> prompt{1, 2, 3};
        auto p = generate(lm, greedy, 0, 1, prompt);
        CHECK(p.tokens[0] == greedy_step(lm.next_distribution(prompt)));
    }
    CHECK_THROWS(generate(lm, greedy, 0, 0));
}
