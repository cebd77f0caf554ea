#include <doctest.h>

#include "kcgames/complexity.hpp"
#include "kcgames/rng.hpp"
#include "test_support.hpp"

using namespace kcg;
using namespace kcg::complexity;

namespace {

ComplexityProfile random_profile(SplitMix64 &rng, const std::vector<std::string> &domain) {
    ComplexityProfile p;
    for (const auto &x : domain)
        if (rng.below(8) != 0) p.set(x, rng.below(12)); // occasional infinity
    return p;
}

} // namespace

TEST_CASE("complexity_of takes the shortest program") {
    DecompressorGraph g;
    g.add_pair("", "01");
    CHECK(complexity_of(g, "01") == Value{0}); // empty program has length 0
    CHECK(complexity_of(DecompressorGraph{}, "0") == std::nullopt);
    DecompressorGraph h;
    h.add_pair("0", "1");
    h.add_pair("11", "1");
    CHECK(complexity_of(h, "1") == Value{1});
}

TEST_CASE("graphs stay functional and monotone") {
    DecompressorGraph g;
    g.add_pair("0", "1");
    g.add_pair("0", "1"); // identical pair is a no-op
    CHECK(g.size() == 1);
    CHECK_THROWS_AS(g.add_pair("0", "11"), RuleViolation);
    CHECK_THROWS_AS(g.add_pair("2", "1"), RuleViolation);
}

TEST_CASE("complexity_of is antitone under graph growth") {
    SplitMix64 rng(21);
    const auto domain = shortlex_strings(3);
    for (int run = 0; run < 50; ++run) {
        DecompressorGraph g;
        ComplexityProfile prev;
        for (int step = 0; step < 20; ++step) {
            std::string program;
            for (std::uint64_t b = rng.below(5); b-- > 0;) program += rng.below(2) ? "1" : "0";
            const std::string &output = domain[rng.below(domain.size())];
            auto it = g.pairs().find(program);
            if (it != g.pairs().end() && it->second != output) continue;
            g.add_pair(program, output);
            ComplexityProfile cur = profile_of(g, domain);
            for (const auto &x : domain) {
                Value was = prev.get(x), now = cur.get(x);
                if (was) {
                    REQUIRE(now.has_value());
                    CHECK(*now <= *was);
                }
            }
            prev = std::move(cur);
        }
    }
}

TEST_CASE("combined complexity is the pointwise minimum") {
    ComplexityProfile ka, kb;
    ka.set("x", 3);
    kb.set("x", 5);
    CHECK(combined_complexity(ka, kb).get("x") == Value{3});
    ComplexityProfile only_b;
    only_b.set("x", 4);
    CHECK(combined_complexity(ComplexityProfile{}, only_b).get("x") == Value{4});

    SplitMix64 rng(22);
    const auto domain = shortlex_strings(2);
    for (int i = 0; i < 1000; ++i) {
        ComplexityProfile a = random_profile(rng, domain);
        ComplexityProfile b = random_profile(rng, domain);
        ComplexityProfile m = combined_complexity(a, b);
        for (const auto &x : domain) {
            Value va = a.get(x), vb = b.get(x), vm = m.get(x);
            if (va) CHECK((vm && *vm <= *va));
            if (vb) CHECK((vm && *vm <= *vb));
            if (!va && !vb) CHECK(!vm);
        }
    }
}

TEST_CASE("finiteness is shift-invariant, parity is not") {
    PropertyAlpha all_finite;
    all_finite.name = "all_finite";
    all_finite.domain = {"0", "1"};
    SplitMix64 rng(23);
    std::vector<ComplexityProfile> profiles;
    for (int i = 0; i < 10; ++i) profiles.push_back(random_profile(rng, all_finite.domain));
    CHECK(check_o1_stable(all_finite, profiles, 5).stable);

    PropertyAlpha even_at = PropertyAlpha::from_json(
        json{{"name", "even_at"}, {"domain", {"0"}}, {"params", {{"x", "0"}}}});
    ComplexityProfile two;
    two.set("0", 2);
    auto report = check_o1_stable(even_at, {two}, 1);
    CHECK_FALSE(report.stable);
    CHECK(report.counterexample.at("kind") == "shift");
}

TEST_CASE("a threshold property flips under shifts past its margin") {
    // v(w) > |w|/2 + c with the profile sitting exactly at the boundary
    PropertyAlpha alpha = PropertyAlpha::from_json(
        json{{"name", "above_half_len"}, {"domain", {"0000"}}, {"params", {{"c", 0}}}});
    ComplexityProfile at_threshold;
    at_threshold.set("0000", 3); // 2*3 > 4 holds, 2*2 > 4 fails
    auto report = check_o1_stable(alpha, {at_threshold}, 1);
    CHECK_FALSE(report.stable);
    report = check_o1_stable(alpha, {at_threshold}, 0);
    CHECK(report.stable); // refuter finds nothing without room to shift
}

TEST_CASE("infinite values without a rule are a domain mismatch") {
    PropertyAlpha alpha = PropertyAlpha::from_json(
        json{{"name", "all_finite"}, {"domain", {"0"}}, {"infinite_rule", "reject"}});
    ComplexityProfile empty;
    CHECK_THROWS_AS(alpha.evaluate(empty), DomainMismatchError);
}

TEST_CASE("monotone referee on the sample predicates") {
    ComplexityProfile ka, kb;
    ka.set("0", 2);
    kb.set("0", 3);
    TwoProfilePredicate always = TwoProfilePredicate::from_json(json{{"name", "always_true"}});
    CHECK(monotone_referee(always, ka, kb) == Player::Alice);

    TwoProfilePredicate le = TwoProfilePredicate::from_json(
        json{{"name", "pointwise_le"}, {"domain", {"0"}}});
    CHECK(monotone_referee(le, ka, kb) == Player::Alice);
    CHECK(monotone_referee(le, kb, ka) == Player::Bob);
}

TEST_CASE("chain rule predicate on hand-built profiles") {
    TwoProfilePredicate chain = TwoProfilePredicate::from_json(json{
        {"name", "chain_rule"},
        {"domain", {"00", "0", "1"}},
        {"params",
         {{"c", 1},
          {"kmax", 3},
          {"lmax", 3},
          {"entries", json::array({json{{"pair", "00"}, {"x", "0"}, {"cond", "1"}, {"n", 4}}})}}}});
    ComplexityProfile ka, kb;
    kb.set("00", 2); // the pair is cheap for bob
    ka.set("0", 1);  // and alice priced x below every k + c*bits(4)
    ka.set("1", 5);
    CHECK(monotone_referee(chain, ka, kb) == Player::Alice);

    ComplexityProfile expensive;
    expensive.set("0", 9);
    expensive.set("1", 9);
    CHECK(monotone_referee(chain, expensive, kb) == Player::Bob);
}

TEST_CASE("a non-monotone predicate is rejected by the spot check") {
    TwoProfilePredicate evil = TwoProfilePredicate::from_json(
        json{{"name", "kb_even_at"}, {"domain", {"0"}}, {"params", {{"x", "0"}}}});
    ComplexityProfile ka, kb;
    kb.set("0", 2);
    CHECK_THROWS_AS(monotone_referee(evil, ka, kb), MonotonicityViolationError);
}

TEST_CASE("lemma simulation against the identity table") {
    PropertyAlpha alpha = PropertyAlpha::from_json(
        json{{"name", "all_finite"}, {"domain", {"0", "1", "01"}}});
    const auto table = identity_table(4);

    SUBCASE("passive alice leaves kmin equal to kb") {
        kcgtest::Scripted alice(std::vector<json>{});
        auto report = lemma_simulation(alice, table, alpha, HorizonPolicy{}, 0);
        for (const auto &[x, v] : report.kb.finite()) {
            CHECK(report.kmin.get(x) == Value{v});
        }
        for (const auto &[x, d] : report.delta) CHECK(d == Value{0});
        CHECK(report.alpha_verdict);
    }

    SUBCASE("copying with prefixed programs never lowers kmin below kb") {
        ComplexityParams params;
        params.alpha = alpha;
        ComplexitySchema schema(params);
        auto alice = complexity::make_strategy(schema, Player::Alice, "copy_prefix", {}, 0);
        auto report = lemma_simulation(*alice, table, alpha, HorizonPolicy{}, 0);
        for (const auto &[x, v] : report.kb.finite()) CHECK(report.kmin.get(x) == Value{v});
    }

    SUBCASE("random assigners keep delta nonnegative") {
        ComplexityParams params;
        params.alpha = alpha;
        ComplexitySchema schema(params);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            auto alice = complexity::make_strategy(schema, Player::Alice, "random_assign",
                                                   json{{"active_rounds", 16}}, seed);
            auto report = lemma_simulation(*alice, table, alpha, HorizonPolicy{}, seed);
            for (const auto &[x, kb_v] : report.kb.finite()) {
                Value kmin_v = report.kmin.get(x);
                REQUIRE(kmin_v.has_value());
                CHECK(*kmin_v <= kb_v);
            }
        }
    }
}

TEST_CASE("levin counting convention") {
    LevinProfile profile;

    SUBCASE("two strings at value zero violate n = 1") {
        auto res = levin_move_check(profile, {{"0", 0}, {"1", 0}});
        CHECK_FALSE(res.accepted);
        CHECK(res.violated_n == std::uint64_t{1});
    }

    SUBCASE("eight strings at value three are fine") {
        std::vector<std::pair<std::string, std::uint64_t>> batch;
        for (const auto &x : shortlex_strings(3)) {
            if (x.size() == 3) batch.emplace_back(x, 3);
        }
        REQUIRE(batch.size() == 8);
        CHECK(levin_move_check(profile, batch).accepted);
    }

    SUBCASE("values may only decrease") {
        profile.apply({{"0", 4}});
        CHECK_FALSE(levin_move_check(profile, {{"0", 4}}).accepted);
        CHECK_FALSE(levin_move_check(profile, {{"0", 6}}).accepted);
        CHECK(levin_move_check(profile, {{"0", 3}}).accepted);
    }

    SUBCASE("counting holds after every accepted random move") {
        SplitMix64 rng(31);
        const auto pool = shortlex_strings(5);
        for (int moves = 0; moves < 300; ++moves) {
            const std::string &x = pool[rng.below(pool.size())];
            Value cur = profile.get(x);
            std::uint64_t v = cur ? (*cur > 0 ? rng.below(*cur) : 0) : 1 + rng.below(12);
            auto res = profile.check({{x, v}});
            if (!res.accepted) continue;
            profile.apply({{x, v}});
            // recount from scratch for every n up to max value + 1
            std::uint64_t max_v = 0;
            for (const auto &[s, val] : profile.assigned()) max_v = std::max(max_v, val);
            for (std::uint64_t n = 1; n <= max_v + 1; ++n) {
                std::uint64_t count = 0;
                for (const auto &[s, val] : profile.assigned())
                    if (val < n) ++count;
                CHECK(count <= (n - 1 >= 63 ? ~0ull : (1ull << (n - 1))));
            }
        }
    }
}

TEST_CASE("levin mode matches run and validate") {
    auto result = kcgtest::run_config({{"game", "complexity"},
                                       {"mode", "levin"},
                                       {"alice", "levin_random"},
                                       {"bob", "levin_random"},
                                       {"alpha", "all_finite"},
                                       {"alpha_domain", "0,1"},
                                       {"seed", "8"}});
    CHECK(validate_trace(result.trace).ok);
}

TEST_CASE("shortlex order and identity table") {
    const auto strings = shortlex_strings(2);
    CHECK(strings == std::vector<std::string>{"", "0", "1", "00", "01", "10", "11"});
    const auto table = identity_table(2);
    CHECK(table.size() == 7);
    CHECK(complexity_of(table, "01") == Value{2});
}
