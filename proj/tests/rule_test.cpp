#include "doctest.h"
#include "oracles.hpp"

#include "ren/errors.hpp"
#include "ren/rule.hpp"

#include <set>

using namespace ren;

TEST_SUITE("rule") {

TEST_CASE("eca codes parse and bounds are enforced") {
    const EcaRule r = parse_eca_code("#110");
    CHECK(r.number() == 110);
    CHECK(r.apply(1, 1, 0) == 1);
    CHECK(r.apply(1, 1, 1) == 0);
    CHECK(parse_eca_code("110") == r);
    for (int k = 0; k < 8; ++k) CHECK(parse_eca_code("#0").apply(k >> 2, (k >> 1) & 1, k & 1) == 0);
    CHECK_THROWS_AS(parse_eca_code("#256"), range_error);
    CHECK_THROWS_AS(parse_eca_code("#-3"), range_error);
    CHECK_THROWS_AS(parse_eca_code("#1x"), parse_error);
    CHECK_THROWS_AS(parse_eca_code(""), parse_error);
}

TEST_CASE("eca_apply follows the Wolfram bit convention") {
    CHECK(eca_apply(EcaRule(110), 0, 0, 1) == 1);
    CHECK(eca_apply(EcaRule(30), 1, 0, 0) == 1);
    for (int n = 0; n < 256; ++n)
        for (int k = 0; k < 8; ++k) {
            const int l = k >> 2, c = (k >> 1) & 1, r = k & 1;
            REQUIRE(eca_apply(EcaRule(n), l, c, r) == oracle::eca(n, l, c, r));
        }
    for (int k = 0; k < 8; ++k) {
        const int l = k >> 2, c = (k >> 1) & 1, r = k & 1;
        CHECK(eca_apply(EcaRule(204), l, c, r) == c);
        CHECK(eca_apply(EcaRule(30), l, c, r) == (l ^ (c | r)));
    }
}

TEST_CASE("word-parallel application matches the scalar rule") {
    std::mt19937_64 rng(5);
    for (int n = 0; n < 256; ++n) {
        const std::uint64_t L = rng(), C = rng(), R = rng();
        const std::uint64_t out = eca_apply_words(EcaRule(n), L, C, R);
        for (int b = 0; b < 64; ++b)
            REQUIRE(static_cast<int>((out >> b) & 1) ==
                    oracle::eca(n, (L >> b) & 1, (C >> b) & 1, (R >> b) & 1));
    }
}

TEST_CASE("table round trip") {
    for (int n = 0; n < 256; ++n) CHECK(EcaRule::from_table(EcaRule(n).table()) == EcaRule(n));
}

TEST_CASE("transforms agree with brute force") {
    CHECK(oracle::mirror(110) == 124);
    CHECK(oracle::complement(110) == 137);
    CHECK(transform_eca(EcaRule(110), EcaTransform::mirror).number() == oracle::mirror(110));
    CHECK(transform_eca(EcaRule(110), EcaTransform::complement).number() == oracle::complement(110));
    for (int n = 0; n < 256; ++n) {
        const EcaRule r(n);
        CHECK(transform_eca(transform_eca(r, EcaTransform::mirror), EcaTransform::mirror) == r);
        CHECK(transform_eca(r, EcaTransform::mirror).number() == oracle::mirror(n));
        CHECK(transform_eca(r, EcaTransform::complement).number() == oracle::complement(n));
        CHECK(transform_eca(r, EcaTransform::mirror_complement).number() == oracle::mirror(oracle::complement(n)));
    }
}

TEST_CASE("equivalence classes partition the rule space") {
    const auto classes = eca_equivalence_classes();
    CHECK(classes.size() == 88);
    std::set<int> seen;
    for (const auto& c : classes) {
        CHECK(c.representative == c.members.front());
        for (int m : c.members) {
            CHECK(seen.insert(m).second);
            // Closed under both generators.
            CHECK(std::count(c.members.begin(), c.members.end(), oracle::mirror(m)) == 1);
            CHECK(std::count(c.members.begin(), c.members.end(), oracle::complement(m)) == 1);
        }
    }
    CHECK(seen.size() == 256);
    CHECK(classes.front().members == std::vector<int>{0, 255});
}

TEST_CASE("life codes") {
    const LifeRule life = parse_life_code("B3S23");
    CHECK(life.birth_mask() == (1 << 3));
    CHECK(life.survival_mask() == ((1 << 2) | (1 << 3)));
    const LifeRule r = parse_life_code("B23/S234");
    CHECK(r.birth_mask() == ((1 << 2) | (1 << 3)));
    CHECK(r.survival_mask() == ((1 << 2) | (1 << 3) | (1 << 4)));
    CHECK(parse_life_code("b3s23") == life);
    CHECK_THROWS_AS(parse_life_code("B3S29"), parse_error);
    CHECK_THROWS_AS(parse_life_code("B3"), parse_error);
    CHECK_THROWS_AS(parse_life_code("S23"), parse_error);
    CHECK_THROWS_AS(parse_life_code("B3S23x"), parse_error);
    CHECK(life.code() == "B3S23");
    CHECK(life.code(true) == "B3/S23");
    for (const char* text : {"B3S23", "B36/S23", "B4S1234", "B/S", "B012345678S"}) {
        const LifeRule once = parse_life_code(text);
        CHECK(parse_life_code(once.code()) == once);
        CHECK(parse_life_code(once.code(true)) == once);
    }
}

TEST_CASE("life_apply") {
    const LifeRule life = parse_life_code("B3S23");
    CHECK(life_apply(life, 0, 3) == 1);
    CHECK(life_apply(life, 1, 4) == 0);
    CHECK(life_apply(parse_life_code("B4S1234"), 1, 1) == 1);
    CHECK_THROWS_AS(life_apply(life, 0, 9), contract_violation);
    CHECK_THROWS_AS(life_apply(life, 0, -1), contract_violation);
}

TEST_CASE("extended and sequence codes") {
    const ExtendedRule a = parse_extended_code("#110R1");
    CHECK(a.is_eca());
    CHECK(a.eca() == EcaRule(110));
    CHECK(a.radius == 1);
    CHECK(parse_extended_code("#110").radius == 1);
    const ExtendedRule b = parse_extended_code("B3S23R6");
    CHECK(b.life() == parse_life_code("B3S23"));
    CHECK(b.radius == 6);
    CHECK(b.code() == "B3S23R6");
    CHECK(parse_extended_code("#110r2").code() == "#110R2");
    CHECK_THROWS_AS(parse_extended_code("#110R0"), range_error);
    CHECK_THROWS_AS(parse_extended_code("#110R"), parse_error);
    CHECK_THROWS_AS(parse_extended_code("X3S23R2"), parse_error);

    const SequenceCode s = parse_sequence_code("[#134]");
    CHECK(std::get<EcaRule>(s.base) == EcaRule(134));
    CHECK(s.first == 1);
    CHECK(s.last == 20);
    const auto members = s.expand();
    REQUIRE(members.size() == 20);
    CHECK(members[0].code() == "#134R1");
    CHECK(members[19].code() == "#134R20");
    CHECK(parse_sequence_code("[B23S234]").code() == "[B23S234]");
    CHECK_THROWS_AS(parse_sequence_code("#134"), parse_error);
    CHECK_THROWS_AS(parse_sequence_code("[#134"), parse_error);
}

}
