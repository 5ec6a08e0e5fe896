#include <doctest.h>

#include "papp/errors.hpp"
#include "papp/instances.hpp"
#include "papp/model.hpp"
#include "papp/rng.hpp"
#include "support.hpp"

using namespace papp;

namespace {

const char* kExample1File =
    "parties: p0 p1 p2 p3\n"
    "k: 6\n"
    "2 : p0\n"
    "2 : p0,p1,p2\n"
    "1 : p1,p3\n"
    "1 : p2,p3\n";

} // namespace

TEST_SUITE_BEGIN("model");

TEST_CASE("quota matches the worked values") {
    CHECK(quota(2, 6, 6) == 2);
    CHECK(quota(0, 10, 5) == 0);
    CHECK(quota(14, 16, 16) == 14);
}

TEST_CASE("quota is monotone and exhausts at the full electorate") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        long long n = rng.range(1, 40);
        long long k = rng.range(1, 20);
        long long s = rng.range(0, static_cast<int>(n));
        if (s < n) CHECK(quota(s, n, k) <= quota(s + 1, n, k));
        CHECK(quota(s, n, k) <= quota(s, n, k + 1));
        CHECK(quota(n, n, k) == k);
    }
}

TEST_CASE("utility on the worked committees") {
    Election ex1 = parse_election(kExample1File);
    Committee w1(std::vector<int>{4, 1, 1, 0});
    CHECK(utility(ex1, 2, w1) == 1); // the {p1,p3} ballot class
    CHECK(utility(ex1, 3, w1) == 1);
    CHECK(utility(ex1, 0, Committee::zero(4)) == 0);

    Election ex3 = worked_example("ex3").election;
    Committee w3(std::vector<int>{8, 0, 4, 0, 4});
    CHECK(utility(ex3, 1, w3) == 4); // a {p1,p2} voter: 0 + 4

    CHECK_THROWS_AS(utility(ex1, 99, w1), StructuralError);
    CHECK_THROWS_AS(utility(ex1, 0, Committee::zero(3)), StructuralError);
}

TEST_CASE("utility is linear in seat vectors") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        Election e = random_election(1000 + trial, rng.range(1, 12), rng.range(1, 6),
                                     rng.range(1, 5), BallotModel::uniform, 0.5);
        Committee a = testutil::random_committee(rng, e.num_parties(), e.k);
        Committee b = testutil::random_committee(rng, e.num_parties(), e.k);
        Committee sum = a;
        for (int p = 0; p < e.num_parties(); ++p) sum.seats[p] += b.seats[p];
        for (size_t c = 0; c < e.ballots.size(); ++c) {
            int idx = static_cast<int>(c);
            CHECK(utility(e, idx, sum) == utility(e, idx, a) + utility(e, idx, b));
        }
    }
}

TEST_CASE("parse_election reads the worked example") {
    Election e = parse_election(kExample1File);
    CHECK(e.num_voters() == 6);
    CHECK(e.num_parties() == 4);
    CHECK(e.k == 6);
    CHECK(e.ballots.size() == 4);
    CHECK(e.ballots[1].parties == std::vector<int>{0, 1, 2});
}

TEST_CASE("parse_election accepts a minimal file and comments") {
    Election e = parse_election("# one party\nparties: A\nk: 3\n1 : A # sole ballot\n");
    CHECK(e.num_voters() == 1);
    CHECK(e.k == 3);
}

TEST_CASE("parse_election rejects malformed input") {
    CHECK_THROWS_AS(parse_election("parties: A B\nk: 2\n1 : C\n"), ParseError);
    CHECK_THROWS_AS(parse_election("parties: A B\nk: 2\n1 :\n"), ParseError);
    CHECK_THROWS_AS(parse_election("parties: A B\nk: 0\n1 : A\n"), ParseError);
    CHECK_THROWS_AS(parse_election("parties: A A\nk: 2\n1 : A\n"), ParseError);
    CHECK_THROWS_AS(parse_election("parties: A\nk: 2\n0 : A\n"), ParseError);
    CHECK_THROWS_AS(parse_election("parties: A\nk: 2\n"), ParseError);
    CHECK_THROWS_AS(parse_election("k: 2\nparties: A\n1 : A\n"), ParseError);
}

TEST_CASE("serialize then parse is the identity") {
    for (uint64_t seed = 1; seed <= 30; ++seed) {
        Election e = random_election(seed, 1 + seed % 17, 1 + seed % 7, 1 + seed % 5,
                                     seed % 2 ? BallotModel::uniform : BallotModel::clustered,
                                     0.45);
        Election back = parse_election(serialize_election(e));
        CHECK(back.parties == e.parties);
        CHECK(back.k == e.k);
        REQUIRE(back.ballots.size() == e.ballots.size());
        for (size_t c = 0; c < e.ballots.size(); ++c) {
            CHECK(back.ballots[c].parties == e.ballots[c].parties);
            CHECK(back.ballots[c].multiplicity == e.ballots[c].multiplicity);
        }
    }
}

TEST_CASE("the parser rejects noise without crashing") {
    Rng rng(101);
    const std::string alphabet = "parties:k 0123456789ABp,\n#:-";
    for (int trial = 0; trial < 400; ++trial) {
        std::string noise;
        int length = rng.range(0, 60);
        for (int i = 0; i < length; ++i)
            noise += alphabet[rng.range(0, static_cast<int>(alphabet.size()) - 1)];
        try {
            Election e = parse_election(noise);
            e.validate(); // rare accidental valid file is fine
        } catch (const ParseError&) {
        }
    }
    CHECK(true); // reaching here means no crash or foreign exception
}

TEST_CASE("committee text form round-trips") {
    Election e = parse_election(kExample1File);
    Committee w(std::vector<int>{4, 1, 1, 0});
    CHECK(format_committee(e, w) == "p0=4 p1=1 p2=1");
    CHECK(parse_committee(e, "p0=4,p1=1,p2=1") == w);
    CHECK(parse_committee(e, "p0=4 p1=1 p2=1") == w);
    CHECK_THROWS_AS(parse_committee(e, "p0=4"), StructuralError);   // wrong total
    CHECK_THROWS_AS(parse_committee(e, "zz=6"), ParseError);        // unknown party
}

TEST_CASE("portioning constructors enforce the share invariants") {
    CHECK_THROWS_AS(Portioning::make_exact({Rat(1, 2), Rat(1, 3)}), StructuralError);
    CHECK_THROWS_AS(Portioning::make_approx({0.5, 0.6}), StructuralError);
    Portioning ok = Portioning::make_exact({Rat(1, 2), Rat(1, 2)});
    CHECK(ok.is_exact());
    CHECK(format_portioning(parse_election("parties: A B\nk: 1\n1 : A\n"), ok) ==
          "A=1/2 B=1/2");
}

TEST_SUITE_END();
