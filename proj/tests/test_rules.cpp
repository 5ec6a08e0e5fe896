#include <doctest.h>

#include "papp/axioms.hpp"
#include "papp/errors.hpp"
#include "papp/instances.hpp"
#include "papp/rules.hpp"
#include "support.hpp"

using namespace papp;

namespace {

Election tiny(const std::string& text) { return parse_election(text); }

} // namespace

TEST_SUITE_BEGIN("rules");

TEST_CASE("pav prefers the balanced committee on a split electorate") {
    Election e = tiny("parties: A B\nk: 2\n1 : A\n1 : B\n");
    CHECK(pav_score(e, Committee({1, 1})) == Rat(2));
    CHECK(pav_score(e, Committee({2, 0})) == Rat(3, 2));
    CHECK(pav_exact(e) == Committee({1, 1}));

    Election solo = tiny("parties: A\nk: 5\n2 : A\n");
    CHECK(pav_exact(solo) == Committee({5}));
}

TEST_CASE("pav enforces the enumeration cap") {
    Election e = worked_example("ex3").election;
    ExactSearchOptions options;
    options.cap = 10;
    CHECK_THROWS_AS(pav_exact(e, options), CapacityError);
}

TEST_CASE("seqpav walks the documented greedy trace") {
    Election e = worked_example("seqpav-jr").election;
    Committee w = seq_pav(e);
    std::vector<int> expected(11, 1);
    expected[10] = 0;
    CHECK(w.seats == expected);

    Election solo = tiny("parties: A\nk: 4\n1 : A\n");
    CHECK(seq_pav(solo) == Committee({4}));
}

TEST_CASE("revseqpav trims the full clone set") {
    Election e = tiny("parties: A B\nk: 2\n1 : A\n1 : B\n");
    CHECK(rev_seq_pav(e) == Committee({1, 1}));
    Election solo = tiny("parties: A\nk: 3\n1 : A\n");
    CHECK(rev_seq_pav(solo) == Committee({3}));
}

TEST_CASE("lspav is core-stable on the worked instance and EJR-clean on the other") {
    Election ex3 = worked_example("ex3").election;
    CHECK(check_core_bruteforce(ex3, ls_pav(ex3)).pass);

    Election ex1 = worked_example("ex1").election;
    CHECK(check_ejr(ex1, ls_pav(ex1)).pass);

    Election solo = tiny("parties: A\nk: 4\n1 : A\n");
    CHECK(ls_pav(solo) == Committee({4}));
}

TEST_CASE("lspav never scores below seqpav and never above pav") {
    for (uint64_t seed = 1; seed <= 40; ++seed) {
        Election e = random_election(seed, 2 + seed % 7, 2 + seed % 4, 2 + seed % 3,
                                     BallotModel::uniform, 0.45);
        Rat seq = pav_score(e, seq_pav(e));
        Rat ls = pav_score(e, ls_pav(e));
        Rat best = pav_score(e, pav_exact(e));
        CHECK(seq <= ls);
        CHECK(ls <= best);
    }
}

TEST_CASE("av and sav hand every seat to the top-scoring party") {
    Election avjr = worked_example("av-jr").election;
    CHECK(av(avjr) == Committee({3, 0}));
    CHECK(sav(avjr) == Committee({3, 0}));
    CHECK(av(tiny("parties: A B\nk: 2\n1 : A\n")) == Committee({2, 0}));
    // s(A) = 2 + 2/2 = 3 beats s(B) = 2/2 + 1 = 2
    CHECK(sav(tiny("parties: A B\nk: 2\n2 : A\n2 : A,B\n1 : B\n")) == Committee({2, 0}));
}

TEST_CASE("mav minimizes the maximal Hamming distance") {
    Election mavjr = worked_example("mav-jr").election;
    CHECK(mav_exact(mavjr) == Committee({3, 0, 0, 0}));
    CHECK(mav_exact(tiny("parties: A\nk: 3\n2 : A\n")) == Committee({3}));
    CHECK(mav_exact(tiny("parties: A B\nk: 2\n1 : A\n1 : B\n")) == Committee({1, 1}));
}

TEST_CASE("seqphragmen reproduces the bid table on the restricted profile") {
    Election e = worked_example("seqphragmen-ejr-restricted").election;
    auto steps = seq_phragmen_steps(e);
    REQUIRE(steps.size() == 5);
    CHECK(steps[0].party == 0);
    CHECK(steps[0].bid == Rat(1, 8));
    CHECK(steps[1].party == 1);
    CHECK(steps[1].bid == Rat(15, 64));
    CHECK(steps[2].party == 2);
    CHECK(steps[2].bid == Rat(169, 512));
    CHECK(steps[3].party == 3);
    CHECK(steps[3].bid == Rat(1695, 4096));
    CHECK(steps[4].party == 0);
    CHECK(steps[4].bid == Rat(16473, 32768));
}

TEST_CASE("seqphragmen loads grow harmonically on unanimous profiles") {
    Election e = tiny("parties: A\nk: 3\n4 : A\n");
    auto steps = seq_phragmen_steps(e);
    REQUIRE(steps.size() == 3);
    CHECK(steps[0].bid == Rat(1, 4));
    CHECK(steps[1].bid == Rat(2, 4));
    CHECK(steps[2].bid == Rat(3, 4));
    CHECK(seq_phragmen(e) == Committee({3}));
}

TEST_CASE("phragmen-stv reproduces the score table on the restricted profile") {
    Election e = worked_example("stv-ejr-restricted").election;
    auto steps = phragmen_stv_steps(e);
    REQUIRE(steps.size() == 7);
    const int winners[] = {1, 5, 2, 4, 6, 3, 0};
    const char* scores[] = {"242.00", "241.00", "190.00", "134.92",
                            "125.11", "121.86", "103.26"};
    for (int i = 0; i < 7; ++i) {
        CHECK(steps[i].party == winners[i]);
        char buffer[32];
        std::snprintf(buffer, sizeof buffer, "%.2f", to_double(steps[i].score));
        CHECK(std::string(buffer) == scores[i]);
    }
    CHECK(phragmen_stv(tiny("parties: A\nk: 3\n2 : A\n")) == Committee({3}));
}

TEST_CASE("greedyav covers blocs then fills canonically") {
    Election e = worked_example("greedyav-pjr").election;
    CHECK(greedy_av(e) == Committee({1, 1, 1, 0}));
    CHECK(greedy_av(tiny("parties: A B\nk: 3\n2 : A\n")) == Committee({3, 0}));
}

TEST_CASE("hareav removes only a hare quota of ballots per seat") {
    Election e = worked_example("monroe-pjr").election;
    CHECK(hare_av(e) == Committee({3, 1, 1, 1}));
}

TEST_CASE("hareav deactivates the lowest voter indices first") {
    // Removal order is observable: deactivating the {A,B} voter in round one
    // leaves B with a single supporter, so A's clone wins the tie in round
    // two. Removing high indices first would elect B instead.
    Election e = tiny("parties: A B\nk: 2\n1 : A,B\n2 : A\n1 : B\n");
    CHECK(hare_av(e) == Committee({2, 0}));
}

TEST_CASE("ccav maximizes coverage and ties like the greedy rule") {
    Election e = worked_example("greedyav-pjr").election;
    Committee w = cc_av_exact(e);
    CHECK(w == greedy_av(e));
    long long covered = 0;
    for (size_t c = 0; c < e.ballots.size(); ++c)
        if (utility(e, static_cast<int>(c), w) > 0) covered += e.ballots[c].multiplicity;
    CHECK(covered == 3 * 3 - 1); // 3k - 1 beats any double-seat committee's 3k - 2
}

TEST_CASE("greedymonroe follows the round quotas") {
    Election e = worked_example("monroe-pjr").election;
    CHECK(greedy_monroe(e) == Committee({3, 1, 1, 1}));
}

TEST_CASE("monroe maximizes representable voters under seat quotas") {
    Election solo = tiny("parties: A\nk: 3\n5 : A\n");
    CHECK(monroe_exact(solo) == Committee({3}));
    CHECK(monroe_score(solo, Committee({3})) == 5);

    Election e = worked_example("monroe-pjr").election;
    Committee w = monroe_exact(e);
    CHECK(w == Committee({3, 1, 1, 1}));
    CHECK(monroe_score(e, w) == 9);
    CHECK(monroe_score(e, Committee({6, 0, 0, 0})) == 6);
}

TEST_CASE("monroe scoring respects the unfilled lower bounds") {
    // k = 3, n = 4: one seat may represent two voters, the others one each.
    // With (1,1,1) the C seat is forced onto a non-approving voter: score 3,
    // not the naive matching value 4.
    Election e = tiny("parties: A B C\nk: 3\n2 : A\n2 : B\n");
    CHECK(monroe_score(e, Committee({1, 1, 1})) == 3);
    CHECK(monroe_score(e, Committee({2, 1, 0})) == 4);
    CHECK(monroe_score(e, Committee({1, 2, 0})) == 4);
    CHECK(monroe_exact(e) == Committee({2, 1, 0})); // first optimum in canonical order
}

TEST_CASE("maxphragmen load values on the reduction instances") {
    Election pair = tiny("parties: A\nk: 2\n2 : A\n");
    CHECK(max_phragmen_load(pair, Committee({2})) == Rat(1));

    Graph k4;
    k4.vertices = 4;
    k4.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    Election one_seat = reduce_is_to_maxphragmen(k4, 1);
    Committee one = max_phragmen_bruteforce(one_seat);
    CHECK(max_phragmen_load(one_seat, one) == Rat(1, 3));

    Election two_seats = reduce_is_to_maxphragmen(k4, 2);
    Committee two = max_phragmen_bruteforce(two_seats);
    CHECK(max_phragmen_load(two_seats, two) > Rat(1, 3)); // K4 has no 2-independent set

    Graph square;
    square.vertices = 4;
    square.edges = {{0, 1}, {0, 3}, {1, 2}, {2, 3}};
    Election ring = reduce_is_to_maxphragmen(square, 2, /*require_cubic=*/false);
    Committee best = max_phragmen_bruteforce(ring);
    CHECK(max_phragmen_load(ring, best) <= Rat(1, 2));
}

TEST_CASE("exact rules match exhaustive candidate-subset search in the embedding") {
    using papp::CandidateCommittee;
    using papp::CandidateElection;
    auto pav_eval = [](const CandidateElection& ce, const CandidateCommittee& w) {
        auto h = harmonic_numbers(static_cast<int>(w.size()));
        Rat score = 0;
        for (size_t c = 0; c < ce.ballots.size(); ++c)
            score += Rat(ce.ballots[c].multiplicity) *
                     h[candidate_utility(ce, static_cast<int>(c), w)];
        return score;
    };
    auto mav_eval = [](const CandidateElection& ce, const CandidateCommittee& w) {
        long long worst = 0;
        for (size_t c = 0; c < ce.ballots.size(); ++c)
            worst = std::max(worst, candidate_hamming(ce, static_cast<int>(c), w));
        return worst;
    };
    auto cc_eval = [](const CandidateElection& ce, const CandidateCommittee& w) {
        long long covered = 0;
        for (size_t c = 0; c < ce.ballots.size(); ++c)
            if (candidate_utility(ce, static_cast<int>(c), w) > 0)
                covered += ce.ballots[c].multiplicity;
        return covered;
    };

    // A symmetric profile with genuine score ties pins the tie-break choice.
    Election tied = tiny("parties: A B C\nk: 2\n1 : A\n1 : B\n1 : C\n");
    CHECK(pav_exact(tied) == testutil::embedding_search_oracle<Rat>(tied, true, pav_eval));
    CHECK(mav_exact(tied) ==
          testutil::embedding_search_oracle<long long>(tied, false, mav_eval));
    CHECK(cc_av_exact(tied) ==
          testutil::embedding_search_oracle<long long>(tied, true, cc_eval));

    for (uint64_t seed = 1; seed <= 12; ++seed) {
        Election e = random_election(seed, 1 + seed % 7, 2 + seed % 3, 2 + seed % 2,
                                     BallotModel::uniform, 0.5);
        CHECK(pav_exact(e) == testutil::embedding_search_oracle<Rat>(e, true, pav_eval));
        CHECK(mav_exact(e) ==
              testutil::embedding_search_oracle<long long>(e, false, mav_eval));
        CHECK(cc_av_exact(e) ==
              testutil::embedding_search_oracle<long long>(e, true, cc_eval));
    }
}

TEST_CASE("direct party implementations match the embedding oracles") {
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        Election e = random_election(seed, 1 + seed % 9, 1 + seed % 5, 1 + seed % 4,
                                     seed % 2 ? BallotModel::uniform : BallotModel::clustered,
                                     0.5);
        CHECK(seq_pav(e) == testutil::seq_pav_embedding_oracle(e));

        std::vector<Rat> approval(e.num_parties(), Rat(0));
        std::vector<Rat> satisfaction(e.num_parties(), Rat(0));
        for (const auto& b : e.ballots)
            for (int p : b.parties) {
                approval[p] += Rat(b.multiplicity);
                satisfaction[p] += Rat(b.multiplicity, static_cast<long long>(b.parties.size()));
            }
        CHECK(av(e) == testutil::score_topk_embedding_oracle(e, approval));
        CHECK(sav(e) == testutil::score_topk_embedding_oracle(e, satisfaction));
    }
}

TEST_CASE("phragmen rules ignore voter labels and multiplicity encoding") {
    Election e = worked_example("stv-ejr-restricted").election;
    Election shuffled = e;
    std::swap(shuffled.ballots[0], shuffled.ballots[4]);
    std::swap(shuffled.ballots[2], shuffled.ballots[7]);
    CHECK(seq_phragmen(e) == seq_phragmen(shuffled));
    CHECK(phragmen_stv(e) == phragmen_stv(shuffled));

    Election split = e;
    BallotClass half = split.ballots[0];
    half.multiplicity = 50;
    split.ballots[0].multiplicity -= 50;
    split.ballots.push_back(half);
    CHECK(seq_phragmen(e) == seq_phragmen(split));
    CHECK(phragmen_stv(e) == phragmen_stv(split));
}

TEST_CASE("every registered rule returns a committee of size k") {
    RuleOptions options;
    options.rp_trials = 500; // electorates here can exceed the exact-mode bound
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        Election e = random_election(seed, 2 + seed * 2, 2 + seed % 4, 1 + seed % 4,
                                     BallotModel::uniform, 0.5);
        for (const std::string& name : rule_names()) {
            Committee w = make_rule(name, options)(e);
            CHECK(w.total() == e.k);
        }
    }
}

TEST_CASE("unknown rule names are rejected") {
    CHECK_THROWS_AS(make_rule("borda"), StructuralError);
    CHECK_THROWS_AS(make_rule("cu+hamilton"), StructuralError);
}

TEST_SUITE_END();
