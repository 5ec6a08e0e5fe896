#include "papp/axioms.hpp"

#include <algorithm>

#include "papp/errors.hpp"
#include "papp/maxflow.hpp"

namespace papp {

std::string axiom_name(Axiom axiom) {
    switch (axiom) {
        case Axiom::jr: return "jr";
        case Axiom::pjr: return "pjr";
        case Axiom::ejr: return "ejr";
        case Axiom::core: return "core";
        case Axiom::pr: return "pr";
        case Axiom::monotone: return "monotone";
    }
    throw StructuralError("unknown axiom tag");
}

Axiom axiom_from_name(const std::string& name) {
    if (name == "jr") return Axiom::jr;
    if (name == "pjr") return Axiom::pjr;
    if (name == "ejr") return Axiom::ejr;
    if (name == "core") return Axiom::core;
    if (name == "pr") return Axiom::pr;
    if (name == "monotone") return Axiom::monotone;
    throw StructuralError("unknown axiom: " + name);
}

long long coalition_size(const Witness& witness) {
    long long size = 0;
    for (const auto& entry : witness.coalition) size += entry.count;
    return size;
}

namespace {

void require_match(const Election& e, const Committee& w, const char* who) {
    e.validate();
    if (static_cast<int>(w.seats.size()) != e.num_parties() || w.total() != e.k)
        throw StructuralError(std::string(who) + ": committee does not fit the election");
}

} // namespace

AxiomVerdict check_jr(const Election& e, const Committee& w) {
    require_match(e, w, "check_jr");
    const long long n = e.num_voters();
    const auto utils = [&] {
        std::vector<long long> u(e.ballots.size());
        for (size_t c = 0; c < e.ballots.size(); ++c) u[c] = class_utility(e.ballots[c], w);
        return u;
    }();
    for (int p = 0; p < e.num_parties(); ++p) {
        Witness witness;
        witness.party = p;
        witness.level = 1;
        long long unrepresented = 0;
        for (size_t c = 0; c < e.ballots.size(); ++c)
            if (e.ballots[c].approves(p) && utils[c] == 0) {
                unrepresented += e.ballots[c].multiplicity;
                witness.coalition.push_back({static_cast<int>(c), e.ballots[c].multiplicity});
            }
        if (unrepresented * e.k >= n) // |S| >= n/k, compared exactly
            return {Axiom::jr, false, std::move(witness)};
    }
    return {Axiom::jr, true, std::nullopt};
}

AxiomVerdict check_ejr(const Election& e, const Committee& w) {
    require_match(e, w, "check_ejr");
    const long long n = e.num_voters();
    std::vector<long long> utils(e.ballots.size());
    for (size_t c = 0; c < e.ballots.size(); ++c) utils[c] = class_utility(e.ballots[c], w);
    for (int p = 0; p < e.num_parties(); ++p) {
        for (long long level = 1; level <= e.k; ++level) {
            long long deprived = 0;
            for (size_t c = 0; c < e.ballots.size(); ++c)
                if (e.ballots[c].approves(p) && utils[c] < level)
                    deprived += e.ballots[c].multiplicity;
            if (deprived * e.k >= level * n) { // |S| >= l*n/k
                Witness witness;
                witness.party = p;
                witness.level = level;
                for (size_t c = 0; c < e.ballots.size(); ++c)
                    if (e.ballots[c].approves(p) && utils[c] < level)
                        witness.coalition.push_back(
                            {static_cast<int>(c), e.ballots[c].multiplicity});
                return {Axiom::ejr, false, std::move(witness)};
            }
        }
    }
    return {Axiom::ejr, true, std::nullopt};
}

AxiomVerdict check_pjr_mincut(const Election& e, const Committee& w) {
    require_match(e, w, "check_pjr_mincut");
    const long long n = e.num_voters();
    for (int p = 0; p < e.num_parties(); ++p) {
        std::vector<int> members; // ballot classes approving p
        for (size_t c = 0; c < e.ballots.size(); ++c)
            if (e.ballots[c].approves(p)) members.push_back(static_cast<int>(c));
        if (members.empty()) continue;

        // Project selection: choosing a class yields k per voter, buying a
        // seated approved party costs n*W(q); the optimum is
        // max_{S <= N_p} (k|S| - n*s(S)), a PJR violation iff >= n.
        const int classes = static_cast<int>(members.size());
        const int source = 0, sink = classes + e.num_parties() + 1;
        MaxFlow flow(sink + 1);
        long long total_profit = 0;
        for (int m = 0; m < classes; ++m) {
            const BallotClass& b = e.ballots[members[m]];
            long long profit = static_cast<long long>(e.k) * b.multiplicity;
            total_profit += profit;
            flow.add_edge(source, 1 + m, profit);
            for (int q : b.parties)
                if (w.seats[q] > 0) flow.add_edge(1 + m, 1 + classes + q, MaxFlow::kInf);
        }
        for (int q = 0; q < e.num_parties(); ++q)
            if (w.seats[q] > 0) flow.add_edge(1 + classes + q, sink, n * w.seats[q]);
        long long best_gain = total_profit - flow.max_flow(source, sink);
        if (best_gain >= n) {
            auto side = flow.source_side(source);
            Witness witness;
            witness.party = p;
            long long coalition = 0;
            for (int m = 0; m < classes; ++m)
                if (side[1 + m]) {
                    witness.coalition.push_back({members[m], e.ballots[members[m]].multiplicity});
                    coalition += e.ballots[members[m]].multiplicity;
                }
            witness.level = quota(coalition, n, e.k);
            return {Axiom::pjr, false, std::move(witness)};
        }
    }
    return {Axiom::pjr, true, std::nullopt};
}

AxiomVerdict check_pjr_bruteforce(const Election& e, const Committee& w) {
    require_match(e, w, "check_pjr_bruteforce");
    const long long n = e.num_voters();
    if (n > 14) throw CapacityError("check_pjr_bruteforce: requires n <= 14", "check_pjr_mincut");
    if (e.num_parties() > 64)
        throw CapacityError("check_pjr_bruteforce: requires at most 64 parties", "");

    std::vector<uint64_t> voter_mask; // approval set per expanded voter
    std::vector<int> voter_ballot;
    for (size_t c = 0; c < e.ballots.size(); ++c) {
        uint64_t mask = 0;
        for (int p : e.ballots[c].parties) mask |= uint64_t(1) << p;
        for (long long i = 0; i < e.ballots[c].multiplicity; ++i) {
            voter_mask.push_back(mask);
            voter_ballot.push_back(static_cast<int>(c));
        }
    }
    for (int p = 0; p < e.num_parties(); ++p) {
        std::vector<int> members;
        for (size_t v = 0; v < voter_mask.size(); ++v)
            if (voter_mask[v] & (uint64_t(1) << p)) members.push_back(static_cast<int>(v));
        const size_t subsets = size_t(1) << members.size();
        for (size_t set = 1; set < subsets; ++set) {
            uint64_t joint = 0;
            long long size = 0;
            for (size_t m = 0; m < members.size(); ++m)
                if (set & (size_t(1) << m)) {
                    joint |= voter_mask[members[m]];
                    ++size;
                }
            long long seats = 0;
            for (uint64_t bits = joint; bits; bits &= bits - 1)
                seats += w.seats[__builtin_ctzll(bits)];
            if (seats < quota(size, n, e.k)) {
                Witness witness;
                witness.party = p;
                witness.level = quota(size, n, e.k);
                std::vector<long long> per_class(e.ballots.size(), 0);
                for (size_t m = 0; m < members.size(); ++m)
                    if (set & (size_t(1) << m)) ++per_class[voter_ballot[members[m]]];
                for (size_t c = 0; c < per_class.size(); ++c)
                    if (per_class[c] > 0)
                        witness.coalition.push_back({static_cast<int>(c), per_class[c]});
                return {Axiom::pjr, false, std::move(witness)};
            }
        }
    }
    return {Axiom::pjr, true, std::nullopt};
}

AxiomVerdict check_core_bruteforce(const Election& e, const Committee& w,
                                   const ExactSearchOptions& options) {
    require_match(e, w, "check_core_bruteforce");
    const long long n = e.num_voters();
    std::vector<long long> current(e.ballots.size());
    for (size_t c = 0; c < e.ballots.size(); ++c) current[c] = class_utility(e.ballots[c], w);

    // Only parties somebody approves can raise a deviator's utility.
    std::vector<int> approved;
    const auto counts = e.approval_counts();
    for (int p = 0; p < e.num_parties(); ++p)
        if (counts[p] > 0) approved.push_back(p);

    unsigned long long total = 0;
    for (int size = 1; size <= e.k; ++size) {
        total += committee_count(static_cast<int>(approved.size()), size, options.cap);
        if (total > options.cap)
            throw CapacityError("check_core_bruteforce: deviation space exceeds cap", "");
    }

    std::vector<int> deviation(e.num_parties(), 0);
    std::vector<long long> utility_now(e.ballots.size(), 0);
    AxiomVerdict verdict{Axiom::core, true, std::nullopt};

    // Depth-first over deviations T in canonical order; S(T) = strict gainers.
    auto search = [&](auto&& self, int depth, int remaining) -> bool {
        if (depth == static_cast<int>(approved.size()) || remaining == 0) {
            if (remaining != 0) return false;
            long long gainers = 0;
            for (size_t c = 0; c < e.ballots.size(); ++c)
                if (utility_now[c] > current[c]) gainers += e.ballots[c].multiplicity;
            if (gainers == 0) return false;
            long long size = 0;
            for (int p : approved) size += deviation[p];
            if (size > quota(gainers, n, e.k)) return false;
            Witness witness;
            witness.level = size;
            witness.deviation = Committee(deviation);
            for (size_t c = 0; c < e.ballots.size(); ++c)
                if (utility_now[c] > current[c])
                    witness.coalition.push_back({static_cast<int>(c), e.ballots[c].multiplicity});
            verdict = {Axiom::core, false, std::move(witness)};
            return true;
        }
        const int party = approved[depth];
        for (int m = remaining; m >= 0; --m) {
            deviation[party] = m;
            if (m != 0)
                for (size_t c = 0; c < e.ballots.size(); ++c)
                    if (e.ballots[c].approves(party)) utility_now[c] += m;
            bool done = self(self, depth + 1, remaining - m);
            if (m != 0)
                for (size_t c = 0; c < e.ballots.size(); ++c)
                    if (e.ballots[c].approves(party)) utility_now[c] -= m;
            deviation[party] = 0;
            if (done) return true;
        }
        return false;
    };

    for (int size = 1; size <= e.k && verdict.pass; ++size) search(search, 0, size);
    return verdict;
}

AxiomVerdict check_pr(const Election& e, const Committee& w) {
    require_match(e, w, "check_pr");
    const long long n = e.num_voters();
    if (n % e.k != 0)
        throw DomainError("check_pr: perfect representation is defined only when k divides n");
    const long long group = n / e.k;

    const int classes = static_cast<int>(e.ballots.size());
    const int source = 0, sink = classes + e.num_parties() + 1;
    MaxFlow flow(sink + 1);
    for (int c = 0; c < classes; ++c) {
        flow.add_edge(source, 1 + c, e.ballots[c].multiplicity);
        for (int p : e.ballots[c].parties)
            if (w.seats[p] > 0) flow.add_edge(1 + c, 1 + classes + p, e.ballots[c].multiplicity);
    }
    for (int p = 0; p < e.num_parties(); ++p)
        if (w.seats[p] > 0) flow.add_edge(1 + classes + p, sink, w.seats[p] * group);
    if (flow.max_flow(source, sink) == n) return {Axiom::pr, true, std::nullopt};

    // Witness: voters that cannot all be assigned (source side of the cut).
    auto side = flow.source_side(source);
    Witness witness;
    for (int c = 0; c < classes; ++c)
        if (side[1 + c]) witness.coalition.push_back({c, e.ballots[c].multiplicity});
    return {Axiom::pr, false, std::move(witness)};
}

AxiomVerdict check_committee_monotonic(const PartyRule& rule, const Election& e, int k_max) {
    e.validate();
    if (k_max < 1) throw StructuralError("check_committee_monotonic: k_max must be >= 1");
    Committee previous = rule(e.with_k(1));
    for (int k = 2; k <= k_max; ++k) {
        Committee current = rule(e.with_k(k));
        if (!previous.subset_of(current)) {
            Witness witness;
            witness.k_small = k - 1;
            witness.committee_small = std::move(previous);
            witness.committee_large = std::move(current);
            return {Axiom::monotone, false, std::move(witness)};
        }
        previous = std::move(current);
    }
    return {Axiom::monotone, true, std::nullopt};
}

bool validate_witness(const Election& e, const Committee& w, const AxiomVerdict& verdict) {
    if (verdict.pass || !verdict.witness) return false;
    const Witness& witness = *verdict.witness;
    const long long n = e.num_voters();

    auto coalition_ok = [&](auto&& member_ok) {
        if (witness.coalition.empty()) return false;
        for (const auto& entry : witness.coalition) {
            if (entry.ballot < 0 || entry.ballot >= static_cast<int>(e.ballots.size()))
                return false;
            if (entry.count < 1 || entry.count > e.ballots[entry.ballot].multiplicity)
                return false;
            if (!member_ok(e.ballots[entry.ballot])) return false;
        }
        return true;
    };

    switch (verdict.axiom) {
        case Axiom::jr: {
            if (witness.party < 0) return false;
            if (!coalition_ok([&](const BallotClass& b) {
                    return b.approves(witness.party) && class_utility(b, w) == 0;
                }))
                return false;
            return coalition_size(witness) * e.k >= n;
        }
        case Axiom::ejr: {
            if (witness.party < 0 || witness.level < 1) return false;
            if (!coalition_ok([&](const BallotClass& b) {
                    return b.approves(witness.party) && class_utility(b, w) < witness.level;
                }))
                return false;
            return coalition_size(witness) * e.k >= witness.level * n;
        }
        case Axiom::pjr: {
            if (witness.party < 0 || witness.level < 1) return false;
            if (!coalition_ok(
                    [&](const BallotClass& b) { return b.approves(witness.party); }))
                return false;
            std::vector<bool> in_union(e.num_parties(), false);
            for (const auto& entry : witness.coalition)
                for (int p : e.ballots[entry.ballot].parties) in_union[p] = true;
            long long seats = 0;
            for (int p = 0; p < e.num_parties(); ++p)
                if (in_union[p]) seats += w.seats[p];
            return coalition_size(witness) * e.k >= witness.level * n && seats < witness.level;
        }
        case Axiom::core: {
            if (!witness.deviation) return false;
            const Committee& t = *witness.deviation;
            if (static_cast<int>(t.seats.size()) != e.num_parties()) return false;
            if (t.total() < 1) return false;
            if (!coalition_ok([&](const BallotClass& b) {
                    return class_utility(b, t) > class_utility(b, w);
                }))
                return false;
            return t.total() <= quota(coalition_size(witness), n, e.k);
        }
        case Axiom::pr: {
            // Recompute: the committee genuinely fails the assignment flow.
            try {
                return !check_pr(e, w).pass;
            } catch (const DomainError&) {
                return false;
            }
        }
        case Axiom::monotone: {
            if (!witness.committee_small || !witness.committee_large) return false;
            return !witness.committee_small->subset_of(*witness.committee_large);
        }
    }
    return false;
}

} // namespace papp
