#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "papp/errors.hpp"
#include "papp/model.hpp"

namespace papp {

struct ExactSearchOptions {
    unsigned long long cap = 5'000'000; // max committees an exact rule may enumerate
    int threads = 1;
};

/// C(parties+k-1, k), saturating at `limit`.
inline unsigned long long committee_count(int parties, int k, unsigned long long limit) {
    unsigned __int128 count = 1;
    for (int i = 1; i <= k; ++i) {
        count = count * static_cast<unsigned long long>(parties - 1 + i) / i;
        if (count > limit) return limit + 1;
    }
    return static_cast<unsigned long long>(count);
}

inline void enforce_cap(int parties, int k, const ExactSearchOptions& opt,
                        const std::string& rule, const std::string& fallback) {
    if (committee_count(parties, k, opt.cap) > opt.cap)
        throw CapacityError(rule + ": committee space exceeds enumeration cap of " +
                                std::to_string(opt.cap) +
                                (fallback.empty() ? "" : "; consider " + fallback),
                            fallback);
}

namespace detail {

// All seat vectors of total k over `parties` parties, in canonical order:
// seats go to the lowest-index party first, i.e. (k,0,...), (k-1,1,0,...), ...
// This is lexicographic order of the induced clone sets, so "first visited
// among ties" is the canonical tie-break for whole-committee rules.
// Per-class utilities are maintained incrementally.
template <class Visit>
void committees_rec(const Election& e, int party, int remaining, std::vector<int>& seats,
                    std::vector<long long>& utils, unsigned long long& index, Visit&& visit) {
    const int parties = e.num_parties();
    if (party == parties - 1) {
        seats[party] = remaining;
        if (remaining != 0)
            for (size_t c = 0; c < e.ballots.size(); ++c)
                if (e.ballots[c].approves(party)) utils[c] += remaining;
        visit(static_cast<const std::vector<int>&>(seats), static_cast<const std::vector<long long>&>(utils), index++);
        if (remaining != 0)
            for (size_t c = 0; c < e.ballots.size(); ++c)
                if (e.ballots[c].approves(party)) utils[c] -= remaining;
        seats[party] = 0;
        return;
    }
    for (int m = remaining; m >= 0; --m) {
        seats[party] = m;
        if (m != 0)
            for (size_t c = 0; c < e.ballots.size(); ++c)
                if (e.ballots[c].approves(party)) utils[c] += m;
        committees_rec(e, party + 1, remaining - m, seats, utils, index, visit);
        if (m != 0)
            for (size_t c = 0; c < e.ballots.size(); ++c)
                if (e.ballots[c].approves(party)) utils[c] -= m;
    }
    seats[party] = 0;
}

} // namespace detail

/// visit(seats, class_utilities, leaf_index) for every committee of size k.
template <class Visit>
void for_each_committee(const Election& e, int k, Visit&& visit) {
    std::vector<int> seats(e.num_parties(), 0);
    std::vector<long long> utils(e.ballots.size(), 0);
    unsigned long long index = 0;
    detail::committees_rec(e, 0, k, seats, utils, index, visit);
}

/// Exhaustive search over committees of size k. `eval` maps (seats, utils) to a
/// totally ordered value; returns the first committee in canonical order
/// attaining the optimum. Deterministic for any thread count: workers process
/// strided slices and the reduction prefers (better value, lower index).
template <class Value, class Eval>
Committee search_best_committee(const Election& e, int k, const ExactSearchOptions& opt,
                                bool maximize, Eval eval) {
    const int threads = std::max(1, opt.threads);
    struct Best {
        bool found = false;
        Value value{};
        unsigned long long index = 0;
        Committee committee;
    };
    std::vector<Best> best(threads);

    auto worker = [&](int t) {
        Best& b = best[t];
        for_each_committee(e, k, [&](const std::vector<int>& seats,
                                     const std::vector<long long>& utils,
                                     unsigned long long index) {
            if (threads > 1 && index % threads != static_cast<unsigned long long>(t)) return;
            Value v = eval(seats, utils);
            bool better = !b.found || (maximize ? b.value < v : v < b.value);
            if (better) {
                b.found = true;
                b.value = std::move(v);
                b.index = index;
                b.committee = Committee(seats);
            }
        });
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    int winner = -1;
    for (int t = 0; t < threads; ++t) {
        if (!best[t].found) continue;
        if (winner < 0) {
            winner = t;
            continue;
        }
        const Best& a = best[winner];
        const Best& b = best[t];
        bool better = maximize ? a.value < b.value : b.value < a.value;
        bool tie = !(a.value < b.value) && !(b.value < a.value);
        if (better || (tie && b.index < a.index)) winner = t;
    }
    if (winner < 0) throw StructuralError("committee search over empty space");
    return best[winner].committee;
}

} // namespace papp
