#include "papp/rules.hpp"

#include <algorithm>
#include <numeric>

#include "papp/errors.hpp"
#include "papp/maxflow.hpp"
#include "papp/portioning.hpp"

namespace papp {

namespace {

std::vector<long long> class_utilities(const Election& e, const Committee& w) {
    std::vector<long long> utils(e.ballots.size(), 0);
    for (size_t c = 0; c < e.ballots.size(); ++c) utils[c] = class_utility(e.ballots[c], w);
    return utils;
}

Committee finalize(const Election& e, Committee w, const char* rule) {
    if (w.total() != e.k) throw StructuralError(std::string(rule) + ": committee size mismatch");
    return w;
}

// Marginal PAV gain of one extra seat for `party` at the given utilities.
Rat pav_gain(const Election& e, const std::vector<long long>& utils, int party) {
    Rat gain = 0;
    for (size_t c = 0; c < e.ballots.size(); ++c)
        if (e.ballots[c].approves(party))
            gain += Rat(e.ballots[c].multiplicity, utils[c] + 1);
    return gain;
}

// Marginal PAV loss of removing one seat from `party` (requires a seat there).
Rat pav_loss(const Election& e, const std::vector<long long>& utils, int party) {
    Rat loss = 0;
    for (size_t c = 0; c < e.ballots.size(); ++c)
        if (e.ballots[c].approves(party))
            loss += Rat(e.ballots[c].multiplicity, utils[c]);
    return loss;
}

void bump_utils(const Election& e, std::vector<long long>& utils, int party, long long delta) {
    for (size_t c = 0; c < e.ballots.size(); ++c)
        if (e.ballots[c].approves(party)) utils[c] += delta;
}

} // namespace

Rat pav_score(const Election& e, const Committee& w) {
    const auto h = harmonic_numbers(w.total());
    Rat score = 0;
    for (const auto& b : e.ballots) score += Rat(b.multiplicity) * h[class_utility(b, w)];
    return score;
}

Rat ls_pav_epsilon(int k) {
    if (k < 2) throw StructuralError("ls_pav_epsilon defined for k >= 2");
    return Rat(1, Int(1 + 2 * (k - 1)) * (k - 1) * k);
}

Committee pav_exact(const Election& e, const ExactSearchOptions& options) {
    e.validate();
    enforce_cap(e.num_parties(), e.k, options, "pav", "lspav");
    const auto h = harmonic_numbers(e.k);
    auto result = search_best_committee<Rat>(
        e, e.k, options, /*maximize=*/true,
        [&](const std::vector<int>&, const std::vector<long long>& utils) {
            Rat score = 0;
            for (size_t c = 0; c < e.ballots.size(); ++c)
                score += Rat(e.ballots[c].multiplicity) * h[utils[c]];
            return score;
        });
    return finalize(e, std::move(result), "pav");
}

Committee seq_pav(const Election& e) {
    e.validate();
    Committee w = Committee::zero(e.num_parties());
    std::vector<long long> utils(e.ballots.size(), 0);
    for (int round = 0; round < e.k; ++round) {
        int best = -1;
        Rat best_gain;
        for (int p = 0; p < e.num_parties(); ++p) {
            Rat gain = pav_gain(e, utils, p);
            if (best < 0 || best_gain < gain) {
                best = p;
                best_gain = std::move(gain);
            }
        }
        ++w.seats[best];
        bump_utils(e, utils, best, 1);
    }
    return finalize(e, std::move(w), "seqpav");
}

Committee rev_seq_pav(const Election& e) {
    e.validate();
    const int parties = e.num_parties();
    Committee w(std::vector<int>(parties, e.k)); // the full clone set
    std::vector<long long> utils = class_utilities(e, w);
    for (int excess = parties * e.k - e.k; excess > 0; --excess) {
        int best = -1;
        Rat best_loss;
        for (int p = 0; p < parties; ++p) {
            if (w.seats[p] == 0) continue;
            Rat loss = pav_loss(e, utils, p);
            if (best < 0 || loss < best_loss) {
                best = p;
                best_loss = std::move(loss);
            }
        }
        --w.seats[best];
        bump_utils(e, utils, best, -1);
    }
    return finalize(e, std::move(w), "revseqpav");
}

Committee ls_pav(const Election& e) {
    e.validate();
    if (e.k == 1) return pav_exact(e); // search space is just |P| committees
    const Rat eps = ls_pav_epsilon(e.k);
    Committee w = seq_pav(e);
    std::vector<long long> utils = class_utilities(e, w);

    // Termination: every swap raises the exact score by >= eps and the score is
    // bounded by n*H_k, so the swap count is bounded by ceil(n*H_k/eps).
    const Rat bound = Rat(e.num_voters()) * harmonic_numbers(e.k)[e.k] / eps;
    long long budget = static_cast<long long>(numerator(bound) / denominator(bound)) + 1;

    bool improved = true;
    while (improved) {
        if (--budget < 0) throw StructuralError("lspav: exceeded its iteration bound");
        improved = false;
        for (int out = 0; out < e.num_parties() && !improved; ++out) {
            if (w.seats[out] == 0) continue;
            const Rat loss = pav_loss(e, utils, out);
            bump_utils(e, utils, out, -1);
            for (int in = 0; in < e.num_parties() && !improved; ++in) {
                if (in == out) continue;
                Rat gain = pav_gain(e, utils, in);
                if (gain - loss >= eps) {
                    --w.seats[out];
                    ++w.seats[in];
                    bump_utils(e, utils, in, 1);
                    improved = true;
                }
            }
            if (!improved) bump_utils(e, utils, out, 1);
        }
    }
    return finalize(e, std::move(w), "lspav");
}

namespace {

Committee all_seats_to(const Election& e, int party) {
    Committee w = Committee::zero(e.num_parties());
    w.seats[party] = e.k;
    return w;
}

} // namespace

Committee av(const Election& e) {
    e.validate();
    const auto counts = e.approval_counts();
    int best = 0;
    for (int p = 1; p < e.num_parties(); ++p)
        if (counts[p] > counts[best]) best = p;
    return finalize(e, all_seats_to(e, best), "av");
}

Committee sav(const Election& e) {
    e.validate();
    std::vector<Rat> score(e.num_parties(), Rat(0));
    for (const auto& b : e.ballots) {
        Rat unit = Rat(b.multiplicity, static_cast<long long>(b.parties.size()));
        for (int p : b.parties) score[p] += unit;
    }
    int best = 0;
    for (int p = 1; p < e.num_parties(); ++p)
        if (score[best] < score[p]) best = p;
    return finalize(e, all_seats_to(e, best), "sav");
}

Committee mav_exact(const Election& e, const ExactSearchOptions& options) {
    e.validate();
    enforce_cap(e.num_parties(), e.k, options, "mav", "");
    auto result = search_best_committee<long long>(
        e, e.k, options, /*maximize=*/false,
        [&](const std::vector<int>&, const std::vector<long long>& utils) {
            long long worst = 0;
            for (size_t c = 0; c < e.ballots.size(); ++c) {
                long long d = static_cast<long long>(e.k) *
                                  (static_cast<long long>(e.ballots[c].parties.size()) + 1) -
                              2 * utils[c];
                worst = std::max(worst, d);
            }
            return worst;
        });
    return finalize(e, std::move(result), "mav");
}

std::vector<SeqPhragmenStep> seq_phragmen_steps(const Election& e) {
    e.validate();
    const auto approvers = e.approval_counts();
    std::vector<Rat> load(e.ballots.size(), Rat(0)); // per voter, uniform within a class
    std::vector<SeqPhragmenStep> steps;
    steps.reserve(e.k);
    for (int round = 0; round < e.k; ++round) {
        int best = -1;
        Rat best_bid;
        for (int p = 0; p < e.num_parties(); ++p) {
            if (approvers[p] == 0) continue;
            Rat carried = 0;
            for (size_t c = 0; c < e.ballots.size(); ++c)
                if (e.ballots[c].approves(p))
                    carried += Rat(e.ballots[c].multiplicity) * load[c];
            Rat bid = (1 + carried) / approvers[p];
            if (best < 0 || bid < best_bid) {
                best = p;
                best_bid = std::move(bid);
            }
        }
        if (best < 0) throw StructuralError("seqphragmen: no assignable party");
        for (size_t c = 0; c < e.ballots.size(); ++c)
            if (e.ballots[c].approves(best)) load[c] = best_bid;
        steps.push_back({best, std::move(best_bid)});
    }
    return steps;
}

Committee seq_phragmen(const Election& e) {
    Committee w = Committee::zero(e.num_parties());
    for (const auto& step : seq_phragmen_steps(e)) ++w.seats[step.party];
    return finalize(e, std::move(w), "seqphragmen");
}

std::vector<PhragmenStvStep> phragmen_stv_steps(const Election& e) {
    e.validate();
    const Rat threshold = Rat(e.num_voters(), e.k); // n/k
    std::vector<Rat> weight(e.ballots.size(), Rat(1));
    std::vector<PhragmenStvStep> steps;
    steps.reserve(e.k);
    for (int round = 0; round < e.k; ++round) {
        int best = -1;
        Rat best_score;
        for (int p = 0; p < e.num_parties(); ++p) {
            Rat score = 0;
            for (size_t c = 0; c < e.ballots.size(); ++c)
                if (e.ballots[c].approves(p))
                    score += Rat(e.ballots[c].multiplicity) * weight[c];
            if (best < 0 || best_score < score) {
                best = p;
                best_score = std::move(score);
            }
        }
        if (best_score > threshold) {
            Rat factor = (best_score - threshold) / best_score;
            for (size_t c = 0; c < e.ballots.size(); ++c)
                if (e.ballots[c].approves(best)) weight[c] *= factor;
        } else {
            for (size_t c = 0; c < e.ballots.size(); ++c)
                if (e.ballots[c].approves(best)) weight[c] = 0;
        }
        steps.push_back({best, std::move(best_score)});
    }
    return steps;
}

Committee phragmen_stv(const Election& e) {
    Committee w = Committee::zero(e.num_parties());
    for (const auto& step : phragmen_stv_steps(e)) ++w.seats[step.party];
    return finalize(e, std::move(w), "phragmen-stv");
}

namespace {

// Fills leftover seats with unused clones in canonical candidate order: lowest
// party index first, each party holding at most k seats.
void canonical_fill(const Election& e, Committee& w) {
    int missing = e.k - w.total();
    for (int p = 0; p < e.num_parties() && missing > 0; ++p) {
        int take = std::min(missing, e.k - w.seats[p]);
        w.seats[p] += take;
        missing -= take;
    }
}

long long active_approvals(const Election& e, const std::vector<long long>& remaining, int party) {
    long long count = 0;
    for (size_t c = 0; c < e.ballots.size(); ++c)
        if (e.ballots[c].approves(party)) count += remaining[c];
    return count;
}

// Deactivates up to `count` ballots approving `party`, lowest voter index first.
void remove_approvers(const Election& e, std::vector<long long>& remaining, int party,
                      long long count) {
    for (size_t c = 0; c < e.ballots.size() && count > 0; ++c) {
        if (!e.ballots[c].approves(party)) continue;
        long long take = std::min(count, remaining[c]);
        remaining[c] -= take;
        count -= take;
    }
}

} // namespace

Committee greedy_av(const Election& e) {
    e.validate();
    Committee w = Committee::zero(e.num_parties());
    std::vector<long long> remaining;
    for (const auto& b : e.ballots) remaining.push_back(b.multiplicity);
    for (int round = 0; round < e.k; ++round) {
        int best = -1;
        long long best_count = 0;
        for (int p = 0; p < e.num_parties(); ++p) {
            long long count = active_approvals(e, remaining, p);
            if (count > best_count) {
                best = p;
                best_count = count;
            }
        }
        if (best < 0) break; // no active ballots left
        ++w.seats[best];
        for (size_t c = 0; c < e.ballots.size(); ++c)
            if (e.ballots[c].approves(best)) remaining[c] = 0;
    }
    canonical_fill(e, w);
    return finalize(e, std::move(w), "greedyav");
}

Committee hare_av(const Election& e) {
    e.validate();
    const long long hare = (e.num_voters() + e.k - 1) / e.k; // ceil(n/k)
    Committee w = Committee::zero(e.num_parties());
    std::vector<long long> remaining;
    for (const auto& b : e.ballots) remaining.push_back(b.multiplicity);
    for (int round = 0; round < e.k; ++round) {
        int best = -1;
        long long best_count = 0;
        for (int p = 0; p < e.num_parties(); ++p) {
            long long count = active_approvals(e, remaining, p);
            if (count > best_count) {
                best = p;
                best_count = count;
            }
        }
        if (best < 0) break;
        ++w.seats[best];
        remove_approvers(e, remaining, best, std::min(hare, best_count));
    }
    canonical_fill(e, w);
    return finalize(e, std::move(w), "hareav");
}

Committee cc_av_exact(const Election& e, const ExactSearchOptions& options) {
    e.validate();
    enforce_cap(e.num_parties(), e.k, options, "ccav", "greedyav");
    auto result = search_best_committee<long long>(
        e, e.k, options, /*maximize=*/true,
        [&](const std::vector<int>&, const std::vector<long long>& utils) {
            long long covered = 0;
            for (size_t c = 0; c < e.ballots.size(); ++c)
                if (utils[c] > 0) covered += e.ballots[c].multiplicity;
            return covered;
        });
    return finalize(e, std::move(result), "ccav");
}

Committee greedy_monroe(const Election& e) {
    e.validate();
    const long long n = e.num_voters();
    const long long lower = n / e.k;
    const long long oversized_rounds = n - e.k * lower; // rounds of size ceil(n/k)
    Committee w = Committee::zero(e.num_parties());
    std::vector<long long> remaining;
    for (const auto& b : e.ballots) remaining.push_back(b.multiplicity);
    for (int round = 1; round <= e.k; ++round) {
        const long long size = round <= oversized_rounds ? lower + 1 : lower;
        int best = 0;
        long long best_covered = -1;
        for (int p = 0; p < e.num_parties(); ++p) {
            long long covered = std::min(active_approvals(e, remaining, p), size);
            if (covered > best_covered) {
                best = p;
                best_covered = covered;
            }
        }
        ++w.seats[best];
        remove_approvers(e, remaining, best, best_covered);
        // pad the round's voter group with non-approvers, lowest index first
        long long pad = size - best_covered;
        for (size_t c = 0; c < e.ballots.size() && pad > 0; ++c) {
            long long take = std::min(pad, remaining[c]);
            remaining[c] -= take;
            pad -= take;
        }
    }
    return finalize(e, std::move(w), "greedymonroe");
}

long long monroe_score(const Election& e, const Committee& w) {
    if (static_cast<int>(w.seats.size()) != e.num_parties() || w.total() != e.k)
        throw StructuralError("monroe_score: committee/election mismatch");
    const long long n = e.num_voters();
    const long long lower = n / e.k;
    const long long slack = n % e.k; // seats allowed to represent ceil(n/k) voters

    // Max approving assignment: voters flow to approved seated parties; party p
    // absorbs W(p)*floor(n/k) freely, anything beyond shares the global slack.
    const int classes = static_cast<int>(e.ballots.size());
    const int parties = e.num_parties();
    const int source = 0, overflow = classes + parties + 1, sink = overflow + 1;
    MaxFlow flow(sink + 1);
    for (int c = 0; c < classes; ++c) {
        flow.add_edge(source, 1 + c, e.ballots[c].multiplicity);
        for (int p : e.ballots[c].parties)
            if (w.seats[p] > 0) flow.add_edge(1 + c, 1 + classes + p, e.ballots[c].multiplicity);
    }
    for (int p = 0; p < parties; ++p) {
        if (w.seats[p] == 0) continue;
        flow.add_edge(1 + classes + p, sink, w.seats[p] * lower);
        if (slack > 0) flow.add_edge(1 + classes + p, overflow, w.seats[p]);
    }
    if (slack > 0) flow.add_edge(overflow, sink, slack);
    return flow.max_flow(source, sink);
}

Committee monroe_exact(const Election& e, const ExactSearchOptions& options) {
    e.validate();
    enforce_cap(e.num_parties(), e.k, options, "monroe", "greedymonroe");
    if (e.num_voters() > 50'000'000 / std::max(1, e.k))
        throw CapacityError("monroe: n*k exceeds the flow-size cap", "greedymonroe");
    auto result = search_best_committee<long long>(
        e, e.k, options, /*maximize=*/true,
        [&](const std::vector<int>& seats, const std::vector<long long>&) {
            return monroe_score(e, Committee(seats));
        });
    return finalize(e, std::move(result), "monroe");
}

namespace {

struct CoverageTable {
    // covered[mask] = voters approving at least one party in `mask`.
    // Built once per election via a subset-sum transform; only viable for
    // party counts the exact rules can reach under the enumeration cap.
    std::vector<long long> covered;

    explicit CoverageTable(const Election& e) {
        const int parties = e.num_parties();
        const size_t size = size_t(1) << parties;
        std::vector<long long> exact(size, 0);
        for (const auto& b : e.ballots) {
            uint64_t mask = 0;
            for (int p : b.parties) mask |= uint64_t(1) << p;
            exact[mask] += b.multiplicity;
        }
        // subset-sum: disjoint[mask] = voters whose ballot fits inside mask
        for (int p = 0; p < parties; ++p)
            for (size_t mask = 0; mask < size; ++mask)
                if (mask & (size_t(1) << p)) exact[mask] += exact[mask ^ (size_t(1) << p)];
        const long long n = e.num_voters();
        covered.resize(size);
        for (size_t mask = 0; mask < size; ++mask)
            covered[mask] = n - exact[(size - 1) ^ mask];
    }
};

} // namespace

Rat max_phragmen_load(const Election& e, const Committee& w) {
    if (static_cast<int>(w.seats.size()) != e.num_parties())
        throw StructuralError("max_phragmen_load: committee/election mismatch");
    if (e.num_parties() > 24)
        throw CapacityError("maxphragmen: too many parties for the coverage table", "");
    CoverageTable table(e);
    uint64_t support = 0;
    for (int p = 0; p < e.num_parties(); ++p)
        if (w.seats[p] > 0) support |= uint64_t(1) << p;
    if (support == 0) return Rat(0);

    // Feasibility of bound L is a Hall condition: seats(T) <= L * |N(T)| for
    // every party set T, so the optimum is the maximum seats/coverage ratio.
    long long best_num = 0, best_den = 1;
    for (uint64_t sub = support;; sub = (sub - 1) & support) {
        if (sub != 0) {
            long long seats = 0;
            for (uint64_t bits = sub; bits; bits &= bits - 1)
                seats += w.seats[__builtin_ctzll(bits)];
            long long voters = table.covered[sub];
            if (voters == 0) return Rat(e.k + 1); // unapproved party seated: infeasible
            if (static_cast<__int128>(seats) * best_den >
                static_cast<__int128>(best_num) * voters) {
                best_num = seats;
                best_den = voters;
            }
        }
        if (sub == 0) break;
    }
    return Rat(best_num, best_den);
}

Committee max_phragmen_bruteforce(const Election& e, const ExactSearchOptions& options) {
    e.validate();
    enforce_cap(e.num_parties(), e.k, options, "maxphragmen", "seqphragmen");
    if (e.num_parties() > 24)
        throw CapacityError("maxphragmen: too many parties for the coverage table",
                            "seqphragmen");
    CoverageTable table(e);
    const int k = e.k;
    auto result = search_best_committee<Rat>(
        e, k, options, /*maximize=*/false,
        [&](const std::vector<int>& seats, const std::vector<long long>&) {
            uint64_t support = 0;
            for (size_t p = 0; p < seats.size(); ++p)
                if (seats[p] > 0) support |= uint64_t(1) << p;
            long long best_num = 0, best_den = 1;
            for (uint64_t sub = support;; sub = (sub - 1) & support) {
                if (sub != 0) {
                    long long total = 0;
                    for (uint64_t bits = sub; bits; bits &= bits - 1)
                        total += seats[__builtin_ctzll(bits)];
                    long long voters = table.covered[sub];
                    if (voters == 0) return Rat(k + 1);
                    if (static_cast<__int128>(total) * best_den >
                        static_cast<__int128>(best_num) * voters) {
                        best_num = total;
                        best_den = voters;
                    }
                }
                if (sub == 0) break;
            }
            return Rat(best_num, best_den);
        });
    return finalize(e, std::move(result), "maxphragmen");
}

// ---- registry ----

std::vector<std::string> rule_names() {
    std::vector<std::string> names = {
        "pav",      "lspav",        "seqpav", "revseqpav",    "av",
        "sav",      "mav",          "seqphragmen", "phragmen-stv", "greedyav",
        "hareav",   "ccav",         "greedymonroe", "monroe",  "maxphragmen",
    };
    for (const char* portion : {"cu", "rp", "nash", "maj"})
        for (const char* apportion : {"dhondt", "quota"})
            names.push_back(std::string(portion) + "+" + apportion);
    return names;
}

PartyRule make_rule(const std::string& name, const RuleOptions& options) {
    const ExactSearchOptions search = options.search;
    if (name == "pav") return [search](const Election& e) { return pav_exact(e, search); };
    if (name == "lspav") return [](const Election& e) { return ls_pav(e); };
    if (name == "seqpav") return [](const Election& e) { return seq_pav(e); };
    if (name == "revseqpav") return [](const Election& e) { return rev_seq_pav(e); };
    if (name == "av") return [](const Election& e) { return av(e); };
    if (name == "sav") return [](const Election& e) { return sav(e); };
    if (name == "mav") return [search](const Election& e) { return mav_exact(e, search); };
    if (name == "seqphragmen") return [](const Election& e) { return seq_phragmen(e); };
    if (name == "phragmen-stv") return [](const Election& e) { return phragmen_stv(e); };
    if (name == "greedyav") return [](const Election& e) { return greedy_av(e); };
    if (name == "hareav") return [](const Election& e) { return hare_av(e); };
    if (name == "ccav") return [search](const Election& e) { return cc_av_exact(e, search); };
    if (name == "greedymonroe") return [](const Election& e) { return greedy_monroe(e); };
    if (name == "monroe") return [search](const Election& e) { return monroe_exact(e, search); };
    if (name == "maxphragmen")
        return [search](const Election& e) { return max_phragmen_bruteforce(e, search); };

    auto plus = name.find('+');
    if (plus != std::string::npos) {
        std::string portion = name.substr(0, plus);
        std::string apportion = name.substr(plus + 1);
        PortioningMethod pm;
        if (portion == "cu") {
            pm = [](const Election& e) { return conditional_utilitarian(e); };
        } else if (portion == "rp") {
            uint64_t seed = options.rp_seed;
            long long trials = options.rp_trials;
            pm = [seed, trials](const Election& e) {
                if (e.num_voters() <= 10) return random_priority_exact(e);
                if (trials > 0) return random_priority_sampled(e, seed, trials);
                throw CapacityError("rp: exact mode requires n <= 10; pass --trials for "
                                    "the sampled mode",
                                    "random_priority_sampled");
            };
        } else if (portion == "nash") {
            NashOptions nash_options;
            nash_options.tolerance = options.nash_tolerance;
            pm = [nash_options](const Election& e) { return nash(e, nash_options); };
        } else if (portion == "maj") {
            pm = [](const Election& e) { return majoritarian(e); };
        }
        ApportionmentMethod am;
        if (apportion == "dhondt")
            am = [](const Portioning& r, int k) { return dhondt(r, k); };
        else if (apportion == "quota")
            am = [](const Portioning& r, int k) { return quota_method(r, k); };
        if (pm && am) return compose(std::move(pm), std::move(am));
    }
    throw StructuralError("unknown rule: " + name);
}

} // namespace papp
