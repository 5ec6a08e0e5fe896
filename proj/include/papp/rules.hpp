#pragma once

#include <string>
#include <vector>

#include "papp/apportionment.hpp"
#include "papp/enumeration.hpp"
#include "papp/model.hpp"

namespace papp {

/// Exact PAV score sum_i H_{u_i(W)}.
Rat pav_score(const Election& election, const Committee& committee);

/// Swap-acceptance threshold for ls_pav: 1/((1+2(k-1))(k-1)k), k > 1.
Rat ls_pav_epsilon(int k);

/// Committee of size k maximizing the exact PAV score over all multisets;
/// ties resolve to the first committee in canonical order.
Committee pav_exact(const Election& election, const ExactSearchOptions& options = {});

/// Local-search PAV: starting from the SeqPAV committee, repeatedly applies the
/// first (lexicographic (out, in)) single-seat swap that raises the exact PAV
/// score by at least ls_pav_epsilon(k). Polynomial; the result is core-stable.
Committee ls_pav(const Election& election);

Committee seq_pav(const Election& election);
Committee rev_seq_pav(const Election& election);

/// All seats to the approval-maximal party (resp. satisfaction-maximal for SAV).
Committee av(const Election& election);
Committee sav(const Election& election);

/// Minimizes the maximal Hamming distance in the clone embedding, computed via
/// the closed form k*(|A_i|+1) - 2*u_i.
Committee mav_exact(const Election& election, const ExactSearchOptions& options = {});

struct SeqPhragmenStep {
    int party;
    Rat bid; // the winning bid s_p, which becomes the approvers' load
};
std::vector<SeqPhragmenStep> seq_phragmen_steps(const Election& election);
Committee seq_phragmen(const Election& election);

struct PhragmenStvStep {
    int party;
    Rat score; // the winning score before the weight update
};
std::vector<PhragmenStvStep> phragmen_stv_steps(const Election& election);
Committee phragmen_stv(const Election& election);

Committee greedy_av(const Election& election);
Committee hare_av(const Election& election);

/// Maximizes coverage |{i : u_i >= 1}| over committees.
Committee cc_av_exact(const Election& election, const ExactSearchOptions& options = {});

Committee greedy_monroe(const Election& election);

/// Maximal number of voters representable by approved seats under the Monroe
/// constraint that every seat represents floor(n/k) or ceil(n/k) voters.
long long monroe_score(const Election& election, const Committee& committee);
Committee monroe_exact(const Election& election, const ExactSearchOptions& options = {});

/// Optimal maximal voter load of a fixed committee (exact rational, via the
/// cut characterization: max over party sets T of seats(T)/|N(T)|).
Rat max_phragmen_load(const Election& election, const Committee& committee);
Committee max_phragmen_bruteforce(const Election& election, const ExactSearchOptions& options = {});

// ---- rule registry (CLI surface) ----

struct RuleOptions {
    ExactSearchOptions search;
    uint64_t rp_seed = 1;
    long long rp_trials = 0; // 0: exact random priority only (n <= 10)
    double nash_tolerance = 1e-9;
};

/// Registered names: the fifteen catalogue rules plus the portioning x
/// apportionment compositions ("cu+dhondt", ..., "maj+quota").
std::vector<std::string> rule_names();
PartyRule make_rule(const std::string& name, const RuleOptions& options = {});

} // namespace papp
