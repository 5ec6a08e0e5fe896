#pragma once

#include <optional>
#include <string>
#include <vector>

#include "papp/apportionment.hpp"
#include "papp/enumeration.hpp"
#include "papp/model.hpp"

namespace papp {

enum class Axiom { jr, pjr, ejr, core, pr, monotone };

std::string axiom_name(Axiom axiom);
Axiom axiom_from_name(const std::string& name);

/// A coalition is a multiset of voters, recorded per ballot class.
struct CoalitionEntry {
    int ballot = -1;       // ballot class index
    long long count = 0;   // voters of that class in the coalition
};

/// Everything needed to re-validate a failure by direct substitution into the
/// axiom definition; fields beyond `coalition` are axiom-specific.
struct Witness {
    std::vector<CoalitionEntry> coalition;
    int party = -1;                            // jr/pjr/ejr: the common party
    long long level = 0;                       // ejr/pjr: l; core: |T|
    std::optional<Committee> deviation;        // core: T
    int k_small = 0;                           // monotone: the k that shrank
    std::optional<Committee> committee_small;  // monotone: W_k
    std::optional<Committee> committee_large;  // monotone: W_{k+1}
};

struct AxiomVerdict {
    Axiom axiom = Axiom::jr;
    bool pass = true;
    std::optional<Witness> witness;
};

long long coalition_size(const Witness& witness);

/// JR: no coalition of >= n/k voters with a commonly approved party may be
/// entirely unrepresented.
AxiomVerdict check_jr(const Election& election, const Committee& committee);

/// EJR, checked in O(|P| * k * #classes): for every party p and level l, the
/// voters approving p with utility < l must number fewer than l*n/k.
AxiomVerdict check_ejr(const Election& election, const Committee& committee);

/// PJR via submodular minimization: for each party p, minimize
/// n*f(S) = n*s(S) - k|S| over S subsets of N_p with a project-selection
/// min-cut (all capacities integral after scaling by n); violation iff the
/// minimum is <= -n. The witness coalition is the source side of the cut.
AxiomVerdict check_pjr_mincut(const Election& election, const Committee& committee);

/// PJR by exhaustive subset scan over expanded voters; oracle for the min-cut
/// checker. Requires n <= 14 and at most 64 parties.
AxiomVerdict check_pjr_bruteforce(const Election& election, const Committee& committee);

/// Core stability by enumerating deviations T (sizes 1..k, approved-party
/// support only); the coalition is the set of strict gainers. The first
/// violation in (|T| ascending, canonical T order) is returned.
AxiomVerdict check_core_bruteforce(const Election& election, const Committee& committee,
                                   const ExactSearchOptions& options = {});

/// Perfect representation: a feasibility flow assigns each seat exactly n/k
/// approving voters. DomainError unless k divides n.
AxiomVerdict check_pr(const Election& election, const Committee& committee);

/// Runs the rule for k = 1..k_max on the same profile and reports the first
/// multiset non-inclusion (Alabama paradox).
AxiomVerdict check_committee_monotonic(const PartyRule& rule, const Election& election,
                                       int k_max);

/// Re-validates a failing verdict against the axiom definition.
bool validate_witness(const Election& election, const Committee& committee,
                      const AxiomVerdict& verdict);

} // namespace papp
