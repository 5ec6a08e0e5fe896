#pragma once

#include <vector>

#include "papp/model.hpp"

namespace papp {

/// Clone embedding of a party-approval election: k identical candidates per
/// party, a voter approving party p approves all k clones. Candidate index
/// party*k + clone, so canonical candidate order is (party asc, clone asc).
struct CandidateElection {
    int parties = 0;
    int k = 0;
    std::vector<BallotClass> ballots; // party-level ballots, shared shape with the source

    int num_candidates() const { return parties * k; }
    int candidate_index(int party, int clone) const { return party * k + clone; }
    int party_of(int candidate) const { return candidate / k; }

    /// |A_i^cand| = k * |A_i|.
    long long candidate_ballot_size(int ballot_index) const;
};

/// A committee in the embedded election: sorted candidate indices, no
/// duplicates, exactly k of them.
using CandidateCommittee = std::vector<int>;

CandidateElection embed(const Election& election);

/// Seats per party = chosen clones per party.
Committee collapse(const CandidateElection& embedded, const CandidateCommittee& committee);

/// |A_i^cand ∩ W^cand| for the given ballot class.
long long candidate_utility(const CandidateElection& embedded, int ballot_index,
                            const CandidateCommittee& committee);

/// Hamming distance d(W^cand, A_i^cand); equals k*(|A_i|+1) - 2*u_i.
long long candidate_hamming(const CandidateElection& embedded, int ballot_index,
                            const CandidateCommittee& committee);

} // namespace papp
