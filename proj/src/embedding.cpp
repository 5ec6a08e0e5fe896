#include "papp/embedding.hpp"

#include <algorithm>

#include "papp/errors.hpp"

namespace papp {

long long CandidateElection::candidate_ballot_size(int ballot_index) const {
    return static_cast<long long>(k) * ballots[ballot_index].parties.size();
}

CandidateElection embed(const Election& e) {
    e.validate();
    CandidateElection ce;
    ce.parties = e.num_parties();
    ce.k = e.k;
    ce.ballots = e.ballots;
    return ce;
}

Committee collapse(const CandidateElection& ce, const CandidateCommittee& committee) {
    Committee w = Committee::zero(ce.parties);
    int prev = -1;
    for (int c : committee) {
        if (c < 0 || c >= ce.num_candidates()) throw StructuralError("candidate index out of range");
        if (c <= prev) throw StructuralError("candidate committee not sorted/unique");
        prev = c;
        ++w.seats[ce.party_of(c)];
    }
    return w;
}

long long candidate_utility(const CandidateElection& ce, int ballot_index,
                            const CandidateCommittee& committee) {
    const BallotClass& b = ce.ballots[ballot_index];
    long long u = 0;
    for (int c : committee)
        if (b.approves(ce.party_of(c))) ++u;
    return u;
}

long long candidate_hamming(const CandidateElection& ce, int ballot_index,
                            const CandidateCommittee& committee) {
    long long u = candidate_utility(ce, ballot_index, committee);
    long long approved = ce.candidate_ballot_size(ballot_index);
    long long chosen = static_cast<long long>(committee.size());
    return approved + chosen - 2 * u;
}

} // namespace papp
