#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "papp/rational.hpp"

namespace papp {

/// One ballot class: an approval set over party indices plus the number of
/// voters casting exactly that ballot. Profiles are stored compressed, but n
/// always counts multiplicities.
struct BallotClass {
    std::vector<int> parties; // sorted ascending, unique, nonempty
    long long multiplicity = 1;

    bool approves(int party) const;
};

/// A party-approval election: parties in declaration order (which is also the
/// canonical tie-break order), ballot classes in input order, committee size k.
struct Election {
    std::vector<std::string> parties;
    std::vector<BallotClass> ballots;
    int k = 1;

    int num_parties() const { return static_cast<int>(parties.size()); }
    long long num_voters() const; // n
    int party_index(const std::string& name) const; // -1 when absent

    /// Approval score per party, multiplicity-weighted.
    std::vector<long long> approval_counts() const;

    /// Throws StructuralError if any invariant fails.
    void validate() const;

    /// Same election with a different committee size (profile shared).
    Election with_k(int new_k) const;
};

/// A committee: seats per party, indexed like Election::parties.
struct Committee {
    std::vector<int> seats;

    Committee() = default;
    explicit Committee(std::vector<int> s) : seats(std::move(s)) {}
    static Committee zero(int parties) { return Committee(std::vector<int>(parties, 0)); }

    int total() const;
    bool subset_of(const Committee& other) const; // multiset inclusion
    bool operator==(const Committee&) const = default;
};

/// Vote-share vector over parties. Exact shares sum to exactly 1; approximate
/// (float) shares within 1e-9.
struct Portioning {
    enum class Kind { exact, approximate };
    Kind kind = Kind::exact;
    std::vector<Rat> exact_shares;
    std::vector<double> approx_shares;

    static Portioning make_exact(std::vector<Rat> shares);
    static Portioning make_approx(std::vector<double> shares);
    int num_parties() const;
    bool is_exact() const { return kind == Kind::exact; }
};

/// q(S) = floor(k*|S|/n), the seat count a coalition of the given size deserves.
long long quota(long long coalition_size, long long n, long long k);

/// Seats on parties approved by the given ballot class.
long long class_utility(const BallotClass& ballot, const Committee& committee);

/// u_i(W) for the voter class at `ballot_index`; StructuralError on bad index
/// or committee/party mismatch.
long long utility(const Election& election, int ballot_index, const Committee& committee);

// Ballot file format (UTF-8, line oriented, '#' starts a comment):
//   parties: <name> <name> ...
//   k: <integer>
//   <multiplicity> : <name>,<name>,...
Election parse_election(const std::string& text);
std::string serialize_election(const Election& election);

// Committees render as space-separated "<party>=<seats>" pairs, zero-seat
// parties omitted; exact portionings as "<party>=<num>/<den>".
std::string format_committee(const Election& election, const Committee& committee);
std::string format_portioning(const Election& election, const Portioning& portioning);

/// Parses "p0=8,p2=4" (commas or spaces); requires total seats == election.k.
Committee parse_committee(const Election& election, const std::string& text);

} // namespace papp
