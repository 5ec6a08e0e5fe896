#include "papp/model.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>

#include "papp/errors.hpp"

namespace papp {

bool BallotClass::approves(int party) const {
    return std::binary_search(parties.begin(), parties.end(), party);
}

long long Election::num_voters() const {
    long long n = 0;
    for (const auto& b : ballots) n += b.multiplicity;
    return n;
}

int Election::party_index(const std::string& name) const {
    for (size_t i = 0; i < parties.size(); ++i)
        if (parties[i] == name) return static_cast<int>(i);
    return -1;
}

std::vector<long long> Election::approval_counts() const {
    std::vector<long long> counts(parties.size(), 0);
    for (const auto& b : ballots)
        for (int p : b.parties) counts[p] += b.multiplicity;
    return counts;
}

void Election::validate() const {
    if (parties.empty()) throw StructuralError("election has no parties");
    if (k < 1) throw StructuralError("committee size k must be >= 1");
    std::unordered_set<std::string> seen;
    for (const auto& name : parties)
        if (!seen.insert(name).second)
            throw StructuralError("duplicate party name: " + name);
    if (ballots.empty()) throw StructuralError("election has no ballots");
    for (const auto& b : ballots) {
        if (b.parties.empty()) throw StructuralError("empty approval set");
        if (b.multiplicity < 1) throw StructuralError("ballot multiplicity must be >= 1");
        if (!std::is_sorted(b.parties.begin(), b.parties.end()))
            throw StructuralError("ballot parties not sorted");
        if (std::adjacent_find(b.parties.begin(), b.parties.end()) != b.parties.end())
            throw StructuralError("duplicate party in ballot");
        if (b.parties.front() < 0 || b.parties.back() >= num_parties())
            throw StructuralError("ballot references unknown party index");
    }
}

Election Election::with_k(int new_k) const {
    Election e = *this;
    e.k = new_k;
    return e;
}

int Committee::total() const {
    int sum = 0;
    for (int s : seats) sum += s;
    return sum;
}

bool Committee::subset_of(const Committee& other) const {
    if (seats.size() != other.seats.size()) return false;
    for (size_t p = 0; p < seats.size(); ++p)
        if (seats[p] > other.seats[p]) return false;
    return true;
}

Portioning Portioning::make_exact(std::vector<Rat> shares) {
    Rat sum = 0;
    for (const Rat& s : shares) {
        if (s < 0 || s > 1) throw StructuralError("portioning share outside [0,1]");
        sum += s;
    }
    if (sum != 1) throw StructuralError("exact portioning shares must sum to 1");
    Portioning r;
    r.kind = Kind::exact;
    r.exact_shares = std::move(shares);
    return r;
}

Portioning Portioning::make_approx(std::vector<double> shares) {
    double sum = 0;
    for (double s : shares) {
        if (s < -1e-12 || s > 1 + 1e-12) throw StructuralError("portioning share outside [0,1]");
        sum += s;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw StructuralError("approximate portioning shares must sum to 1 within 1e-9");
    Portioning r;
    r.kind = Kind::approximate;
    r.approx_shares = std::move(shares);
    return r;
}

int Portioning::num_parties() const {
    return static_cast<int>(is_exact() ? exact_shares.size() : approx_shares.size());
}

long long quota(long long coalition_size, long long n, long long k) {
    if (n < 1 || k < 1 || coalition_size < 0 || coalition_size > n)
        throw StructuralError("quota precondition violated");
    // k*|S| stays well inside 128 bits for any input this tool accepts
    __int128 prod = static_cast<__int128>(k) * coalition_size;
    return static_cast<long long>(prod / n);
}

long long class_utility(const BallotClass& ballot, const Committee& committee) {
    long long u = 0;
    for (int p : ballot.parties) u += committee.seats[p];
    return u;
}

long long utility(const Election& election, int ballot_index, const Committee& committee) {
    if (ballot_index < 0 || ballot_index >= static_cast<int>(election.ballots.size()))
        throw StructuralError("ballot index out of range");
    if (static_cast<int>(committee.seats.size()) != election.num_parties())
        throw StructuralError("committee indexed over a different party set");
    return class_utility(election.ballots[ballot_index], committee);
}

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

void check_party_name(const std::string& name) {
    if (name.empty()) throw ParseError("empty party name");
    for (char c : name)
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '=' || c == '#')
            throw ParseError("party name contains reserved character: " + name);
}

} // namespace

Election parse_election(const std::string& text) {
    Election e;
    e.k = 0;
    std::istringstream in(text);
    std::string raw;
    int stage = 0; // 0: expect parties, 1: expect k, 2: ballots
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string line = strip(raw);
        if (line.empty()) continue;
        const std::string where = " (line " + std::to_string(lineno) + ")";
        if (stage == 0) {
            if (line.rfind("parties:", 0) != 0) throw ParseError("expected 'parties:' line" + where);
            std::istringstream fields(line.substr(8));
            std::string name;
            while (fields >> name) {
                check_party_name(name);
                if (e.party_index(name) >= 0) throw ParseError("duplicate party name: " + name + where);
                e.parties.push_back(name);
            }
            if (e.parties.empty()) throw ParseError("no parties declared" + where);
            stage = 1;
        } else if (stage == 1) {
            if (line.rfind("k:", 0) != 0) throw ParseError("expected 'k:' line" + where);
            try {
                size_t pos = 0;
                std::string val = strip(line.substr(2));
                long parsed = std::stol(val, &pos);
                if (pos != val.size()) throw std::invalid_argument(val);
                e.k = static_cast<int>(parsed);
            } catch (const std::exception&) {
                throw ParseError("malformed committee size" + where);
            }
            if (e.k < 1) throw ParseError("committee size must be >= 1" + where);
            stage = 2;
        } else {
            auto colon = line.find(':');
            if (colon == std::string::npos) throw ParseError("expected '<multiplicity> : <ballot>'" + where);
            long long mult = 0;
            try {
                size_t pos = 0;
                std::string val = strip(line.substr(0, colon));
                mult = std::stoll(val, &pos);
                if (pos != val.size()) throw std::invalid_argument(val);
            } catch (const std::exception&) {
                throw ParseError("malformed multiplicity" + where);
            }
            if (mult < 1) throw ParseError("multiplicity must be >= 1" + where);
            BallotClass ballot;
            ballot.multiplicity = mult;
            for (const std::string& piece : split(line.substr(colon + 1), ',')) {
                std::string name = strip(piece);
                if (name.empty()) throw ParseError("empty party name in ballot" + where);
                int idx = e.party_index(name);
                if (idx < 0) throw ParseError("ballot names undeclared party: " + name + where);
                ballot.parties.push_back(idx);
            }
            std::sort(ballot.parties.begin(), ballot.parties.end());
            ballot.parties.erase(std::unique(ballot.parties.begin(), ballot.parties.end()),
                                 ballot.parties.end());
            if (ballot.parties.empty()) throw ParseError("empty approval set" + where);
            e.ballots.push_back(std::move(ballot));
        }
    }
    if (stage < 2) throw ParseError("ballot file truncated before ballots");
    if (e.ballots.empty()) throw ParseError("ballot file contains no ballots");
    e.validate();
    return e;
}

std::string serialize_election(const Election& e) {
    std::ostringstream out;
    out << "parties:";
    for (const auto& name : e.parties) out << ' ' << name;
    out << "\nk: " << e.k << '\n';
    for (const auto& b : e.ballots) {
        out << b.multiplicity << " : ";
        for (size_t i = 0; i < b.parties.size(); ++i) {
            if (i) out << ',';
            out << e.parties[b.parties[i]];
        }
        out << '\n';
    }
    return out.str();
}

std::string format_committee(const Election& e, const Committee& w) {
    std::ostringstream out;
    bool first = true;
    for (int p = 0; p < e.num_parties(); ++p) {
        if (w.seats[p] == 0) continue;
        if (!first) out << ' ';
        out << e.parties[p] << '=' << w.seats[p];
        first = false;
    }
    if (first) out << "(empty)";
    return out.str();
}

std::string format_portioning(const Election& e, const Portioning& r) {
    std::ostringstream out;
    for (int p = 0; p < e.num_parties(); ++p) {
        if (p) out << ' ';
        out << e.parties[p] << '=';
        if (r.is_exact())
            out << rat_to_string(r.exact_shares[p]);
        else
            out << r.approx_shares[p];
    }
    return out.str();
}

Committee parse_committee(const Election& e, const std::string& text) {
    Committee w = Committee::zero(e.num_parties());
    std::string normalized = text;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream in(normalized);
    std::string item;
    while (in >> item) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("expected <party>=<seats>: " + item);
        std::string name = item.substr(0, eq);
        int idx = e.party_index(name);
        if (idx < 0) throw ParseError("unknown party in committee: " + name);
        int seats = 0;
        try {
            size_t pos = 0;
            seats = std::stoi(item.substr(eq + 1), &pos);
            if (pos != item.size() - eq - 1) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ParseError("malformed seat count: " + item);
        }
        if (seats < 0) throw ParseError("negative seat count: " + item);
        w.seats[idx] += seats;
    }
    if (w.total() != e.k)
        throw StructuralError("committee has " + std::to_string(w.total()) +
                              " seats, expected k=" + std::to_string(e.k));
    return w;
}

} // namespace papp
