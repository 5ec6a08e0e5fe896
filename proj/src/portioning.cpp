#include "papp/portioning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "papp/errors.hpp"
#include "papp/rng.hpp"

namespace papp {

namespace {

// Fixed-width bitmask over parties.
struct Mask {
    std::vector<uint64_t> words;

    static Mask full(int bits) {
        Mask m;
        m.words.assign((bits + 63) / 64, ~0ull);
        int rem = bits % 64;
        if (rem) m.words.back() = (1ull << rem) - 1;
        return m;
    }
    static Mask of(const std::vector<int>& bits, int total) {
        Mask m;
        m.words.assign((total + 63) / 64, 0);
        for (int b : bits) m.words[b / 64] |= 1ull << (b % 64);
        return m;
    }
    bool intersect(const Mask& other, Mask& out) const {
        bool any = false;
        out.words.resize(words.size());
        for (size_t i = 0; i < words.size(); ++i) {
            out.words[i] = words[i] & other.words[i];
            any |= out.words[i] != 0;
        }
        return any;
    }
    int popcount() const {
        int c = 0;
        for (uint64_t w : words) c += __builtin_popcountll(w);
        return c;
    }
    template <class F>
    void for_each_bit(F&& f) const {
        for (size_t i = 0; i < words.size(); ++i)
            for (uint64_t w = words[i]; w; w &= w - 1)
                f(static_cast<int>(i * 64 + __builtin_ctzll(w)));
    }
};

std::vector<int> expand_voters(const Election& e) {
    std::vector<int> classes;
    classes.reserve(static_cast<size_t>(e.num_voters()));
    for (size_t c = 0; c < e.ballots.size(); ++c)
        for (long long i = 0; i < e.ballots[c].multiplicity; ++i)
            classes.push_back(static_cast<int>(c));
    return classes;
}

// One priority walk: the feasible set shrinks through each voter's ballot
// whenever the intersection stays nonempty; the final set gets the unit mass.
Mask priority_walk(const std::vector<Mask>& ballots, const std::vector<int>& order,
                   const std::vector<int>& voter_class, int parties) {
    Mask feasible = Mask::full(parties);
    Mask tmp;
    for (int v : order) {
        if (feasible.intersect(ballots[voter_class[v]], tmp)) std::swap(feasible, tmp);
    }
    return feasible;
}

} // namespace

Portioning conditional_utilitarian(const Election& e) {
    e.validate();
    const auto counts = e.approval_counts();
    std::vector<long long> assigned(e.num_parties(), 0);
    for (const auto& b : e.ballots) {
        int best = b.parties.front();
        for (int p : b.parties)
            if (counts[p] > counts[best]) best = p; // ties keep the lowest index
        assigned[best] += b.multiplicity;
    }
    const long long n = e.num_voters();
    std::vector<Rat> shares(e.num_parties());
    for (int p = 0; p < e.num_parties(); ++p) shares[p] = Rat(assigned[p], n);
    return Portioning::make_exact(std::move(shares));
}

Portioning random_priority_exact(const Election& e) {
    e.validate();
    const long long n = e.num_voters();
    if (n > 10)
        throw CapacityError("random_priority: exact mode enumerates n! orders and requires "
                            "n <= 10; use the sampled mode (--seed/--trials)",
                            "random_priority_sampled");
    const int parties = e.num_parties();
    std::vector<Mask> ballots;
    ballots.reserve(e.ballots.size());
    for (const auto& b : e.ballots) ballots.push_back(Mask::of(b.parties, parties));
    const std::vector<int> voter_class = expand_voters(e);

    // Accumulate integer numerators against L = lcm(1..parties): a final set of
    // size m contributes L/m to each member, so the grand total is exact.
    Int lcm_val = 1;
    for (int m = 1; m <= parties; ++m) lcm_val = boost::multiprecision::lcm(lcm_val, Int(m));
    std::vector<Int> share_of(parties, Int(0));
    std::vector<Int> contribution(parties + 1);
    for (int m = 1; m <= parties; ++m) contribution[m] = lcm_val / m;

    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    Int permutations = 0;
    do {
        Mask finals = priority_walk(ballots, order, voter_class, parties);
        const Int& unit = contribution[finals.popcount()];
        finals.for_each_bit([&](int p) { share_of[p] += unit; });
        ++permutations;
    } while (std::next_permutation(order.begin(), order.end()));

    const Int denom = permutations * lcm_val;
    std::vector<Rat> shares(parties);
    for (int p = 0; p < parties; ++p) shares[p] = Rat(share_of[p], denom);
    return Portioning::make_exact(std::move(shares));
}

Portioning random_priority_sampled(const Election& e, uint64_t seed, long long trials) {
    e.validate();
    if (trials < 1) throw StructuralError("random_priority: trials must be >= 1");
    const int parties = e.num_parties();
    std::vector<Mask> ballots;
    ballots.reserve(e.ballots.size());
    for (const auto& b : e.ballots) ballots.push_back(Mask::of(b.parties, parties));
    const std::vector<int> voter_class = expand_voters(e);

    Rng rng(seed);
    std::vector<int> order(voter_class.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> shares(parties, 0.0);
    for (long long t = 0; t < trials; ++t) {
        rng.shuffle(order);
        Mask finals = priority_walk(ballots, order, voter_class, parties);
        double unit = 1.0 / finals.popcount();
        finals.for_each_bit([&](int p) { shares[p] += unit; });
    }
    double total = 0;
    for (double& s : shares) {
        s /= static_cast<double>(trials);
        total += s;
    }
    for (double& s : shares) s /= total;
    return Portioning::make_approx(std::move(shares));
}

Portioning nash(const Election& e, const NashOptions& options) {
    e.validate();
    if (options.tolerance <= 0) throw StructuralError("nash: tolerance must be positive");
    const int parties = e.num_parties();
    const double n = static_cast<double>(e.num_voters());

    std::vector<double> share(parties, 1.0 / parties);
    std::vector<double> grad(parties);
    double residual = 0;

    // Multiplicative fixed-point update r_p <- r_p * grad_p / n. The gradient of
    // the log-welfare satisfies sum_p r_p grad_p = n at every simplex point, so
    // the iterate stays on the simplex and the welfare never decreases. The KKT
    // conditions (grad_p = n on the support, <= n off it) are the fixed points.
    for (long long iter = 0; iter < options.max_iterations; ++iter) {
        std::fill(grad.begin(), grad.end(), 0.0);
        for (const auto& b : e.ballots) {
            double got = 0;
            for (int p : b.parties) got += share[p];
            const double rate = static_cast<double>(b.multiplicity) / got;
            for (int p : b.parties) grad[p] += rate;
        }
        residual = 0;
        for (int p = 0; p < parties; ++p) {
            double gap = grad[p] - n;
            residual = std::max(residual, std::max(0.0, gap) + share[p] * std::abs(gap));
        }
        residual /= n;
        if (residual <= options.tolerance) {
            double total = std::accumulate(share.begin(), share.end(), 0.0);
            for (double& s : share) s /= total;
            return Portioning::make_approx(std::move(share));
        }
        double total = 0;
        for (int p = 0; p < parties; ++p) {
            share[p] *= grad[p] / n;
            total += share[p];
        }
        for (double& s : share) s /= total;
    }
    throw NumericalError("nash: iteration cap reached at KKT residual " + std::to_string(residual),
                         residual);
}

Portioning majoritarian(const Election& e) {
    e.validate();
    const int parties = e.num_parties();
    const long long n = e.num_voters();
    std::vector<bool> class_active(e.ballots.size(), true);
    std::vector<bool> party_active(parties, true);
    std::vector<long long> won(parties, 0);

    long long remaining = n;
    while (remaining > 0) {
        std::vector<long long> counts(parties, 0);
        for (size_t c = 0; c < e.ballots.size(); ++c)
            if (class_active[c])
                for (int p : e.ballots[c].parties)
                    if (party_active[p]) counts[p] += e.ballots[c].multiplicity;
        int winner = -1;
        for (int p = 0; p < parties; ++p)
            if (party_active[p] && counts[p] > 0 && (winner < 0 || counts[p] > counts[winner]))
                winner = p;
        if (winner < 0) throw StructuralError("majoritarian: active voters without active party");
        won[winner] = counts[winner];
        party_active[winner] = false;
        for (size_t c = 0; c < e.ballots.size(); ++c)
            if (class_active[c] && e.ballots[c].approves(winner)) {
                class_active[c] = false;
                remaining -= e.ballots[c].multiplicity;
            }
    }

    std::vector<Rat> shares(parties);
    for (int p = 0; p < parties; ++p) shares[p] = Rat(won[p], n);
    return Portioning::make_exact(std::move(shares));
}

} // namespace papp
