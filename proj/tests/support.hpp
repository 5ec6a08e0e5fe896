#pragma once

// Shared test utilities: independent oracles for derived expectations, tiny
// graph enumeration for the reduction sweeps, and a CLI harness. Everything
// here is deliberately written against the definitions, not the library
// implementations it is used to check.

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "papp/axioms.hpp"
#include "papp/embedding.hpp"
#include "papp/instances.hpp"
#include "papp/model.hpp"
#include "papp/rng.hpp"

namespace testutil {

using papp::Committee;
using papp::Election;
using papp::Rat;

// ---- random-priority oracle: definition-level permutation average ----

inline std::vector<Rat> rp_oracle(const Election& e) {
    std::vector<std::set<int>> ballots;
    for (const auto& b : e.ballots)
        for (long long i = 0; i < b.multiplicity; ++i)
            ballots.emplace_back(b.parties.begin(), b.parties.end());
    const int n = static_cast<int>(ballots.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<Rat> total(e.num_parties(), Rat(0));
    long long perms = 0;
    do {
        std::set<int> feasible;
        for (int p = 0; p < e.num_parties(); ++p) feasible.insert(p);
        for (int v : order) {
            std::set<int> cut;
            std::set_intersection(feasible.begin(), feasible.end(), ballots[v].begin(),
                                  ballots[v].end(), std::inserter(cut, cut.begin()));
            if (!cut.empty()) feasible = cut;
        }
        for (int p : feasible) total[p] += Rat(1, static_cast<long long>(feasible.size()));
        ++perms;
    } while (std::next_permutation(order.begin(), order.end()));
    for (auto& share : total) share /= perms;
    return total;
}

// ---- EJR oracle: direct Definition-1 subset scan over expanded voters ----

inline bool ejr_defscan_passes(const Election& e, const Committee& w) {
    std::vector<uint64_t> approvals; // per expanded voter
    std::vector<long long> utility;
    for (const auto& b : e.ballots) {
        uint64_t mask = 0;
        long long u = 0;
        for (int p : b.parties) {
            mask |= uint64_t(1) << p;
            u += w.seats[p];
        }
        for (long long i = 0; i < b.multiplicity; ++i) {
            approvals.push_back(mask);
            utility.push_back(u);
        }
    }
    const int n = static_cast<int>(approvals.size());
    for (uint64_t subset = 1; subset < (uint64_t(1) << n); ++subset) {
        uint64_t common = ~uint64_t(0);
        long long size = 0;
        for (int v = 0; v < n; ++v)
            if (subset & (uint64_t(1) << v)) {
                common &= approvals[v];
                ++size;
            }
        if (common == 0) continue;
        long long q = papp::quota(size, n, e.k);
        if (q == 0) continue;
        bool all_below = true;
        for (int v = 0; v < n && all_below; ++v)
            if (subset & (uint64_t(1) << v)) all_below = utility[v] < q;
        if (all_below) return false;
    }
    return true;
}

// ---- embedding-based rule oracles ----

// Greedy PAV over individual clones; equals seq_pav by clone symmetry.
inline Committee seq_pav_embedding_oracle(const Election& e) {
    const int candidates = e.num_parties() * e.k;
    std::vector<bool> chosen(candidates, false);
    std::vector<long long> utility(e.ballots.size(), 0);
    Committee w = Committee::zero(e.num_parties());
    for (int round = 0; round < e.k; ++round) {
        int best = -1;
        Rat best_gain;
        for (int c = 0; c < candidates; ++c) {
            if (chosen[c]) continue;
            int party = c / e.k;
            Rat gain = 0;
            for (size_t cls = 0; cls < e.ballots.size(); ++cls)
                if (e.ballots[cls].approves(party))
                    gain += Rat(e.ballots[cls].multiplicity, utility[cls] + 1);
            if (best < 0 || best_gain < gain) {
                best = c;
                best_gain = gain;
            }
        }
        chosen[best] = true;
        int party = best / e.k;
        ++w.seats[party];
        for (size_t cls = 0; cls < e.ballots.size(); ++cls)
            if (e.ballots[cls].approves(party)) ++utility[cls];
    }
    return w;
}

// Top-k candidates by (score desc, candidate index asc).
inline Committee score_topk_embedding_oracle(const Election& e, const std::vector<Rat>& score) {
    const int candidates = e.num_parties() * e.k;
    std::vector<int> order(candidates);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const Rat& sa = score[a / e.k];
        const Rat& sb = score[b / e.k];
        if (sa != sb) return sb < sa;
        return a < b;
    });
    Committee w = Committee::zero(e.num_parties());
    for (int i = 0; i < e.k; ++i) ++w.seats[order[i] / e.k];
    return w;
}

// Exhaustive candidate-subset search in the clone embedding: enumerates all
// C(|P|k, k) candidate committees in lexicographic order and keeps the first
// optimum. The party-level exact rules must agree with its collapse, which
// pins the canonical tie-break (lexicographically smallest clone set).
template <class Value, class Eval>
inline Committee embedding_search_oracle(const Election& e, bool maximize, Eval eval) {
    papp::CandidateElection ce = papp::embed(e);
    std::vector<int> chosen;
    Committee best_committee;
    Value best_value{};
    bool found = false;
    auto rec = [&](auto&& self, int next) -> void {
        if (static_cast<int>(chosen.size()) == e.k) {
            Value v = eval(ce, chosen);
            if (!found || (maximize ? best_value < v : v < best_value)) {
                found = true;
                best_value = v;
                best_committee = papp::collapse(ce, chosen);
            }
            return;
        }
        int needed = e.k - static_cast<int>(chosen.size());
        for (int c = next; c + needed <= ce.num_candidates(); ++c) {
            chosen.push_back(c);
            self(self, c + 1);
            chosen.pop_back();
        }
    };
    rec(rec, 0);
    return best_committee;
}

// ---- tiny labeled/unlabeled graph enumeration for the reduction sweeps ----

struct SmallGraph {
    int vertices = 0;
    uint32_t edges = 0; // bit per vertex pair, pair_index order
};

inline const std::vector<std::vector<int>>& pair_table(int n) {
    static std::map<int, std::vector<std::vector<int>>> cache;
    auto [it, fresh] = cache.try_emplace(n);
    if (fresh) {
        it->second.assign(n, std::vector<int>(n, -1));
        int idx = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b, ++idx)
                it->second[a][b] = it->second[b][a] = idx;
    }
    return it->second;
}

inline papp::Graph to_graph(const SmallGraph& g) {
    papp::Graph out;
    out.vertices = g.vertices;
    int idx = 0;
    for (int a = 0; a < g.vertices; ++a)
        for (int b = a + 1; b < g.vertices; ++b, ++idx)
            if (g.edges & (uint32_t(1) << idx)) out.edges.emplace_back(a, b);
    return out;
}

inline bool is_connected(const SmallGraph& g) {
    if (g.vertices == 0) return false;
    papp::Graph full = to_graph(g);
    std::vector<std::vector<int>> adj(g.vertices);
    for (auto [u, v] : full.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<bool> seen(g.vertices, false);
    std::vector<int> stack = {0};
    seen[0] = true;
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = true;
                ++reached;
                stack.push_back(v);
            }
    }
    return reached == g.vertices;
}

// Per-permutation edge-bit relabeling maps, built once per vertex count.
inline const std::vector<std::vector<int>>& perm_edge_maps(int n) {
    static std::map<int, std::vector<std::vector<int>>> cache;
    auto [it, fresh] = cache.try_emplace(n);
    if (fresh) {
        const auto& pairs = pair_table(n);
        const int bits = n * (n - 1) / 2;
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::vector<int> map(bits);
            int idx = 0;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b, ++idx) map[idx] = pairs[perm[a]][perm[b]];
            it->second.push_back(std::move(map));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return it->second;
}

inline uint32_t canonical_edges(const SmallGraph& g) {
    uint32_t best = ~uint32_t(0);
    for (const auto& map : perm_edge_maps(g.vertices)) {
        uint32_t out = 0;
        for (uint32_t bits = g.edges; bits; bits &= bits - 1)
            out |= uint32_t(1) << map[__builtin_ctz(bits)];
        best = std::min(best, out);
    }
    return best;
}

/// Connected graphs on exactly v vertices, one representative per isomorphism
/// class. Exhaustive for v <= 6.
inline std::vector<papp::Graph> connected_graphs(int v) {
    const int pairs = v * (v - 1) / 2;
    std::set<uint32_t> canon;
    std::vector<papp::Graph> out;
    for (uint32_t mask = 0; mask < (uint32_t(1) << pairs); ++mask) {
        SmallGraph g{v, mask};
        if (!is_connected(g)) continue;
        if (canon.insert(canonical_edges(g)).second) out.push_back(to_graph(g));
    }
    return out;
}

// Backtracking isomorphism test; plenty for <= 8 vertices.
inline bool are_isomorphic(const papp::Graph& a, const papp::Graph& b) {
    if (a.vertices != b.vertices || a.edges.size() != b.edges.size()) return false;
    const int n = a.vertices;
    std::vector<std::vector<bool>> adj_a(n, std::vector<bool>(n, false));
    std::vector<std::vector<bool>> adj_b(n, std::vector<bool>(n, false));
    for (auto [u, v] : a.edges) adj_a[u][v] = adj_a[v][u] = true;
    for (auto [u, v] : b.edges) adj_b[u][v] = adj_b[v][u] = true;
    std::vector<int> map(n, -1);
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self, int vertex) -> bool {
        if (vertex == n) return true;
        for (int image = 0; image < n; ++image) {
            if (used[image] || a.degree(vertex) != b.degree(image)) continue;
            bool ok = true;
            for (int prev = 0; prev < vertex && ok; ++prev)
                ok = adj_a[prev][vertex] == adj_b[map[prev]][image];
            if (!ok) continue;
            map[vertex] = image;
            used[image] = true;
            if (self(self, vertex + 1)) return true;
            used[image] = false;
            map[vertex] = -1;
        }
        return false;
    };
    return rec(rec, 0);
}

/// All cubic graphs (not necessarily connected) on exactly v labeled vertices.
inline void cubic_graphs_rec(int v, int vertex, std::vector<int>& degree, SmallGraph& g,
                             std::vector<SmallGraph>& out) {
    if (vertex == v) {
        out.push_back(g);
        return;
    }
    const auto& pairs = pair_table(v);
    int need = 3 - degree[vertex];
    if (need < 0) return;
    std::vector<int> candidates;
    for (int u = vertex + 1; u < v; ++u)
        if (degree[u] < 3) candidates.push_back(u);
    std::vector<int> pick(std::max(need, 1), 0);
    auto choose = [&](auto&& self, int start, int depth) -> void {
        if (depth == need) {
            for (int i = 0; i < need; ++i) {
                g.edges |= uint32_t(1) << pairs[vertex][pick[i]];
                ++degree[pick[i]];
            }
            degree[vertex] = 3;
            cubic_graphs_rec(v, vertex + 1, degree, g, out);
            degree[vertex] = 3 - need;
            for (int i = 0; i < need; ++i) {
                g.edges &= ~(uint32_t(1) << pairs[vertex][pick[i]]);
                --degree[pick[i]];
            }
            return;
        }
        for (size_t c = start; c < candidates.size(); ++c) {
            if (degree[candidates[c]] >= 3) continue;
            pick[depth] = candidates[c];
            self(self, static_cast<int>(c) + 1, depth + 1);
        }
    };
    if (need == 0)
        cubic_graphs_rec(v, vertex + 1, degree, g, out);
    else
        choose(choose, 0, 0);
}

/// One representative per isomorphism class of cubic graphs on v vertices
/// (disconnected ones included). Dedupe by direct isomorphism tests against
/// the representatives found so far; the class count stays tiny.
inline std::vector<papp::Graph> cubic_graphs(int v) {
    std::vector<SmallGraph> labeled;
    std::vector<int> degree(v, 0);
    SmallGraph g{v, 0};
    cubic_graphs_rec(v, 0, degree, g, labeled);
    std::vector<papp::Graph> reps;
    for (const auto& lg : labeled) {
        papp::Graph candidate = to_graph(lg);
        bool fresh = true;
        for (const auto& rep : reps)
            if (are_isomorphic(candidate, rep)) {
                fresh = false;
                break;
            }
        if (fresh) reps.push_back(std::move(candidate));
    }
    return reps;
}

/// Brute-force independent-set existence.
inline bool has_independent_set(const papp::Graph& g, int t) {
    for (uint32_t subset = 0; subset < (uint32_t(1) << g.vertices); ++subset) {
        if (__builtin_popcount(subset) != t) continue;
        bool ok = true;
        for (auto [u, v] : g.edges)
            if ((subset & (uint32_t(1) << u)) && (subset & (uint32_t(1) << v))) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

// ---- misc generators ----

inline Committee random_committee(papp::Rng& rng, int parties, int k) {
    Committee w = Committee::zero(parties);
    for (int seat = 0; seat < k; ++seat) ++w.seats[rng.range(0, parties - 1)];
    return w;
}

inline papp::Portioning random_exact_portioning(papp::Rng& rng, int parties) {
    std::vector<long long> weights(parties);
    long long total = 0;
    for (auto& weight : weights) {
        weight = rng.range(0, 20);
        total += weight;
    }
    if (total == 0) {
        weights[0] = 1;
        total = 1;
    }
    std::vector<Rat> shares(parties);
    for (int p = 0; p < parties; ++p) shares[p] = Rat(weights[p], total);
    return papp::Portioning::make_exact(std::move(shares));
}

// ---- CLI harness ----

struct CliResult {
    int exit_code = -1;
    std::string output; // stdout only
};

inline CliResult run_cli(const std::string& args) {
#ifdef PAPP_CLI_PATH
    std::string command = std::string(PAPP_CLI_PATH) + " " + args + " 2>/dev/null";
    CliResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return result;
    char buffer[4096];
    size_t got;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, got);
    int status = pclose(pipe);
    result.exit_code = WEXITSTATUS(status);
    return result;
#else
    (void)args;
    throw std::runtime_error("CLI path not configured for this binary");
#endif
}

inline std::string write_temp(const std::string& name, const std::string& contents) {
    std::string path = std::string("/tmp/papp_test_") + name;
    FILE* file = fopen(path.c_str(), "w");
    if (!file) throw std::runtime_error("cannot write " + path);
    fwrite(contents.data(), 1, contents.size(), file);
    fclose(file);
    return path;
}

} // namespace testutil
