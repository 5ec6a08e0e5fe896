#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace papp {

/// Dinic max-flow with integer capacities. Small and deterministic: arcs are
/// explored in insertion order, so min cuts (and the witnesses derived from
/// them) are reproducible.
class MaxFlow {
public:
    explicit MaxFlow(int nodes) : head_(nodes, -1), level_(nodes), iter_(nodes) {}

    static constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

    int add_edge(int from, int to, long long cap) {
        int id = static_cast<int>(to_.size());
        to_.push_back(to);
        cap_.push_back(cap);
        next_.push_back(head_[from]);
        head_[from] = id;
        to_.push_back(from);
        cap_.push_back(0);
        next_.push_back(head_[to]);
        head_[to] = id + 1;
        return id;
    }

    long long max_flow(int s, int t) {
        long long flow = 0;
        while (bfs(s, t)) {
            iter_ = head_;
            while (long long pushed = dfs(s, t, kInf)) flow += pushed;
        }
        return flow;
    }

    /// After max_flow: nodes reachable from s in the residual graph.
    std::vector<bool> source_side(int s) const {
        std::vector<bool> seen(head_.size(), false);
        std::queue<int> queue;
        queue.push(s);
        seen[s] = true;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop();
            for (int id = head_[u]; id != -1; id = next_[id]) {
                if (cap_[id] > 0 && !seen[to_[id]]) {
                    seen[to_[id]] = true;
                    queue.push(to_[id]);
                }
            }
        }
        return seen;
    }

private:
    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> queue;
        queue.push(s);
        level_[s] = 0;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop();
            for (int id = head_[u]; id != -1; id = next_[id]) {
                if (cap_[id] > 0 && level_[to_[id]] < 0) {
                    level_[to_[id]] = level_[u] + 1;
                    queue.push(to_[id]);
                }
            }
        }
        return level_[t] >= 0;
    }

    long long dfs(int u, int t, long long limit) {
        if (u == t) return limit;
        for (int& id = iter_[u]; id != -1; id = next_[id]) {
            int v = to_[id];
            if (cap_[id] <= 0 || level_[v] != level_[u] + 1) continue;
            long long pushed = dfs(v, t, std::min(limit, cap_[id]));
            if (pushed > 0) {
                cap_[id] -= pushed;
                cap_[id ^ 1] += pushed;
                return pushed;
            }
        }
        return 0;
    }

    std::vector<int> head_, to_, next_, level_, iter_;
    std::vector<long long> cap_;
};

} // namespace papp
