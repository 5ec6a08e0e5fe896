#include "papp/instances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "papp/axioms.hpp"
#include "papp/errors.hpp"
#include "papp/portioning.hpp"
#include "papp/rng.hpp"

namespace papp {

int Graph::degree(int v) const {
    int d = 0;
    for (const auto& [a, b] : edges) d += (a == v) + (b == v);
    return d;
}

int Graph::max_degree() const {
    int best = 0;
    for (int v = 0; v < vertices; ++v) best = std::max(best, degree(v));
    return best;
}

bool Graph::is_cubic() const {
    for (int v = 0; v < vertices; ++v)
        if (degree(v) != 3) return false;
    return vertices > 0;
}

void Graph::validate() const {
    if (vertices < 1) throw StructuralError("graph needs at least one vertex");
    std::set<std::pair<int, int>> seen;
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= vertices || v >= vertices)
            throw StructuralError("edge endpoint out of range");
        if (u == v) throw StructuralError("self-loop in graph");
        if (u > v) throw StructuralError("edge not normalized (u < v)");
        if (!seen.insert({u, v}).second) throw StructuralError("duplicate edge");
    }
}

Graph parse_graph(const std::string& text) {
    Graph g;
    std::istringstream in(text);
    std::string raw;
    bool have_header = false;
    while (std::getline(in, raw)) {
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::istringstream line(raw);
        if (!have_header) {
            std::string tag;
            if (!(line >> tag)) continue;
            if (tag != "vertices:") throw ParseError("expected 'vertices: <count>'");
            if (!(line >> g.vertices)) throw ParseError("malformed vertex count");
            have_header = true;
            continue;
        }
        int u, v;
        if (!(line >> u)) continue;
        if (!(line >> v)) throw ParseError("dangling edge endpoint");
        if (u > v) std::swap(u, v);
        g.edges.emplace_back(u, v);
    }
    if (!have_header) throw ParseError("graph file missing 'vertices:' header");
    g.validate();
    return g;
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << "vertices: " << g.vertices << '\n';
    for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
    return out.str();
}

// ---- worked-example corpus ----

namespace {

Election build(std::vector<std::string> parties, int k,
               std::vector<std::pair<long long, std::vector<int>>> classes) {
    Election e;
    e.parties = std::move(parties);
    e.k = k;
    for (auto& [mult, approved] : classes) {
        BallotClass b;
        b.multiplicity = mult;
        std::sort(approved.begin(), approved.end());
        b.parties = std::move(approved);
        e.ballots.push_back(std::move(b));
    }
    e.validate();
    return e;
}

std::vector<std::string> numbered(const std::string& prefix, int from, int to) {
    std::vector<std::string> names;
    for (int i = from; i <= to; ++i) names.push_back(prefix + std::to_string(i));
    return names;
}

struct ExampleSpec {
    bool parameterized = false;
    int default_k = 0;
    int threshold_k = 0;
};

const std::map<std::string, ExampleSpec>& example_specs() {
    static const std::map<std::string, ExampleSpec> specs = {
        {"ex1", {false, 6, 6}},
        {"ex2", {false, 6, 6}},
        {"ex3", {false, 16, 16}},
        {"seqpav-jr", {true, 10, 10}},
        {"av-jr", {true, 3, 3}},
        {"mav-jr", {true, 3, 3}},
        {"seqphragmen-ejr", {true, 282, 282}},
        {"seqphragmen-ejr-restricted", {false, 5, 5}},
        {"stv-ejr", {true, 18, 18}},
        {"stv-ejr-restricted", {false, 7, 7}},
        {"greedyav-pjr", {true, 3, 3}},
        {"monroe-pjr", {true, 6, 6}},
    };
    return specs;
}

} // namespace

std::vector<std::string> worked_example_ids() {
    std::vector<std::string> ids;
    for (const auto& [id, spec] : example_specs()) ids.push_back(id);
    return ids;
}

WorkedExample worked_example(const std::string& id, std::optional<int> k_override) {
    auto it = example_specs().find(id);
    if (it == example_specs().end()) throw StructuralError("unknown example id: " + id);
    const ExampleSpec& spec = it->second;
    if (k_override && !spec.parameterized)
        throw StructuralError("example " + id + " is not parameterized by k");
    const int k = k_override.value_or(spec.default_k);
    if (k < 1) throw StructuralError("example k must be >= 1");

    WorkedExample out;
    out.id = id;
    out.below_threshold = k < spec.threshold_k;

    if (id == "ex1") {
        out.election = build({"p0", "p1", "p2", "p3"}, 6,
                             {{2, {0}}, {2, {0, 1, 2}}, {1, {1, 3}}, {1, {2, 3}}});
    } else if (id == "ex2") {
        out.election = build({"p0", "p1", "p2", "p3"}, 6,
                             {{2, {0}}, {1, {0, 1, 2}}, {1, {0, 1, 3}}, {1, {1}}, {1, {2, 3}}});
    } else if (id == "ex3") {
        out.election = build({"p0", "p1", "p2", "p3", "p4"}, 16,
                             {{4, {0, 1}}, {3, {1, 2}}, {1, {2}}, {4, {0, 3}}, {3, {3, 4}},
                              {1, {4}}});
    } else if (id == "seqpav-jr") {
        // P1..P11 plus one extra singleton party (and 120 voters) per seat past 10.
        std::vector<std::string> parties = numbered("P", 1, k + 1);
        std::vector<std::pair<long long, std::vector<int>>> classes = {
            {81, {0, 1}},  {81, {0, 2}}, {80, {1}},  {80, {2}},    {81, {3, 4}},
            {81, {3, 5}},  {80, {4}},    {80, {5}},  {49, {6, 7}}, {49, {6, 8}},
            {49, {6, 9}},  {96, {7}},    {96, {8}},  {96, {9}},    {120, {10}},
        };
        for (int j = 11; j <= k; ++j) classes.push_back({120, {j}});
        out.election = build(std::move(parties), k, std::move(classes));
    } else if (id == "av-jr") {
        out.election = build({"A", "B"}, k, {{2LL * k, {0}}, {k, {1}}});
    } else if (id == "mav-jr") {
        out.election = build({"A", "B", "C", "D"}, k, {{k, {0, 1, 2}}, {k, {3}}});
    } else if (id == "seqphragmen-ejr") {
        out.election = build({"A", "B", "C", "D", "E", "X"}, k,
                             {{1, {0, 5}},
                              {1, {1, 5}},
                              {1, {2, 5}},
                              {1, {3, 5}},
                              {7, {0, 1, 2, 3}},
                              {2LL * k - 11, {4}}});
    } else if (id == "seqphragmen-ejr-restricted") {
        out.election = build({"A", "B", "C", "D", "X"}, 5,
                             {{1, {0, 4}}, {1, {1, 4}}, {1, {2, 4}}, {1, {3, 4}},
                              {7, {0, 1, 2, 3}}});
    } else if (id == "stv-ejr") {
        std::vector<std::string> parties = {"A"};
        for (const auto& name : numbered("X", 1, k)) parties.push_back(name);
        std::vector<std::pair<long long, std::vector<int>>> classes = {
            {120, {0, 1}}, {120, {0, 2}}, {122, {1, 3}}, {70, {2, 4}},
            {120, {4, 5}}, {121, {5, 6}}, {61, {3}},     {50, {4}},
            {65, {6}},
        };
        for (int j = 7; j <= 15; ++j) classes.push_back({109, {j}});
        for (int j = 16; j <= 18; ++j) classes.push_back({110, {j}});
        for (int j = 19; j <= k; ++j) classes.push_back({120, {j}});
        out.election = build(std::move(parties), k, std::move(classes));
    } else if (id == "stv-ejr-restricted") {
        out.election = build({"A", "X1", "X2", "X3", "X4", "X5", "X6"}, 7,
                             {{120, {0, 1}},
                              {120, {0, 2}},
                              {122, {1, 3}},
                              {70, {2, 4}},
                              {120, {4, 5}},
                              {121, {5, 6}},
                              {61, {3}},
                              {50, {4}},
                              {65, {6}}});
    } else if (id == "greedyav-pjr") {
        std::vector<std::string> parties = {"A"};
        for (const auto& name : numbered("X", 1, k)) parties.push_back(name);
        std::vector<std::pair<long long, std::vector<int>>> classes;
        for (int j = 1; j <= k; ++j) classes.push_back({1, {j}});
        classes.push_back({2LL * k, {0}});
        out.election = build(std::move(parties), k, std::move(classes));
    } else if (id == "monroe-pjr") {
        std::vector<std::string> parties = {"A"};
        for (const auto& name : numbered("X", 1, k - 3)) parties.push_back(name);
        std::vector<std::pair<long long, std::vector<int>>> classes = {{6, {0}}};
        for (int j = 1; j <= k - 3; ++j) classes.push_back({1, {j}});
        out.election = build(std::move(parties), k, std::move(classes));
    }
    return out;
}

// ---- golden checks ----

namespace {

bool shares_equal(const Portioning& got, const std::vector<Rat>& expected) {
    if (!got.is_exact() || got.exact_shares != expected) return false;
    return true;
}

bool shares_close(const Portioning& got, const std::vector<double>& expected, double tol) {
    if (got.is_exact() || got.approx_shares.size() != expected.size()) return false;
    for (size_t i = 0; i < expected.size(); ++i)
        if (std::abs(got.approx_shares[i] - expected[i]) > tol) return false;
    return true;
}

bool seats_are(const Committee& got, const std::vector<int>& expected) {
    return got.seats == expected;
}

std::string sig_digits(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

std::string two_decimals(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

} // namespace

std::vector<GoldenCheck> run_golden_checks(const std::string& id, std::optional<int> k_override,
                                           const RuleOptions& options) {
    WorkedExample example = worked_example(id, k_override);
    const Election& e = example.election;
    const int k = e.k;
    std::vector<GoldenCheck> checks;
    auto add = [&](const std::string& name, bool pass) { checks.push_back({name, pass}); };

    if (id == "ex1") {
        Portioning cu = conditional_utilitarian(e);
        add("conditional utilitarian shares (4/6,1/6,1/6,0)",
            shares_equal(cu, {Rat(4, 6), Rat(1, 6), Rat(1, 6), Rat(0)}));
        Committee w = dhondt(cu, k);
        add("cu+dhondt committee (4,1,1,0)", seats_are(w, {4, 1, 1, 0}));
        AxiomVerdict ejr = check_ejr(e, w);
        add("ejr fails with witness (p3, l=2)",
            !ejr.pass && ejr.witness && ejr.witness->party == 3 && ejr.witness->level == 2 &&
                validate_witness(e, w, ejr));
        add("jr passes", check_jr(e, w).pass);
    } else if (id == "ex2") {
        Portioning rp = random_priority_exact(e);
        add("random priority shares (23/45,23/90,7/60,7/60)",
            shares_equal(rp, {Rat(23, 45), Rat(23, 90), Rat(7, 60), Rat(7, 60)}));
        NashOptions nash_options;
        nash_options.tolerance = options.nash_tolerance;
        Portioning nw = nash(e, nash_options);
        add("nash shares ~ (0.5302,0.2651,0.1023,0.1023) within 1e-3",
            shares_close(nw, {0.5302, 0.2651, 0.1023, 0.1023}, 1e-3));
        Committee expected(std::vector<int>{4, 2, 0, 0});
        add("rp+dhondt committee (4,2,0,0)", dhondt(rp, k) == expected);
        add("rp+quota committee (4,2,0,0)", quota_method(rp, k) == expected);
        add("nash+dhondt committee (4,2,0,0)", dhondt(nw, k) == expected);
        add("nash+quota committee (4,2,0,0)", quota_method(nw, k) == expected);
        add("ejr fails on (4,2,0,0)", !check_ejr(e, expected).pass);
    } else if (id == "ex3") {
        Portioning maj = majoritarian(e);
        add("majoritarian shares (1/2,0,1/4,0,1/4)",
            shares_equal(maj, {Rat(1, 2), Rat(0), Rat(1, 4), Rat(0), Rat(1, 4)}));
        Committee w = dhondt(maj, k);
        add("maj+dhondt committee (8,0,4,0,4)", seats_are(w, {8, 0, 4, 0, 4}));
        add("maj+quota committee (8,0,4,0,4)", seats_are(quota_method(maj, k), {8, 0, 4, 0, 4}));
        AxiomVerdict core = check_core_bruteforce(e, w, options.search);
        add("core fails with |S|=14, |T|=14",
            !core.pass && core.witness && coalition_size(*core.witness) == 14 &&
                core.witness->deviation && core.witness->deviation->total() == 14 &&
                validate_witness(e, w, core));
        add("ejr passes on (8,0,4,0,4)", check_ejr(e, w).pass);
        add("pav committee core-stable",
            check_core_bruteforce(e, pav_exact(e, options.search), options.search).pass);
        add("lspav committee core-stable",
            check_core_bruteforce(e, ls_pav(e), options.search).pass);
    } else if (id == "seqpav-jr") {
        Committee w = seq_pav(e);
        bool shape = true;
        for (int p = 0; p < 10; ++p) shape &= w.seats[p] == 1;
        for (int p = 10; p < k; ++p) shape &= w.seats[p] == 1;
        shape &= w.seats[k] == 0; // parties P1..P(k+1); the last one is left out
        add("seqpav seats one each to P1..P" + std::to_string(k), shape);
        AxiomVerdict jr = check_jr(e, w);
        add("jr fails (unrepresented singleton bloc)",
            !jr.pass && jr.witness && validate_witness(e, w, jr));
    } else if (id == "av-jr") {
        Committee wa = av(e);
        Committee ws = sav(e);
        add("av gives all seats to A", seats_are(wa, {k, 0}));
        add("sav gives all seats to A", seats_are(ws, {k, 0}));
        AxiomVerdict jra = check_jr(e, wa);
        add("jr fails for av (B-voters)",
            !jra.pass && jra.witness && jra.witness->party == 1 && validate_witness(e, wa, jra));
        add("jr fails for sav", !check_jr(e, ws).pass);
    } else if (id == "mav-jr") {
        Committee w = mav_exact(e, options.search);
        add("mav gives all seats to A", seats_are(w, {k, 0, 0, 0}));
        AxiomVerdict jr = check_jr(e, w);
        add("jr fails for mav (D-voters)",
            !jr.pass && jr.witness && jr.witness->party == 3 && validate_witness(e, w, jr));
    } else if (id == "seqphragmen-ejr") {
        Committee w = seq_phragmen(e);
        std::vector<int> expected = {1, 1, 1, 1, k - 4, 0};
        add("seqphragmen: one seat each to A,B,C,D and " + std::to_string(k - 4) + " to E",
            seats_are(w, expected));
        AxiomVerdict ejr = check_ejr(e, w);
        add("ejr fails (X, l=2)",
            !ejr.pass && ejr.witness && ejr.witness->party == 5 && ejr.witness->level == 2 &&
                validate_witness(e, w, ejr));
    } else if (id == "seqphragmen-ejr-restricted") {
        auto steps = seq_phragmen_steps(e);
        const std::vector<std::string> bids = {"0.125", "0.23438", "0.33008", "0.41382",
                                               "0.50272"};
        const std::vector<int> winners = {0, 1, 2, 3, 0}; // A, B, C, D, A
        bool match = steps.size() == 5;
        for (size_t i = 0; match && i < 5; ++i)
            match = steps[i].party == winners[i] &&
                    sig_digits(to_double(steps[i].bid), 5) == bids[i];
        add("five winning bids match the traced values to 5 significant digits", match);
        add("exact bids are (1/8,15/64,169/512,1695/4096,16473/32768)",
            steps.size() == 5 && steps[0].bid == Rat(1, 8) && steps[1].bid == Rat(15, 64) &&
                steps[2].bid == Rat(169, 512) && steps[3].bid == Rat(1695, 4096) &&
                steps[4].bid == Rat(16473, 32768));
    } else if (id == "stv-ejr") {
        Committee w = phragmen_stv(e);
        bool shape = w.seats[0] == 0;
        for (int p = 1; p <= k; ++p) shape &= w.seats[p] == 1;
        add("phragmen-stv: one seat each to X1..X" + std::to_string(k) + ", none to A", shape);
        AxiomVerdict ejr = check_ejr(e, w);
        add("ejr fails (A, l=2)",
            !ejr.pass && ejr.witness && ejr.witness->party == 0 && ejr.witness->level == 2 &&
                validate_witness(e, w, ejr));
    } else if (id == "stv-ejr-restricted") {
        auto steps = phragmen_stv_steps(e);
        const std::vector<std::string> scores = {"242.00", "241.00", "190.00", "134.92",
                                                 "125.11", "121.86", "103.26"};
        const std::vector<int> winners = {1, 5, 2, 4, 6, 3, 0}; // X1,X5,X2,X4,X6,X3,A
        bool match = steps.size() == 7;
        for (size_t i = 0; match && i < 7; ++i)
            match = steps[i].party == winners[i] &&
                    two_decimals(to_double(steps[i].score)) == scores[i];
        add("seven winning scores match the traced values to 2 decimals", match);
    } else if (id == "greedyav-pjr") {
        Committee wg = greedy_av(e);
        std::vector<int> expected(e.num_parties(), 0);
        expected[0] = 1;
        for (int j = 1; j < k; ++j) expected[j] = 1;
        add("greedyav: one seat to A, then X1..X" + std::to_string(k - 1), seats_are(wg, expected));
        add("ccav selects the same committee", cc_av_exact(e, options.search) == wg);
        AxiomVerdict pjr = check_pjr_mincut(e, wg);
        add("pjr fails via min-cut (A-voters)",
            !pjr.pass && pjr.witness && pjr.witness->party == 0 &&
                pjr.witness->level == quota(2LL * k, e.num_voters(), k) &&
                validate_witness(e, wg, pjr));
        add("pjr brute-force agrees", e.num_voters() <= 14 ? !check_pjr_bruteforce(e, wg).pass
                                                           : true);
    } else if (id == "monroe-pjr") {
        std::vector<int> expected(e.num_parties(), 0);
        expected[0] = 3;
        for (int j = 1; j <= k - 3; ++j) expected[j] = 1;
        Committee wh = hare_av(e);
        Committee wg = greedy_monroe(e);
        add("hareav: A receives 3 seats", seats_are(wh, expected));
        add("greedymonroe: A receives 3 seats", seats_are(wg, expected));
        add("monroe: A receives 3 seats", monroe_exact(e, options.search) == wh);
        AxiomVerdict pjr = check_pjr_mincut(e, wh);
        add("pjr fails via min-cut (A-voters, l=" +
                std::to_string(quota(6, e.num_voters(), k)) + ")",
            !pjr.pass && pjr.witness && pjr.witness->party == 0 && validate_witness(e, wh, pjr));
        add("pjr brute-force agrees", e.num_voters() <= 14 ? !check_pjr_bruteforce(e, wh).pass
                                                           : true);
    }
    return checks;
}

// ---- reductions ----

std::pair<Election, Rat> reduce_is_to_pav(const Graph& g, int t) {
    g.validate();
    if (t < 1 || t > g.vertices) throw StructuralError("independent-set size t out of range");
    if (g.edges.empty())
        throw StructuralError("reduction needs at least one edge (elections need voters)");
    const int maxdeg = g.max_degree();
    Election e;
    for (int v = 0; v < g.vertices; ++v) e.parties.push_back("v" + std::to_string(v));
    e.k = t;
    for (const auto& [u, v] : g.edges) e.ballots.push_back({{u, v}, 1});
    for (int v = 0; v < g.vertices; ++v) {
        long long dummies = maxdeg - g.degree(v);
        if (dummies > 0) e.ballots.push_back({{v}, dummies});
    }
    e.validate();
    return {std::move(e), Rat(static_cast<long long>(maxdeg) * t)};
}

Election reduce_is_to_maxphragmen(const Graph& g, int t, bool require_cubic) {
    g.validate();
    if (require_cubic && !g.is_cubic())
        throw StructuralError("maxphragmen reduction requires a cubic graph");
    if (t < 1 || t > g.vertices) throw StructuralError("independent-set size t out of range");
    if (g.edges.empty())
        throw StructuralError("reduction needs at least one edge (elections need voters)");
    Election e;
    for (int v = 0; v < g.vertices; ++v) e.parties.push_back("v" + std::to_string(v));
    e.k = t;
    for (const auto& [u, v] : g.edges) e.ballots.push_back({{u, v}, 1});
    e.validate();
    return e;
}

// ---- random instances ----

BallotModel ballot_model_from_name(const std::string& name) {
    if (name == "uniform") return BallotModel::uniform;
    if (name == "blocks") return BallotModel::blocks;
    if (name == "clustered") return BallotModel::clustered;
    throw StructuralError("unknown ballot model: " + name);
}

Election random_election(uint64_t seed, long long n, int parties, int k, BallotModel model,
                         double density) {
    if (n < 1 || parties < 1 || k < 1) throw StructuralError("random_election: bad dimensions");
    if (density < 0 || density > 1) throw StructuralError("random_election: density in [0,1]");
    Rng rng(seed);

    auto nonempty = [&](std::vector<int> ballot) {
        if (ballot.empty()) ballot.push_back(rng.range(0, parties - 1));
        return ballot;
    };

    std::vector<std::vector<int>> prototypes;
    if (model == BallotModel::clustered) {
        for (int c = 0; c < 3; ++c) {
            std::vector<int> proto;
            for (int p = 0; p < parties; ++p)
                if (rng.unit() < std::max(0.05, density)) proto.push_back(p);
            prototypes.push_back(nonempty(std::move(proto)));
        }
    }
    int blocks = 1;
    if (model == BallotModel::blocks)
        blocks = std::max(1, std::min(parties, static_cast<int>(std::lround(density * parties))));

    Election e;
    for (int p = 0; p < parties; ++p) e.parties.push_back("p" + std::to_string(p));
    e.k = k;

    std::map<std::vector<int>, size_t> index_of; // class dedup, first-seen order
    for (long long voter = 0; voter < n; ++voter) {
        std::vector<int> ballot;
        switch (model) {
            case BallotModel::uniform: {
                for (int p = 0; p < parties; ++p)
                    if (rng.unit() < density) ballot.push_back(p);
                ballot = nonempty(std::move(ballot));
                break;
            }
            case BallotModel::blocks: {
                int block = rng.range(0, blocks - 1);
                int lo = static_cast<int>(static_cast<long long>(block) * parties / blocks);
                int hi = static_cast<int>(static_cast<long long>(block + 1) * parties / blocks);
                for (int p = lo; p < std::max(hi, lo + 1); ++p) ballot.push_back(p);
                break;
            }
            case BallotModel::clustered: {
                const auto& proto = prototypes[rng.range(0, 2)];
                std::vector<bool> in(parties, false);
                for (int p : proto) in[p] = true;
                for (int p = 0; p < parties; ++p) {
                    if (rng.unit() < 0.1) in[p] = !in[p];
                    if (in[p]) ballot.push_back(p);
                }
                ballot = nonempty(std::move(ballot));
                break;
            }
        }
        auto [it, fresh] = index_of.try_emplace(ballot, e.ballots.size());
        if (fresh)
            e.ballots.push_back({ballot, 1});
        else
            ++e.ballots[it->second].multiplicity;
    }
    e.validate();
    return e;
}

} // namespace papp
