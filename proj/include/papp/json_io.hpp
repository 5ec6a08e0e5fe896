#pragma once

#include <json.hpp>

#include "papp/axioms.hpp"
#include "papp/model.hpp"

namespace papp {

using Json = nlohmann::json;

inline Json committee_to_json(const Election& e, const Committee& w) {
    Json out = Json::object();
    for (int p = 0; p < e.num_parties(); ++p)
        if (w.seats[p] != 0) out[e.parties[p]] = w.seats[p];
    return out;
}

inline Committee committee_from_json(const Election& e, const Json& j) {
    Committee w = Committee::zero(e.num_parties());
    for (auto it = j.begin(); it != j.end(); ++it) {
        int idx = e.party_index(it.key());
        if (idx < 0) throw ParseError("unknown party in committee json: " + it.key());
        w.seats[idx] = it.value().get<int>();
    }
    return w;
}

inline Json portioning_to_json(const Election& e, const Portioning& r) {
    Json out = Json::object();
    for (int p = 0; p < e.num_parties(); ++p) {
        if (r.is_exact())
            out[e.parties[p]] = rat_to_string(r.exact_shares[p]);
        else
            out[e.parties[p]] = r.approx_shares[p];
    }
    return out;
}

inline Json witness_to_json(const Election& e, const Axiom axiom, const Witness& w) {
    Json out = Json::object();
    if (!w.coalition.empty()) {
        Json coalition = Json::array();
        for (const auto& entry : w.coalition)
            coalition.push_back({{"ballot", entry.ballot}, {"count", entry.count}});
        out["coalition"] = std::move(coalition);
        out["coalition_size"] = coalition_size(w);
    }
    if (w.party >= 0) out["party"] = e.parties[w.party];
    if (axiom == Axiom::ejr || axiom == Axiom::pjr || axiom == Axiom::core)
        out["level"] = w.level;
    if (w.deviation) out["deviation"] = committee_to_json(e, *w.deviation);
    if (axiom == Axiom::monotone) {
        out["k"] = w.k_small;
        out["committee_small"] = committee_to_json(e, *w.committee_small);
        out["committee_large"] = committee_to_json(e, *w.committee_large);
    }
    return out;
}

inline Witness witness_from_json(const Election& e, Axiom axiom, const Json& j) {
    Witness w;
    if (j.contains("coalition"))
        for (const auto& entry : j.at("coalition"))
            w.coalition.push_back(
                {entry.at("ballot").get<int>(), entry.at("count").get<long long>()});
    if (j.contains("party")) {
        w.party = e.party_index(j.at("party").get<std::string>());
        if (w.party < 0) throw ParseError("unknown party in witness json");
    }
    if (j.contains("level")) w.level = j.at("level").get<long long>();
    if (j.contains("deviation")) {
        Committee t = Committee::zero(e.num_parties());
        for (auto it = j.at("deviation").begin(); it != j.at("deviation").end(); ++it) {
            int idx = e.party_index(it.key());
            if (idx < 0) throw ParseError("unknown party in deviation json");
            t.seats[idx] = it.value().get<int>();
        }
        w.deviation = std::move(t);
    }
    if (axiom == Axiom::monotone) {
        w.k_small = j.at("k").get<int>();
        w.committee_small = committee_from_json(e, j.at("committee_small"));
        w.committee_large = committee_from_json(e, j.at("committee_large"));
    }
    return w;
}

inline Json verdict_to_json(const Election& e, const AxiomVerdict& v) {
    Json out = {{"axiom", axiom_name(v.axiom)}, {"pass", v.pass}};
    if (v.witness) out["witness"] = witness_to_json(e, v.axiom, *v.witness);
    return out;
}

inline AxiomVerdict verdict_from_json(const Election& e, const Json& j) {
    AxiomVerdict v;
    v.axiom = axiom_from_name(j.at("axiom").get<std::string>());
    v.pass = j.at("pass").get<bool>();
    if (j.contains("witness")) v.witness = witness_from_json(e, v.axiom, j.at("witness"));
    return v;
}

} // namespace papp
