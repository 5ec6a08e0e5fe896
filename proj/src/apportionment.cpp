#include "papp/apportionment.hpp"

#include <utility>

#include "papp/errors.hpp"

namespace papp {

namespace {

// Shared highest-averages loop over either exact or float shares. `Share` is
// Rat or double; comparisons are strict so ties keep the lowest party index.
template <class Share>
Committee highest_averages(const std::vector<Share>& shares, int k, bool quota_filter) {
    const int parties = static_cast<int>(shares.size());
    Committee w = Committee::zero(parties);
    for (int round = 1; round <= k; ++round) {
        int best = -1;
        Share best_quotient{};
        for (int p = 0; p < parties; ++p) {
            if (quota_filter) {
                // eligible iff s(p)/round < r(p)
                if (!(Share(w.seats[p]) < Share(round) * shares[p])) continue;
            }
            Share quotient = shares[p] / Share(w.seats[p] + 1);
            if (best < 0 || best_quotient < quotient) {
                best = p;
                best_quotient = quotient;
            }
        }
        if (best < 0)
            throw StructuralError("apportionment: no eligible party in round " +
                                  std::to_string(round));
        ++w.seats[best];
    }
    return w;
}

} // namespace

Committee dhondt(const Portioning& r, int k) {
    if (k < 0) throw StructuralError("dhondt: negative committee size");
    if (r.is_exact()) return highest_averages<Rat>(r.exact_shares, k, false);
    return highest_averages<double>(r.approx_shares, k, false);
}

Committee quota_method(const Portioning& r, int k) {
    if (k < 0) throw StructuralError("quota_method: negative committee size");
    if (r.is_exact()) return highest_averages<Rat>(r.exact_shares, k, true);
    return highest_averages<double>(r.approx_shares, k, true);
}

PartyRule compose(PortioningMethod portion, ApportionmentMethod apportion) {
    return [portion = std::move(portion), apportion = std::move(apportion)](const Election& e) {
        return apportion(portion(e), e.k);
    };
}

} // namespace papp
