#pragma once

#include <functional>
#include <string>

#include "papp/model.hpp"

namespace papp {

/// D'Hondt (Jefferson): k rounds, each seat to the party with the largest
/// quotient r(p)/(s(p)+1); quotient ties go to the lowest party index.
/// Satisfies lower quota and committee monotonicity. k = 0 is the empty committee.
Committee dhondt(const Portioning& portioning, int k);

/// Quota method (Balinski-Young): D'Hondt restricted, in round j, to parties
/// with s(p)/j < r(p). Also lower-quota and committee monotonic.
Committee quota_method(const Portioning& portioning, int k);

using PortioningMethod = std::function<Portioning(const Election&)>;
using ApportionmentMethod = std::function<Committee(const Portioning&, int)>;
using PartyRule = std::function<Committee(const Election&)>;

/// rule(e) = apportion(portion(e), e.k).
PartyRule compose(PortioningMethod portion, ApportionmentMethod apportion);

} // namespace papp
