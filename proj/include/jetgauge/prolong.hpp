#pragma once

#include <functional>

#include "jetgauge/field.hpp"
#include "jetgauge/jet.hpp"
#include "jetgauge/oracle.hpp"

namespace jetgauge {

// Shared recursion for prolongation-like operators: step(a, i, prev) produces
// eta^a_{J,i} from the coefficient column at the parent index J.  Verifies the
// chart has enough jet orders before starting.
ProlongedField prolong_with(
    const EvoField& f, int order,
    const std::function<Expr(std::size_t, std::size_t, const std::vector<Expr>&)>& step);

// eta_{J,i} = D_i eta_J
ProlongedField std_prolong(const EvoField& f, int order);

// eta_{J,i} = D_i eta_J + Lambda_i eta_J.  With an oracle, the horizontal
// compatibility of mu and the path independence of the recursion are
// spot-checked; pass nullptr to skip.
ProlongedField mu_prolong(const EvoField& f, const MuForm& mu, int order,
                          Oracle* oracle = nullptr);

// D_i Lambda_j - D_j Lambda_i + [Lambda_i, Lambda_j] = 0 for all i < j.
EqualResult maurer_cartan_check(const MuForm& mu, Oracle& o);

// Does y agree with the mu-prolongation of its own order-0 part?
EqualResult is_mu_prolongation(const ProlongedField& y, const MuForm& mu, Oracle& o);

}  // namespace jetgauge
