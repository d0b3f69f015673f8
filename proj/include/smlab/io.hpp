#pragma once

// Instance/witness/condition file schemas, expression serialization, and
// the command-line driver shared by the binary and the tests.

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "smlab/bounds.hpp"
#include "smlab/conditions.hpp"
#include "smlab/core.hpp"
#include "smlab/freeset.hpp"
#include "smlab/ramsey.hpp"

namespace smlab {

using Json = nlohmann::ordered_json;

struct Instance {
  GammaFamily family;
  int k;
};

// Schema: {"carrier": m, "k": k, "rhos": [{"range": L, "pairs": [[x,y,v],…]}]}
// with every pair listed exactly once; pairs may arrive in either order and
// are normalized to x < y. Violations carry position diagnostics.
Instance instance_from_json(const Json& j);
Json instance_to_json(const Instance& inst);
Instance load_instance(const std::string& path);

// One {"tuple": […], "image": […]} record per k-subset, in colex order.
Json mapping_records(const SetMapping& f);

// Schema: {"n":…, "k":…, "colors":…, "targets":[…],
//          "assignment":[[t1,…,tk,color],…]}.
Json witness_to_json(const ColoringWitness& w);
ColoringWitness witness_from_json(const Json& j);

// Nested {"pow":[base,exp]} / {"prod":[…]} / {"sum":[…]} / {"lit":v}; literal
// values are numbers while they fit a 64-bit unsigned, decimal strings after.
Json tower_to_json(const TowerExpr& e);
TowerExpr tower_from_json(const Json& j);

// Schema: {"support":[…], "rho":[[x,y,v],…]}; the mapping is always
// regenerated from the background, never read from disk.
Json condition_to_json(const Condition& c);
Condition condition_from_json(const Json& j, const GammaFamily& background,
                              int k);

// Exit codes: 0 success, 1 precondition/schema errors, 2 budget-infeasible.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace smlab
