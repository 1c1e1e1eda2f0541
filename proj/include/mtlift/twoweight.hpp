#pragma once

#include <set>
#include <stdexcept>
#include <vector>

#include "mtlift/rootsys.hpp"

namespace mtlift {

struct NonEndpointNode : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All supported fundamental indices s whose irreducible representation sees
// exactly two distinct pairing values under the coweight dual to mu_node.
// A single value (trivial central action on the factor) does not count.
// For family A every node is legal and every s is tested; for B, C, D the
// node must be a diagram endpoint.
std::set<int> two_weight_fundamentals(const RootDatum& rd, int mu_node);

// Distinct pairing-value counts of the two half-spin representations of D_k
// against the coweight dual to node k.  For k >= 5 both counts are >= 3;
// at k = 4 the varpi_3 count drops to 2 (triality).
struct SpinObstruction {
  int k;
  int distinct_on_lower;  // varpi_{k-1}
  int distinct_on_upper;  // varpi_k
};
SpinObstruction spin_three_weight_obstruction(int k);

// True iff every set of fundamental indices of D_k whose joint central
// character has trivial kernel contains k-1 or k.  Exhaustive over all
// 2^k - 1 nonempty subsets.
bool faithful_fundamental_requires_spin(int k);

struct TwoWeightTable {
  struct Row {
    Family family;
    int rank;
    int mu_node;
    std::set<int> fundamentals;

    friend bool operator==(const Row&, const Row&) = default;
  };
  std::vector<Row> rows;
};

// Deterministic table over every family and rank up to max_rank; for A all
// nodes, otherwise the diagram endpoints.
TwoWeightTable two_weight_table(int max_rank);

}  // namespace mtlift
