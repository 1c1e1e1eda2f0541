#include "mtlift/twoweight.hpp"

#include "mtlift/isogeny.hpp"

namespace mtlift {

std::set<int> two_weight_fundamentals(const RootDatum& rd, int mu_node) {
  if (mu_node < 1 || mu_node > rd.rank)
    throw std::out_of_range("two_weight_fundamentals: node index out of range");
  if (rd.family != Family::A && !rd.is_endpoint(mu_node))
    throw NonEndpointNode(std::string("node ") + std::to_string(mu_node) +
                          " is not an endpoint of " + family_letter(rd.family) +
                          std::to_string(rd.rank));
  QuasiCocharacter c = fundamental_coweight(rd, mu_node);
  std::set<int> result;
  for (int s : supported_irreps(rd)) {
    auto values = pairing_values(irrep_weights(rd, s), c);
    if (values.size() == 2) result.insert(s);
  }
  return result;
}

SpinObstruction spin_three_weight_obstruction(int k) {
  if (k < 4)
    throw std::invalid_argument("spin_three_weight_obstruction: k must be >= 4");
  RootDatum rd(Family::D, k);
  QuasiCocharacter c = fundamental_coweight(rd, k);
  SpinObstruction r;
  r.k = k;
  r.distinct_on_lower =
      static_cast<int>(pairing_values(irrep_weights(rd, k - 1), c).size());
  r.distinct_on_upper =
      static_cast<int>(pairing_values(irrep_weights(rd, k), c).size());
  return r;
}

bool faithful_fundamental_requires_spin(int k) {
  if (k < 5)
    throw std::invalid_argument("faithful_fundamental_requires_spin: k must be >= 5");
  RootDatum rd(Family::D, k);
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::set<int> s;
    for (int node = 1; node <= k; ++node)
      if (mask & (1u << (node - 1))) s.insert(node);
    if (!rep_kernel(rd, s).trivial()) continue;
    if (!s.count(k - 1) && !s.count(k)) return false;
  }
  return true;
}

TwoWeightTable two_weight_table(int max_rank) {
  if (max_rank < 2 || max_rank > 9)
    throw std::invalid_argument("two_weight_table: max_rank must be in 2..9");
  TwoWeightTable table;
  auto emit = [&](const RootDatum& rd, int node) {
    table.rows.push_back(
        {rd.family, rd.rank, node, two_weight_fundamentals(rd, node)});
  };
  for (Family f : {Family::A, Family::B, Family::C, Family::D}) {
    int min_rank = f == Family::A ? 1 : (f == Family::D ? 3 : 2);
    for (int k = min_rank; k <= max_rank; ++k) {
      RootDatum rd(f, k);
      if (f == Family::A) {
        for (int node = 1; node <= k; ++node) emit(rd, node);
      } else {
        for (int node : rd.endpoints()) emit(rd, node);
      }
    }
  }
  return table;
}

}  // namespace mtlift
