#include "mtlift/datum.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace mtlift {

NodeMap NodeMap::identity(int rank) {
  NodeMap m;
  m.image.resize(rank);
  std::iota(m.image.begin(), m.image.end(), 1);
  return m;
}

bool NodeMap::is_identity() const {
  for (size_t i = 0; i < image.size(); ++i)
    if (image[i] != static_cast<int>(i) + 1) return false;
  return true;
}

NodeMap NodeMap::inverse() const {
  NodeMap inv;
  inv.image.resize(image.size());
  for (size_t i = 0; i < image.size(); ++i) inv.image[image[i] - 1] = static_cast<int>(i) + 1;
  return inv;
}

NodeMap NodeMap::after(const NodeMap& g) const {
  NodeMap r;
  r.image.resize(image.size());
  for (size_t i = 0; i < image.size(); ++i) r.image[i] = apply(g.image[i]);
  return r;
}

NodeMap opposition_involution(const RootDatum& rd) {
  NodeMap m = NodeMap::identity(rd.rank);
  switch (rd.family) {
    case Family::A:
      for (int i = 1; i <= rd.rank; ++i) m.image[i - 1] = rd.rank + 1 - i;
      break;
    case Family::B:
    case Family::C:
      break;
    case Family::D:
      if (rd.rank % 2 == 1) std::swap(m.image[rd.rank - 2], m.image[rd.rank - 1]);
      break;
  }
  return m;
}

bool is_diagram_automorphism(const RootDatum& rd, const NodeMap& m) {
  if (static_cast<int>(m.image.size()) != rd.rank) return false;
  std::vector<bool> seen(rd.rank, false);
  for (int v : m.image) {
    if (v < 1 || v > rd.rank || seen[v - 1]) return false;
    seen[v - 1] = true;
  }
  auto c = cartan_matrix(rd);
  for (int i = 0; i < rd.rank; ++i)
    for (int j = 0; j < rd.rank; ++j)
      if (c[m.image[i] - 1][m.image[j] - 1] != c[i][j]) return false;
  return true;
}

std::vector<int> MTFactorDatum::nc_indices() const {
  std::vector<int> nc;
  for (int i = 0; i < size(); ++i)
    if (!compact[i]) nc.push_back(i);
  return nc;
}

MTFactorDatum make_factor(const RootDatum& rd, std::vector<std::string> labels) {
  MTFactorDatum f{rd, std::move(labels), {}, {}, {}, {}, std::nullopt};
  f.conjugation_action.assign(f.labels.size(), opposition_involution(rd));
  f.compact.assign(f.labels.size(), false);
  return f;
}

namespace {

bool is_permutation(const std::vector<int>& p, int n) {
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<bool> seen(n, false);
  for (int v : p) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

// Orbits of <generators> on {0..n-1}; permutation edges taken undirected.
std::vector<int> orbit_ids(const MTFactorDatum& f) {
  int n = f.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : f.generators) {
    if (!is_permutation(g.perm, n)) continue;
    for (int i = 0; i < n; ++i) {
      int a = find(i), b = find(g.perm[i]);
      if (a != b) parent[a] = b;
    }
  }
  std::vector<int> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = find(i);
  return ids;
}

std::string component_name(const MTFactorDatum& f, int i) {
  return f.labels.at(i);
}

// All diagram automorphisms, sorted by image tuple.
std::vector<NodeMap> diagram_automorphisms(const RootDatum& rd) {
  std::vector<NodeMap> result{NodeMap::identity(rd.rank)};
  auto push = [&](NodeMap m) {
    if (is_diagram_automorphism(rd, m)) result.push_back(std::move(m));
  };
  if (rd.family == Family::A && rd.rank >= 2) push(opposition_involution(rd));
  if (rd.family == Family::D) {
    if (rd.rank == 4) {
      // S_3 on the endpoints {1,3,4}.
      std::vector<int> pts{1, 3, 4};
      std::sort(pts.begin(), pts.end());
      std::vector<int> perm = pts;
      do {
        NodeMap m = NodeMap::identity(4);
        for (int i = 0; i < 3; ++i) m.image[pts[i] - 1] = perm[i];
        if (!m.is_identity()) push(m);
      } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
      NodeMap m = NodeMap::identity(rd.rank);
      std::swap(m.image[rd.rank - 2], m.image[rd.rank - 1]);
      push(m);
    }
  }
  std::sort(result.begin(), result.end(),
            [](const NodeMap& a, const NodeMap& b) { return a.image < b.image; });
  return result;
}

}  // namespace

std::vector<Violation> validate(const MTFactorDatum& f) {
  std::vector<Violation> v;
  int n = f.size();
  if (n == 0) {
    v.push_back({"empty", "factor has an empty embedding set"});
    return v;
  }
  {
    std::vector<std::string> sorted = f.labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      v.push_back({"labels", "embedding labels are not unique"});
  }
  if (static_cast<int>(f.compact.size()) != n ||
      static_cast<int>(f.conjugation_action.size()) != n) {
    v.push_back({"shape", "compact flags or conjugation action do not match |I|"});
    return v;
  }
  for (size_t gi = 0; gi < f.generators.size(); ++gi) {
    const auto& g = f.generators[gi];
    if (!is_permutation(g.perm, n)) {
      v.push_back({"permutation",
                   "galois generator " + std::to_string(gi) + " is not a permutation of I"});
      continue;
    }
    if (static_cast<int>(g.node_action.size()) != n) {
      v.push_back({"shape",
                   "galois generator " + std::to_string(gi) + " node action does not match |I|"});
      continue;
    }
    for (int i = 0; i < n; ++i)
      if (!is_diagram_automorphism(f.rd, g.node_action[i]))
        v.push_back({"node action",
                     "generator " + std::to_string(gi) + " at component " +
                         component_name(f, i) + " is not a diagram automorphism"});
  }

  NodeMap opp = opposition_involution(f.rd);
  for (int i = 0; i < n; ++i)
    if (f.conjugation_action[i] != opp)
      v.push_back({"opposition involution",
                   "conjugation acts on component " + component_name(f, i) +
                       " by a map other than the main involution"});

  // Q-simplicity: the Galois action must be transitive on I.
  auto ids = orbit_ids(f);
  bool transitive = std::all_of(ids.begin(), ids.end(),
                                [&](int id) { return id == ids[0]; });
  if (!transitive)
    v.push_back({"transitivity", "galois generators do not act transitively on I"});

  // Every orbit must contain a non-compact place.
  std::map<int, bool> orbit_has_nc;
  for (int i = 0; i < n; ++i) orbit_has_nc[ids[i]] |= !f.compact[i];
  for (const auto& [orbit, has_nc] : orbit_has_nc)
    if (!has_nc)
      v.push_back({"no non-compact place in orbit",
                   "orbit of component " + component_name(f, orbit) +
                       " consists of compact places only"});

  for (int i = 0; i < n; ++i) {
    bool has_node = f.hodge_node.count(i) > 0;
    if (f.compact[i] && has_node)
      v.push_back({"hodge node",
                   "compact component " + component_name(f, i) + " carries a Hodge node"});
    if (!f.compact[i] && !has_node)
      v.push_back({"hodge node",
                   "non-compact component " + component_name(f, i) + " has no Hodge node"});
    if (has_node) {
      int node = f.hodge_node.at(i);
      if (node < 1 || node > f.rd.rank || !f.rd.is_endpoint(node))
        v.push_back({"hodge node",
                     "Hodge node " + std::to_string(node) + " on component " +
                         component_name(f, i) + " is not a diagram endpoint"});
    }
  }

  if (f.decomposed && !f.decomposed->res_form)
    v.push_back({"decomposed flags",
                 "decomposed factor must be in restriction-of-scalars form"});
  return v;
}

std::string subtype_name(Subtype s) {
  switch (s) {
    case Subtype::D_R: return "D_R";
    case Subtype::D_H: return "D_H";
    case Subtype::not_D: return "not_D";
  }
  throw std::logic_error("subtype_name: bad enum");
}

namespace {

// Candidate two-endpoint subsets for one D_4 component, ascending.
std::vector<std::vector<int>> d4_pair_candidates(const MTFactorDatum& f, int i) {
  std::vector<std::vector<int>> cands;
  int delta = f.hodge_node.count(i) ? f.hodge_node.at(i) : 0;
  const std::vector<int> endpoints{1, 3, 4};
  for (size_t a = 0; a < endpoints.size(); ++a)
    for (size_t b = a + 1; b < endpoints.size(); ++b)
      if (endpoints[a] != delta && endpoints[b] != delta)
        cands.push_back({endpoints[a], endpoints[b]});
  return cands;
}

bool stable_under_generators(const MTFactorDatum& f,
                             const std::vector<std::vector<int>>& choice) {
  for (const auto& g : f.generators) {
    for (int i = 0; i < f.size(); ++i) {
      std::vector<int> mapped;
      for (int node : choice[i]) mapped.push_back(g.node_action[i].apply(node));
      std::sort(mapped.begin(), mapped.end());
      if (mapped != choice[g.perm[i]]) return false;
    }
  }
  return true;
}

}  // namespace

SubtypeVerdict classify_D(const MTFactorDatum& f) {
  if (f.rd.family != Family::D || f.rd.rank < 4)
    throw std::invalid_argument("classify_D: requires family D with rank >= 4");
  int k = f.rd.rank;
  SubtypeVerdict verdict;

  if (k >= 5) {
    bool any_tail = false, any_fork = false;
    for (const auto& [i, node] : f.hodge_node) (node == 1 ? any_tail : any_fork) = true;
    if (any_tail && any_fork)
      throw MixedNodes(
          "Hodge nodes mix the tail endpoint with fork endpoints; such a datum "
          "cannot arise from an abelian variety");
    if (any_tail) {
      verdict.subtype = Subtype::D_R;
      verdict.evidence = "every Hodge node sits at the tail endpoint 1";
    } else {
      verdict.subtype = Subtype::D_H;
      verdict.evidence = "every Hodge node sits at a fork endpoint";
    }
    return verdict;
  }

  // k = 4: exhaustive search for a Galois-stable set of endpoints, disjoint
  // from the Hodge nodes, with two endpoints in each component.
  int n = f.size();
  std::vector<std::vector<std::vector<int>>> cands(n);
  for (int i = 0; i < n; ++i) cands[i] = d4_pair_candidates(f, i);
  std::vector<size_t> pick(n, 0);
  int examined = 0;
  while (true) {
    std::vector<std::vector<int>> choice(n);
    for (int i = 0; i < n; ++i) choice[i] = cands[i][pick[i]];
    ++examined;
    if (stable_under_generators(f, choice)) {
      verdict.subtype = Subtype::D_R;
      verdict.delta_prime_max = choice;
      verdict.candidates_examined = examined;
      verdict.evidence = "found a Galois-stable two-endpoint set disjoint from the Hodge nodes";
      return verdict;
    }
    int i = n - 1;
    while (i >= 0 && ++pick[i] == cands[i].size()) pick[i--] = 0;
    if (i < 0) break;
  }
  verdict.subtype = Subtype::D_H;
  verdict.candidates_examined = examined;
  verdict.evidence = "exhausted all candidate endpoint sets without finding a stable one";
  return verdict;
}

SubtypeVerdict classify(const MTFactorDatum& f) {
  if (f.rd.family == Family::D && f.rd.rank >= 4) return classify_D(f);
  SubtypeVerdict verdict;
  verdict.subtype = Subtype::not_D;
  verdict.evidence = f.rd.family == Family::D
                         ? "D_3 is outside the subtype classification"
                         : "factor is not of type D";
  return verdict;
}

bool verify_verdict(const MTFactorDatum& f, const SubtypeVerdict& v) {
  if (v.subtype == Subtype::not_D)
    return f.rd.family != Family::D || f.rd.rank < 4;
  int k = f.rd.rank;
  if (k >= 5) {
    for (const auto& [i, node] : f.hodge_node) {
      if (v.subtype == Subtype::D_R && node != 1) return false;
      if (v.subtype == Subtype::D_H && node == 1) return false;
    }
    return true;
  }
  if (v.subtype == Subtype::D_R) {
    if (static_cast<int>(v.delta_prime_max.size()) != f.size()) return false;
    for (int i = 0; i < f.size(); ++i) {
      const auto& pair = v.delta_prime_max[i];
      if (pair.size() != 2) return false;
      for (int node : pair) {
        if (!f.rd.is_endpoint(node)) return false;
        if (f.hodge_node.count(i) && f.hodge_node.at(i) == node) return false;
      }
    }
    return stable_under_generators(f, v.delta_prime_max);
  }
  // D_H at k = 4: re-run the exhaustive search.
  return classify_D(f).subtype == Subtype::D_H;
}

MTFactorDatum normalize_hodge_nodes(const MTFactorDatum& f) {
  if (f.rd.family != Family::D)
    throw std::invalid_argument("normalize_hodge_nodes: requires family D");
  int k = f.rd.rank;
  auto autos = diagram_automorphisms(f.rd);
  std::vector<NodeMap> rho(f.size(), NodeMap::identity(k));
  for (const auto& [i, node] : f.hodge_node) {
    if (node == k) continue;
    bool found = false;
    for (const auto& m : autos)
      if (m.apply(node) == k) {
        rho[i] = m;
        found = true;
        break;
      }
    if (!found)
      throw InconsistentNormalization(
          "Hodge node " + std::to_string(node) + " on component " + f.labels.at(i) +
          " cannot be relabeled to node " + std::to_string(k) +
          "; the datum is not of type D_H");
  }

  MTFactorDatum out = f;
  for (auto& [i, node] : out.hodge_node) node = rho[i].apply(node);
  for (auto& g : out.generators)
    for (int i = 0; i < f.size(); ++i)
      g.node_action[i] = rho[g.perm[i]].after(g.node_action[i]).after(rho[i].inverse());
  for (int i = 0; i < f.size(); ++i)
    out.conjugation_action[i] =
        rho[i].after(out.conjugation_action[i]).after(rho[i].inverse());
  return out;
}

UnliftabilityReport is_essentially_unliftable(
    const std::vector<MTFactorDatum>& factors,
    const std::vector<CoverDescriptor>& covers) {
  if (factors.size() != covers.size())
    throw std::invalid_argument("is_essentially_unliftable: misaligned factor/cover lists");
  UnliftabilityReport report;
  for (size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    const auto& cover = covers[i];
    UnliftabilityReport::Entry e;
    e.factor = static_cast<int>(i);
    e.subtype = classify(f).subtype;
    std::ostringstream why;
    if (cover.family != f.rd.family || cover.rank != f.rd.rank) {
      e.ok = false;
      why << "cover type does not match the factor";
    } else if (e.subtype == Subtype::D_H) {
      e.ok = cover.label == CoverLabel::h_maximal;
      if (!e.ok)
        why << "D_H factor requires an h-maximal cover, got " << cover_label_name(cover.label);
    } else {
      e.ok = cover.label == CoverLabel::simply_connected;
      if (!e.ok)
        why << subtype_name(e.subtype) << " factor requires a simply connected cover, got "
            << cover_label_name(cover.label);
    }
    e.reason = why.str();
    report.essentially_unliftable &= e.ok;
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace mtlift
