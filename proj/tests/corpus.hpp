#pragma once

// Deterministic datum corpora for the property suites: several hundred valid
// D_H data across k = 4..9 with varied Galois actions and compact splits,
// and a general corpus covering every family and subtype.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "mtlift/datum.hpp"

namespace mtlift::corpus {

inline std::vector<std::string> labels_of(int n) {
  std::vector<std::string> l;
  for (int i = 0; i < n; ++i) l.push_back(std::string(1, static_cast<char>('a' + i)));
  return l;
}

inline GaloisGenerator cycle_generator(const RootDatum& rd, int n) {
  GaloisGenerator g;
  for (int i = 0; i < n; ++i) g.perm.push_back((i + 1) % n);
  g.node_action.assign(n, NodeMap::identity(rd.rank));
  return g;
}

inline GaloisGenerator transposition_generator(const RootDatum& rd, int n) {
  GaloisGenerator g;
  for (int i = 0; i < n; ++i) g.perm.push_back(i);
  if (n >= 2) std::swap(g.perm[0], g.perm[1]);
  g.node_action.assign(n, NodeMap::identity(rd.rank));
  return g;
}

inline NodeMap fork_swap(const RootDatum& rd) {
  NodeMap m = NodeMap::identity(rd.rank);
  std::swap(m.image[rd.rank - 2], m.image[rd.rank - 1]);
  return m;
}

inline NodeMap triality_rotation(const RootDatum& rd) {
  // 1 -> 3 -> 4 -> 1 on D_4.
  NodeMap m = NodeMap::identity(rd.rank);
  m.image[0] = 3;
  m.image[2] = 4;
  m.image[3] = 1;
  return m;
}

inline MTFactorDatum build_factor(const RootDatum& rd, int n,
                                  std::vector<GaloisGenerator> gens,
                                  const std::vector<int>& compact_indices,
                                  const std::vector<int>& hodge_nodes_by_index) {
  MTFactorDatum f = make_factor(rd, labels_of(n));
  f.generators = std::move(gens);
  for (int i : compact_indices) f.compact[i] = true;
  for (int i = 0; i < n; ++i)
    if (!f.compact[i]) f.hodge_node[i] = hodge_nodes_by_index[i];
  return f;
}

// Valid type-D_H data: every k in 4..9, component counts 1..4, node-twisted
// cyclic and dihedral-style actions, several compact splits, Hodge nodes on
// both fork endpoints.  Everything failing validate() or classifying D_R is
// discarded.
inline std::vector<MTFactorDatum> dh_corpus() {
  std::vector<MTFactorDatum> out;
  for (int k = 4; k <= 9; ++k) {
    RootDatum rd(Family::D, k);
    for (int n = 1; n <= 4; ++n) {
      std::vector<std::vector<GaloisGenerator>> gen_variants;
      if (n == 1) gen_variants.push_back({});
      if (n >= 2) gen_variants.push_back({cycle_generator(rd, n)});
      {
        auto g = cycle_generator(rd, n);
        g.node_action[0] = fork_swap(rd);
        gen_variants.push_back({g});
      }
      {
        auto g = cycle_generator(rd, n);
        g.node_action.assign(n, fork_swap(rd));
        gen_variants.push_back({g});
      }
      if (n >= 3) {
        auto g = cycle_generator(rd, n);
        auto t = transposition_generator(rd, n);
        t.node_action[0] = fork_swap(rd);
        gen_variants.push_back({g, t});
      }
      if (k == 4) {
        auto g = cycle_generator(rd, n);
        g.node_action[0] = triality_rotation(rd);
        gen_variants.push_back({g});
        auto h = cycle_generator(rd, n);
        h.node_action.assign(n, triality_rotation(rd));
        gen_variants.push_back({h});
      }

      std::vector<std::vector<int>> compact_variants{{}};
      if (n >= 2) compact_variants.push_back({n - 1});
      if (n >= 3) compact_variants.push_back({n - 2, n - 1});

      std::vector<std::vector<int>> hodge_variants;
      hodge_variants.push_back(std::vector<int>(n, k));
      {
        std::vector<int> alt(n);
        for (int i = 0; i < n; ++i) alt[i] = i % 2 == 0 ? k : k - 1;
        if (n >= 2) hodge_variants.push_back(alt);
      }
      if (n == 1) hodge_variants.push_back({k - 1});
      if (k == 4) hodge_variants.push_back(std::vector<int>(n, 1));

      for (const auto& gens : gen_variants)
        for (const auto& compact : compact_variants)
          for (const auto& hodge : hodge_variants) {
            MTFactorDatum f = build_factor(rd, n, gens, compact, hodge);
            if (!validate(f).empty()) continue;
            try {
              if (classify_D(f).subtype != Subtype::D_H) continue;
            } catch (const MixedNodes&) {
              continue;
            }
            out.push_back(std::move(f));
          }
    }
  }

  // Seeded randomized batch: arbitrary transitive permutation actions with
  // arbitrary per-component diagram twists.
  std::mt19937 rng(271828);
  auto rand_int = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  for (int k = 4; k <= 9; ++k) {
    RootDatum rd(Family::D, k);
    auto autos = [&] {
      std::vector<NodeMap> a{NodeMap::identity(k), fork_swap(rd)};
      if (k == 4) {
        a.push_back(triality_rotation(rd));
        a.push_back(triality_rotation(rd).inverse());
      }
      return a;
    }();
    for (int trial = 0; trial < 40; ++trial) {
      int n = rand_int(1, 4);
      std::vector<GaloisGenerator> gens;
      int gen_count = rand_int(1, 2);
      for (int gi = 0; gi < gen_count; ++gi) {
        GaloisGenerator g;
        for (int i = 0; i < n; ++i) g.perm.push_back(i);
        std::shuffle(g.perm.begin(), g.perm.end(), rng);
        for (int i = 0; i < n; ++i)
          g.node_action.push_back(autos[rand_int(0, static_cast<int>(autos.size()) - 1)]);
        gens.push_back(std::move(g));
      }
      std::vector<int> compact;
      for (int i = 1; i < n; ++i)
        if (rand_int(0, 2) == 0) compact.push_back(i);
      std::vector<int> hodge(n);
      for (int i = 0; i < n; ++i) hodge[i] = rand_int(0, 1) ? k : k - 1;
      MTFactorDatum f = build_factor(rd, n, gens, compact, hodge);
      if (!validate(f).empty()) continue;
      try {
        if (classify_D(f).subtype != Subtype::D_H) continue;
      } catch (const MixedNodes&) {
        continue;
      }
      out.push_back(std::move(f));
    }
  }
  return out;
}

// One valid factor for every family, rank range and subtype the general
// construction covers.
inline std::vector<MTFactorDatum> general_corpus() {
  std::vector<MTFactorDatum> out;
  auto add = [&](MTFactorDatum f) {
    if (!validate(f).empty())
      throw std::logic_error("general_corpus: invalid datum generated");
    out.push_back(std::move(f));
  };

  // A_1: Mumford-style triple and a singleton.
  add(build_factor(RootDatum(Family::A, 1), 1, {}, {}, {1}));
  add(build_factor(RootDatum(Family::A, 1), 3,
                   {cycle_generator(RootDatum(Family::A, 1), 3)}, {}, {1, 1, 1}));
  // A_k, k >= 2: endpoint Hodge nodes, including multi-component actions with
  // the diagram reversal.
  for (int k : {2, 3, 5}) {
    RootDatum rd(Family::A, k);
    add(build_factor(rd, 1, {}, {}, {1}));
    add(build_factor(rd, 1, {}, {}, {k}));
    auto g = cycle_generator(rd, 2);
    g.node_action.assign(2, opposition_involution(rd));
    add(build_factor(rd, 2, {g}, {}, {1, k}));
    add(build_factor(rd, 2, {g}, {1}, {1, 0}));
  }
  // B_k: spin blocks, Hodge node at the vector endpoint.
  for (int k : {2, 3, 4})
    add(build_factor(RootDatum(Family::B, k), 1, {}, {}, {1}));
  add(build_factor(RootDatum(Family::B, 3), 2,
                   {cycle_generator(RootDatum(Family::B, 3), 2)}, {1}, {1, 0}));
  // C_k: vector blocks, Hodge node at the long endpoint.
  for (int k : {2, 3, 5})
    add(build_factor(RootDatum(Family::C, k), 1, {}, {}, {k}));
  // D_R, k >= 5: tail Hodge nodes.
  for (int k : {5, 6, 7}) {
    RootDatum rd(Family::D, k);
    add(build_factor(rd, 1, {}, {}, {1}));
    add(build_factor(rd, 2, {cycle_generator(rd, 2)}, {1}, {1, 0}));
  }
  // D_4^R: trivial action.
  add(build_factor(RootDatum(Family::D, 4), 1, {}, {}, {4}));
  // D_4^H: triality.
  {
    RootDatum rd(Family::D, 4);
    auto g = cycle_generator(rd, 1);
    g.node_action[0] = triality_rotation(rd);
    add(build_factor(rd, 1, {g}, {}, {4}));
  }
  // D_H, k >= 5.
  for (int k : {5, 6, 8}) {
    RootDatum rd(Family::D, k);
    add(build_factor(rd, 1, {}, {}, {k}));
    auto g = cycle_generator(rd, 2);
    g.node_action[0] = fork_swap(rd);
    add(build_factor(rd, 2, {g}, {}, {k, k}));
  }
  return out;
}

}  // namespace mtlift::corpus
