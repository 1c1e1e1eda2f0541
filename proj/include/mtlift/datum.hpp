#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mtlift/isogeny.hpp"
#include "mtlift/rootsys.hpp"

namespace mtlift {

// A relabeling of the nodes of one Dynkin diagram component; image is 1-based
// (image[node-1] = target node).
struct NodeMap {
  std::vector<int> image;

  static NodeMap identity(int rank);
  int apply(int node) const { return image.at(node - 1); }
  bool is_identity() const;
  NodeMap inverse() const;
  // (f.after(g))(x) = f(g(x))
  NodeMap after(const NodeMap& g) const;

  friend bool operator==(const NodeMap&, const NodeMap&) = default;
};

// The main (opposition) involution: reversal for A_k, trivial for B_k, C_k
// and D_k with k even, the fork swap for D_k with k odd.
NodeMap opposition_involution(const RootDatum& rd);

// True iff the node map preserves the Dynkin diagram of the given type.
bool is_diagram_automorphism(const RootDatum& rd, const NodeMap& m);

// One generator of the Galois action: a permutation of the component index
// set I together with, for each source component, the induced identification
// of Dynkin diagrams (a diagram automorphism once source and target are both
// written in standard labels).
struct GaloisGenerator {
  std::vector<int> perm;              // 0-based: component i -> perm[i]
  std::vector<NodeMap> node_action;   // per source component

  friend bool operator==(const GaloisGenerator&, const GaloisGenerator&) = default;
};

struct DecomposedFlags {
  bool res_form = false;
  bool single_isotypic = false;

  friend bool operator==(const DecomposedFlags&, const DecomposedFlags&) = default;
};

// One Q-simple adjoint factor: component type, index set I with Galois
// action, the complex-conjugation node action (its permutation of I is the
// identity and is not stored), compactness flags and Hodge-node assignment
// on the non-compact indices.
struct MTFactorDatum {
  RootDatum rd;
  std::vector<std::string> labels;            // names of the elements of I
  std::vector<GaloisGenerator> generators;
  std::vector<NodeMap> conjugation_action;    // per component
  std::vector<bool> compact;
  std::map<int, int> hodge_node;              // component index -> endpoint node
  std::optional<DecomposedFlags> decomposed;

  int size() const { return static_cast<int>(labels.size()); }
  bool is_compact(int i) const { return compact.at(i); }
  std::vector<int> nc_indices() const;

  friend bool operator==(const MTFactorDatum&, const MTFactorDatum&) = default;
};

// Convenience constructor filling conjugation with the opposition involution
// and compact = false everywhere; hodge nodes must still be assigned.
MTFactorDatum make_factor(const RootDatum& rd, std::vector<std::string> labels);

struct Violation {
  std::string code;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Structural validation; every violated invariant is reported with the
// offending element.  An empty result means the datum is valid.
std::vector<Violation> validate(const MTFactorDatum& f);

enum class Subtype { D_R, D_H, not_D };
std::string subtype_name(Subtype s);

struct MixedNodes : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconsistentNormalization : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SubtypeVerdict {
  Subtype subtype = Subtype::not_D;
  // D_4 and D_R only: the stable endpoint set, two endpoints per component.
  std::vector<std::vector<int>> delta_prime_max;
  std::string evidence;
  int candidates_examined = 0;

  friend bool operator==(const SubtypeVerdict&, const SubtypeVerdict&) = default;
};

// Subtype of a type-D factor with rank >= 4.  For k >= 5 the verdict follows
// the placement of the Hodge nodes (all at the tail = D_R, none = D_H, mixed
// throws MixedNodes).  For k = 4 the verdict is decided by exhaustive search
// for a Galois-stable endpoint set disjoint from the Hodge nodes with two
// endpoints in every component.
SubtypeVerdict classify_D(const MTFactorDatum& f);

// classify_D for type D of rank >= 4, not_D otherwise.
SubtypeVerdict classify(const MTFactorDatum& f);

// Recheck a verdict against the datum (witness re-validation).
bool verify_verdict(const MTFactorDatum& f, const SubtypeVerdict& v);

// Relabel fork endpoints, consistently with the Galois node actions, so that
// every Hodge node equals the rank; requires a D_H factor.  Idempotent.
MTFactorDatum normalize_hodge_nodes(const MTFactorDatum& f);

struct UnliftabilityReport {
  struct Entry {
    int factor;
    Subtype subtype;
    bool ok;
    std::string reason;
  };
  bool essentially_unliftable = true;
  std::vector<Entry> entries;
};

// Datum-level unliftability criterion: every A/B/C/D_R factor simply connected and
// every D_H factor h-maximal.
UnliftabilityReport is_essentially_unliftable(
    const std::vector<MTFactorDatum>& factors,
    const std::vector<CoverDescriptor>& covers);

}  // namespace mtlift
