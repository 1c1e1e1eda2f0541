#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtlift/rational.hpp"

namespace mtlift {

enum class Family { A, B, C, D };

char family_letter(Family f);
Family family_from_letter(char c);

// A classical root system in Bourbaki epsilon-coordinates.  For type A the
// ambient space has dimension rank+1, otherwise rank.  Node numbering is
// Bourbaki: for D_k the fork endpoints are k-1 and k, the tail endpoint is 1.
struct RootDatum {
  Family family = Family::A;
  int rank = 1;

  RootDatum() = default;
  RootDatum(Family f, int k);

  int ambient_dim() const { return family == Family::A ? rank + 1 : rank; }

  // Endpoints of the Dynkin diagram, ascending.
  std::vector<int> endpoints() const;
  bool is_endpoint(int node) const;

  friend bool operator==(const RootDatum&, const RootDatum&) = default;
};

// A point of the weight space, exact coordinates.
struct Weight {
  std::vector<Rat> coords;

  Weight() = default;
  explicit Weight(std::vector<Rat> c) : coords(std::move(c)) {}

  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight operator-() const;
  Rat dot(const Weight& o) const;

  auto operator<=>(const Weight&) const = default;
  std::string str() const;
};

// A coweight vector together with a formal root order: the pairing of a
// weight w against (c, d) is dot(w, c)/d.  denominator == 1 is a true
// cocharacter; fractional pairing values are allowed either way.
struct QuasiCocharacter {
  std::vector<Rat> coweight;
  int denominator = 1;

  Rat pair(const Weight& w) const;
};

class WeightMultiset {
 public:
  WeightMultiset() = default;

  void add(const Weight& w, int multiplicity = 1);
  int dimension() const;  // total multiplicity
  const std::map<Weight, int>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const WeightMultiset&, const WeightMultiset&) = default;

 private:
  std::map<Weight, int> entries_;
};

struct UnsupportedRepresentation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bourbaki simple roots; length == rank.
std::vector<Weight> simple_roots(const RootDatum& rd);
// Coroots 2a/(a,a) of the simple roots, as vectors paired by dot product.
std::vector<Weight> simple_coroots(const RootDatum& rd);
// Bourbaki convention: c[i][j] = <alpha_i, alpha_j^vee>.
std::vector<std::vector<int>> cartan_matrix(const RootDatum& rd);

// The weight with <w, alpha_j^vee> = delta_{sj}; for type A normalized to the
// sum-zero hyperplane.  Computed by solving the defining linear system.
Weight fundamental_weight(const RootDatum& rd, int s);

// The coweight with <alpha_j, c> = delta_{ij}; for type A normalized to the
// sum-zero hyperplane.  Returned with denominator 1: coordinates are exact
// rationals and pairings against non-root-lattice weights may be fractional.
QuasiCocharacter fundamental_coweight(const RootDatum& rd, int i);

// Closure of {w} under the simple reflections.
std::set<Weight> weyl_orbit(const RootDatum& rd, const Weight& w);

// Fundamental indices s for which irrep_weights is defined.
std::vector<int> supported_irreps(const RootDatum& rd);

// Weight multiset of the irreducible representation with highest weight
// varpi_s.  Supported: A_k any s (minuscule), B_k s in {1,k}, C_k s=1,
// D_k s in {1,k-1,k}.  Anything else throws UnsupportedRepresentation.
WeightMultiset irrep_weights(const RootDatum& rd, int s);

// Multiset of pairing values {<w,c>/c.denominator}.
std::map<Rat, int> pairing_values(const WeightMultiset& ws,
                                  const QuasiCocharacter& c);

// True iff the multiset is invariant under negation.
bool is_self_dual(const WeightMultiset& ws);

}  // namespace mtlift
