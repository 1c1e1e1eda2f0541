#pragma once

#include <set>
#include <string>
#include <vector>

#include "mtlift/rootsys.hpp"

namespace mtlift {

// Fundamental group P/Q of the simply connected group of the given type,
// presented by its nontrivial invariant factors, together with the class of
// each fundamental weight.  fundamental_class[s-1][i] is the residue of
// varpi_s on the i-th invariant factor.
struct CentreDescriptor {
  Family family = Family::A;
  int rank = 0;
  std::vector<int> invariant_factors;
  std::vector<std::vector<int>> fundamental_class;

  int order() const;

  friend bool operator==(const CentreDescriptor&, const CentreDescriptor&) = default;
};

// Subgroup of the centre Z = Hom(P/Q, Q/Z).  Elements are residue tuples
// (b_i mod d_i); the element acts in the representation of class a by
// exp(2 pi i * sum a_i b_i / d_i).
struct CentralSubgroup {
  std::vector<int> moduli;
  std::vector<std::vector<int>> elements;  // sorted, includes identity

  int order() const { return static_cast<int>(elements.size()); }
  bool trivial() const { return elements.size() == 1; }

  friend bool operator==(const CentralSubgroup&, const CentralSubgroup&) = default;
};

// Weight lattice modulo root lattice, from the Smith normal form of the
// Cartan matrix.  No per-family tables.
CentreDescriptor centre(const RootDatum& rd);

// Central elements acting trivially on the direct sum of the irreducibles
// with highest weights varpi_s, s in hw_nodes.
CentralSubgroup rep_kernel(const RootDatum& rd, const std::set<int>& hw_nodes);

CentralSubgroup full_centre_subgroup(const RootDatum& rd);

enum class CoverLabel { simply_connected, h_maximal, adjoint, other };
std::string cover_label_name(CoverLabel label);

// An isogeny cover of the adjoint group, described by the central subgroup
// by which the simply connected cover is divided.
struct CoverDescriptor {
  Family family = Family::A;
  int rank = 0;
  CentralSubgroup kernel;
  CoverLabel label = CoverLabel::other;
  // Type D only: the endpoint whose fundamental representation the cover
  // acts faithfully on (relevant for h-maximal covers of D_4).
  int vector_endpoint = 1;

  friend bool operator==(const CoverDescriptor&, const CoverDescriptor&) = default;
};

CoverDescriptor simply_connected_cover(const RootDatum& rd);
CoverDescriptor adjoint_cover(const RootDatum& rd);

// Quotient of the universal cover acting faithfully on the representation at
// the designated endpoint; kernel has order exactly 2.  Family D, rank >= 4.
CoverDescriptor h_maximal_cover(const RootDatum& rd, int designated_endpoint = 1);

}  // namespace mtlift
