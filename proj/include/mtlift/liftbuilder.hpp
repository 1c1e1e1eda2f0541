#pragma once

#include <map>
#include <string>
#include <vector>

#include "mtlift/datum.hpp"
#include "mtlift/isogeny.hpp"
#include "mtlift/rootsys.hpp"

namespace mtlift {

struct TwoWeightViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedType : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NormalizationRequired : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IntegralityFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class CaseTag { general_ABCD, k_even_K_eq_K0, k_even_K_quadratic, k_odd };
std::string case_tag_name(CaseTag t);
CaseTag case_tag_from_name(const std::string& name);

// One isotypic summand of the lift representation, restricted to one
// component (or one CM-field embedding).  Total weights are the cocharacter
// pairing values shifted by the central corrections.
struct RepBlock {
  std::string index;
  bool compact = false;
  std::vector<int> highest_weights;
  int mu_node = 0;                  // node the cocharacter is dual to; 0 if trivial
  std::map<Rat, int> cochar_weights;
  Rat mu_t_exponent;                // isobaric recentering layer
  Rat torus_exponent;               // CM-torus layer
  std::map<Rat, int> totals() const;

  friend bool operator==(const RepBlock&, const RepBlock&) = default;
};

enum class TorusKind { norm_one_CM, full_CM };
std::string torus_kind_name(TorusKind k);

struct TorusFactor {
  std::string name;
  std::map<std::string, Rat> exponents;  // per chosen coordinate

  friend bool operator==(const TorusFactor&, const TorusFactor&) = default;
};

// CM torus component of the lift.  For norm_one_CM the coordinates are a
// section of the conjugate pairing of embeddings; the exponent at the
// conjugate embedding is the negative of the recorded one.
struct TorusDescriptor {
  TorusKind kind = TorusKind::norm_one_CM;
  std::vector<TorusFactor> factors;

  friend bool operator==(const TorusDescriptor&, const TorusDescriptor&) = default;
};

struct CheckRow {
  std::string block;
  std::string property;
  bool ok = false;

  friend bool operator==(const CheckRow&, const CheckRow&) = default;
};

struct IntegralityCertificate {
  std::string contract;  // "totals integral" or "totals in {0,1}"
  bool ok = false;
  std::vector<CheckRow> rows;

  friend bool operator==(const IntegralityCertificate&, const IntegralityCertificate&) = default;
};

struct FactorLift {
  MTFactorDatum datum;  // as consumed by the construction
  SubtypeVerdict subtype;
  CoverDescriptor cover;
  CaseTag case_tag = CaseTag::general_ABCD;
  int K_over_K0 = 0;     // field degree driving the case split; 0 if unused
  bool mu_t_skipped = false;
  bool centre_shrunk = false;
  std::vector<RepBlock> blocks;
  TorusDescriptor torus;
  IntegralityCertificate certificate;

  friend bool operator==(const FactorLift&, const FactorLift&) = default;
};

struct LiftDescriptor {
  std::vector<FactorLift> factors;
  bool derived_simply_connected = true;

  friend bool operator==(const LiftDescriptor&, const LiftDescriptor&) = default;
};

// The essentially-unliftable weak lift of one factor: simply connected cover
// for types A, B, C and D_R, h-maximal cover for D_H; block weights are
// recentered to +-1/2 and shifted by the CM layer so that every non-compact
// total weight lands in {0,1}.
FactorLift general_weak_lift(const MTFactorDatum& f);

// The simply connected lift of a D_H factor with its compensating norm-one
// CM torus; requires every Hodge node at node k (see normalize_hodge_nodes).
// All total weights are integers.
FactorLift dkh_lift(const MTFactorDatum& f);

struct AbelianizedRow {
  std::string index;
  std::string conj_index;
  Rat exponent;
  Rat conj_exponent;

  friend bool operator==(const AbelianizedRow&, const AbelianizedRow&) = default;
};

struct AbelianizedTable {
  std::vector<AbelianizedRow> rows;
  bool weight_zero = true;  // every conjugate pair sums to zero

  friend bool operator==(const AbelianizedTable&, const AbelianizedTable&) = default;
};

// Exponent table of the abelianized Hodge cocharacter of a dkh_lift output,
// expanded over conjugate embedding pairs.
AbelianizedTable abelianized_hodge(const FactorLift& lift);

// Product over all factors: dkh_lift for D_H, general_weak_lift otherwise.
// The combined derived group is simply connected.
LiftDescriptor assemble(const std::vector<MTFactorDatum>& factors);

}  // namespace mtlift
