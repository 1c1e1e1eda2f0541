#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtlift/datumfile.hpp"
#include "mtlift/liftbuilder.hpp"
#include "mtlift/twoweight.hpp"

namespace mtlift {

struct FactorClassifyReport {
  std::vector<Violation> violations;
  std::optional<SubtypeVerdict> verdict;
  std::string error;  // classification error (e.g. mixed nodes), if any

  friend bool operator==(const FactorClassifyReport&, const FactorClassifyReport&) = default;
};

struct ClassifyReport {
  std::vector<FactorClassifyReport> factors;
  bool all_valid = true;

  friend bool operator==(const ClassifyReport&, const ClassifyReport&) = default;
};

ClassifyReport run_classify(const DatumFile& file);

enum class LiftMode { unliftable, simply_connected };
std::string lift_mode_name(LiftMode m);

struct FactorLiftReport {
  std::optional<FactorLift> lift;
  std::optional<AbelianizedTable> abelianized;  // dkh outputs only
  std::string error;

  friend bool operator==(const FactorLiftReport&, const FactorLiftReport&) = default;
};

struct LiftReport {
  LiftMode mode = LiftMode::unliftable;
  std::vector<FactorLiftReport> factors;
  bool ok = true;
  bool derived_simply_connected = true;

  friend bool operator==(const LiftReport&, const LiftReport&) = default;
};

LiftReport run_lift(const DatumFile& file, LiftMode mode);

// Machine block (emit and parse; parse(emit(x)) == x).
nlohmann::json to_json(const ClassifyReport&);
nlohmann::json to_json(const LiftReport&);
nlohmann::json to_json(const TwoWeightTable&);
ClassifyReport classify_report_from_json(const nlohmann::json&);
LiftReport lift_report_from_json(const nlohmann::json&);
TwoWeightTable two_weight_table_from_json(const nlohmann::json&);

// Human-readable rendering; `machine` appends or replaces with the JSON block.
std::string render_classify(const ClassifyReport&, const DatumFile&, bool machine_only);
std::string render_lift(const LiftReport&, const DatumFile&, bool machine_only);
std::string render_table(const TwoWeightTable&, bool machine_only);

}  // namespace mtlift
