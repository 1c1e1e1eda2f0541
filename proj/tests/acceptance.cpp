// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "corpus.hpp"
#include "mtlift/datumfile.hpp"
#include "mtlift/liftbuilder.hpp"
#include "mtlift/report.hpp"
#include "mtlift/twoweight.hpp"
#include "oracles.hpp"
#include "subprocess.hpp"

#ifndef MTLIFT_CLI_PATH
#define MTLIFT_CLI_PATH "mtlift"
#endif
#ifndef MTLIFT_FIXTURES_DIR
#define MTLIFT_FIXTURES_DIR "fixtures"
#endif

using namespace mtlift;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  int number;
  std::string description;
  std::function<void(std::ostream&)> run;  // writes failures; empty = pass
  double budget_seconds = 0;               // 0 = unbudgeted
};

std::set<Rat> distinct(const std::map<Rat, int>& ws) {
  std::set<Rat> s;
  for (const auto& [v, m] : ws) s.insert(v);
  return s;
}

// 1. Half-spin cocharacter weights: exact value ranges for k = 4..9.
void criterion_weights_ranges(std::ostream& fail) {
  for (int k = 4; k <= 9; ++k) {
    RootDatum rd(Family::D, k);
    QuasiCocharacter nu = fundamental_coweight(rd, k);
    std::set<Rat> lower = distinct(pairing_values(irrep_weights(rd, k - 1), nu));
    std::set<Rat> upper = distinct(pairing_values(irrep_weights(rd, k), nu));
    int m1_max = k % 2 == 0 ? (k - 2) / 2 : (k - 1) / 2;
    int m2_max = k % 2 == 0 ? k / 2 : (k - 1) / 2;
    std::set<Rat> lower_expected, upper_expected;
    for (int m = 0; m <= m1_max; ++m) lower_expected.insert(Rat(k - 2, 4) - Rat(m));
    for (int m = 0; m <= m2_max; ++m) upper_expected.insert(Rat(k, 4) - Rat(m));
    if (lower != lower_expected)
      fail << "k=" << k << ": varpi_{k-1} values differ from (k-2)/4 - m1 range; ";
    if (upper != upper_expected)
      fail << "k=" << k << ": varpi_k values differ from k/4 - m2 range; ";
  }
}

// 2. Two-weight table against the closed-form oracle plus the named claims.
void criterion_two_weight_table(std::ostream& fail) {
  for (Family f : {Family::A, Family::B, Family::C, Family::D}) {
    int lo = f == Family::A ? 1 : (f == Family::D ? 3 : 2);
    for (int k = lo; k <= 8; ++k) {
      RootDatum rd(f, k);
      std::vector<int> nodes;
      if (f == Family::A)
        for (int j = 1; j <= k; ++j) nodes.push_back(j);
      else
        nodes = rd.endpoints();
      for (int node : nodes) {
        std::set<int> expected;
        for (int s : supported_irreps(rd))
          if (oracle::cf_distinct_pairings(rd, s, node).size() == 2) expected.insert(s);
        if (two_weight_fundamentals(rd, node) != expected) {
          fail << family_letter(f) << k << " node " << node << " disagrees with oracle; ";
          continue;
        }
      }
    }
  }
  for (int k = 2; k <= 8; ++k) {
    if (two_weight_fundamentals(RootDatum(Family::B, k), 1) != std::set<int>{k})
      fail << "B_" << k << " claim failed; ";
    if (two_weight_fundamentals(RootDatum(Family::C, k), k) != std::set<int>{1})
      fail << "C_" << k << " claim failed; ";
  }
  for (int k = 1; k <= 8; ++k) {
    std::set<int> all;
    for (int s = 1; s <= k; ++s) all.insert(s);
    if (two_weight_fundamentals(RootDatum(Family::A, k), 1) != all)
      fail << "A_" << k << " node-1 claim failed; ";
  }
  for (int k = 3; k <= 8; ++k)
    for (int j = 2; j <= k - 1; ++j)
      if (two_weight_fundamentals(RootDatum(Family::A, k), j) != std::set<int>{1, k})
        fail << "A_" << k << " interior node " << j << " claim failed; ";
  for (int k = 4; k <= 8; ++k) {
    if (two_weight_fundamentals(RootDatum(Family::D, k), 1) != std::set<int>{k - 1, k})
      fail << "D_" << k << " node-1 claim failed; ";
    for (int node : {k - 1, k})
      if (!two_weight_fundamentals(RootDatum(Family::D, k), node).count(1))
        fail << "D_" << k << " fork node " << node << " misses varpi_1; ";
  }
}

// 3. Three-weight obstruction, with the k = 4 caveat.
void criterion_spin_obstruction(std::ostream& fail) {
  for (int k = 5; k <= 9; ++k) {
    auto r = spin_three_weight_obstruction(k);
    if (r.distinct_on_lower < 3 || r.distinct_on_upper < 3)
      fail << "k=" << k << ": a half-spin has fewer than 3 values; ";
  }
  auto r4 = spin_three_weight_obstruction(4);
  bool exactly_one_two = (r4.distinct_on_lower == 2) != (r4.distinct_on_upper == 2);
  if (!exactly_one_two || r4.distinct_on_lower != 2 || r4.distinct_on_upper != 3)
    fail << "k=4: expected varpi_3 -> 2 values and varpi_4 -> 3, got "
         << r4.distinct_on_lower << "/" << r4.distinct_on_upper << "; ";
}

// 4. Centre arithmetic.
void criterion_centre(std::ostream& fail) {
  for (int k = 4; k <= 9; ++k) {
    auto expected = k % 2 == 0 ? std::vector<int>{2, 2} : std::vector<int>{4};
    if (centre(RootDatum(Family::D, k)).invariant_factors != expected)
      fail << "centre(D_" << k << ") wrong; ";
    if (rep_kernel(RootDatum(Family::D, k), {1}).order() != 2)
      fail << "rep_kernel(D_" << k << ", {1}) order != 2; ";
  }
  for (int k = 5; k <= 9; ++k)
    if (!faithful_fundamental_requires_spin(k))
      fail << "faithful_fundamental_requires_spin(" << k << ") false; ";
}

// 5. dkh_lift integrality over the generated D_H corpus.
void criterion_dkh_integrality(std::ostream& fail) {
  auto corpus = corpus::dh_corpus();
  if (corpus.size() < 200) {
    fail << "corpus has only " << corpus.size() << " data; ";
    return;
  }
  int checked = 0;
  for (const MTFactorDatum& f : corpus) {
    MTFactorDatum n = normalize_hodge_nodes(f);
    FactorLift lift = dkh_lift(n);
    for (const RepBlock& b : lift.blocks)
      for (const auto& [w, m] : b.totals())
        if (!w.is_integer()) {
          fail << "non-integral total on " << b.index << " (k=" << f.rd.rank << "); ";
          return;
        }
    AbelianizedTable ab = abelianized_hodge(lift);
    for (const auto& row : ab.rows)
      if (!(row.exponent + row.conj_exponent).is_zero()) {
        fail << "conjugate pair sum nonzero at " << row.index << "; ";
        return;
      }
    if (!lift.certificate.ok) {
      fail << "certificate failed (k=" << f.rd.rank << "); ";
      return;
    }
    ++checked;
  }
  if (checked < 200) fail << "only " << checked << " data checked; ";
}

// 6. general_weak_lift Hodge type over a corpus covering every family/subtype.
void criterion_general_hodge_type(std::ostream& fail) {
  auto corpus = corpus::general_corpus();
  std::set<std::string> seen;
  for (const MTFactorDatum& f : corpus) {
    FactorLift lift = general_weak_lift(f);
    std::string key(1, family_letter(f.rd.family));
    if (f.rd.family == Family::D) key += "_" + subtype_name(lift.subtype.subtype);
    if (f.rd.family == Family::A && f.rd.rank == 1) key = "A1";
    seen.insert(key);
    for (const RepBlock& b : lift.blocks) {
      if (b.compact) continue;
      if (distinct(b.totals()) != std::set<Rat>{Rat(0), Rat(1)}) {
        fail << "totals not {0,1} on " << b.index << "; ";
        return;
      }
      std::set<Rat> corrected;
      for (const auto& [w, m] : b.cochar_weights) corrected.insert(w + b.mu_t_exponent);
      if (corrected != std::set<Rat>{Rat(-1, 2), Rat(1, 2)}) {
        fail << "corrected weights not +-1/2 on " << b.index << "; ";
        return;
      }
    }
    // The recentering shortcut fires exactly on the factors where the raw
    // weights are already +-1/2: every non-A factor, and A_1.
    bool should_fire = f.rd.family != Family::A || f.rd.rank == 1;
    if (lift.mu_t_skipped != should_fire) {
      fail << "shortcut fired=" << lift.mu_t_skipped << " on "
           << family_letter(f.rd.family) << f.rd.rank << "; ";
      return;
    }
  }
  for (const char* key : {"A1", "A", "B", "C", "D_D_R", "D_D_H"})
    if (!seen.count(key)) fail << "corpus misses " << key << "; ";
}

// 7. Classification fixtures.
void criterion_fixtures(std::ostream& fail) {
  std::string dir = MTLIFT_FIXTURES_DIR;
  {
    DatumFile file = parse_datum_file(dir + "/mumford.datum");
    ClassifyReport r = run_classify(file);
    if (!r.all_valid) fail << "mumford.datum does not validate; ";
    LiftReport lift = run_lift(file, LiftMode::unliftable);
    if (!lift.ok || lift.factors[0].lift->cover.label != CoverLabel::simply_connected)
      fail << "mumford unliftable lift is not simply connected; ";
  }
  {
    ClassifyReport r = run_classify(parse_datum_file(dir + "/d4_trivial.datum"));
    if (!r.factors[0].verdict || r.factors[0].verdict->subtype != Subtype::D_R ||
        r.factors[0].verdict->delta_prime_max != std::vector<std::vector<int>>{{1, 3}})
      fail << "d4_trivial verdict is not D_R with witness {1,3}; ";
  }
  {
    ClassifyReport r = run_classify(parse_datum_file(dir + "/d4_triality.datum"));
    if (!r.factors[0].verdict || r.factors[0].verdict->subtype != Subtype::D_H)
      fail << "d4_triality verdict is not D_H; ";
  }
}

// 8. Byte determinism of the CLI on every fixture and command.
void criterion_determinism(std::ostream& fail) {
  namespace fs = std::filesystem;
  std::string cli = MTLIFT_CLI_PATH;
  std::string dir = MTLIFT_FIXTURES_DIR;
  std::vector<std::string> commands;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".datum") continue;
    std::string p = entry.path().string();
    for (const char* suffix : {"", " --machine"}) {
      commands.push_back(cli + " classify " + p + suffix);
      commands.push_back(cli + " lift " + p + " --mode unliftable" + suffix);
      commands.push_back(cli + " lift " + p + " --mode simply_connected" + suffix);
    }
  }
  commands.push_back(cli + " table 8");
  commands.push_back(cli + " --machine table 8");
  commands.push_back(cli + " weights D 5 5 5");
  commands.push_back(cli + " check --fixtures-dir " + dir);
  std::sort(commands.begin(), commands.end());
  for (const std::string& cmd : commands) {
    auto first = testing::run_command(cmd);
    auto second = testing::run_command(cmd);
    if (first.output != second.output || first.exit_code != second.exit_code) {
      fail << "non-deterministic output: " << cmd << "; ";
      return;
    }
  }
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "half-spin cocharacter weight ranges, k = 4..9", criterion_weights_ranges, 1.0},
      {2, "two-weight table vs oracle and the classical-type claims, ranks <= 8",
       criterion_two_weight_table, 5.0},
      {3, "three-weight obstruction with the k = 4 caveat", criterion_spin_obstruction, 0},
      {4, "centre arithmetic and faithful-set enumeration", criterion_centre, 0},
      {5, "dkh_lift integrality over >= 200 D_H data", criterion_dkh_integrality, 30.0},
      {6, "general_weak_lift Hodge type over all families/subtypes",
       criterion_general_hodge_type, 0},
      {7, "classification fixtures", criterion_fixtures, 0},
      {8, "CLI byte determinism on every fixture", criterion_determinism, 0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    std::ostringstream fail;
    auto start = Clock::now();
    try {
      c.run(fail);
    } catch (const std::exception& e) {
      fail << "exception: " << e.what();
    }
    double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.budget_seconds > 0 && seconds >= c.budget_seconds)
      fail << "time budget exceeded (" << seconds << "s); ";
    bool ok = fail.str().empty();
    failures += ok ? 0 : 1;
    std::printf("criterion %d: %s — %s [%.2fs]%s%s\n", c.number, ok ? "PASS" : "FAIL",
                c.description.c_str(), seconds, ok ? "" : " :: ",
                fail.str().c_str());
  }
  return failures;
}
