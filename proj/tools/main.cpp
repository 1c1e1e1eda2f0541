#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mtlift/datumfile.hpp"
#include "mtlift/report.hpp"

namespace {

using namespace mtlift;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;  // validation or construction failure
constexpr int kExitInput = 2;   // unreadable or malformed input

int cmd_classify(const std::string& path, bool machine) {
  DatumFile file;
  try {
    file = parse_datum_file(path);
  } catch (const DatumParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInput;
  }
  ClassifyReport report = run_classify(file);
  std::cout << render_classify(report, file, machine);
  return report.all_valid ? kExitOk : kExitDomain;
}

int cmd_lift(const std::string& path, const std::string& mode_name, bool machine) {
  DatumFile file;
  try {
    file = parse_datum_file(path);
  } catch (const DatumParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInput;
  }
  LiftMode mode = mode_name == "unliftable" ? LiftMode::unliftable
                                            : LiftMode::simply_connected;
  LiftReport report = run_lift(file, mode);
  std::cout << render_lift(report, file, machine);
  return report.ok ? kExitOk : kExitDomain;
}

int cmd_weights(const std::string& family, int rank, int s, int node, bool machine) {
  try {
    RootDatum rd(family_from_letter(family.at(0)), rank);
    if (node < 1 || node > rank)
      throw std::out_of_range("node index out of range");
    auto values = pairing_values(irrep_weights(rd, s), fundamental_coweight(rd, node));
    int distinct = static_cast<int>(values.size());
    nlohmann::json machine_block;
    machine_block["kind"] = "weights";
    machine_block["family"] = family;
    machine_block["rank"] = rank;
    machine_block["s"] = s;
    machine_block["node"] = node;
    nlohmann::json vj = nlohmann::json::object();
    for (const auto& [v, m] : values) vj[v.str()] = m;
    machine_block["values"] = vj;
    machine_block["distinct"] = distinct;
    machine_block["two_weight"] = distinct == 2;
    if (machine) {
      std::cout << machine_block.dump(2) << "\n";
    } else {
      std::cout << family << rank << " varpi_" << s
                << " against the coweight dual to node " << node << "\n";
      std::cout << "values:";
      for (const auto& [v, m] : values) std::cout << " " << v.str() << " (x" << m << ")";
      std::cout << "\nverdict: " << (distinct == 2 ? "two-weight" : std::to_string(distinct) + " distinct")
                << "\n";
      std::cout << "--- machine ---\n" << machine_block.dump(2) << "\n";
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

int cmd_table(int max_rank, bool machine) {
  try {
    std::cout << render_table(two_weight_table(max_rank), machine);
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

// Replays the full pipeline on every bundled fixture and checks the library
// invariants that do not depend on expected values: validity, certificate
// success, machine-block round-trips and byte determinism.
int cmd_check(const std::string& fixtures_dir, bool machine) {
  namespace fs = std::filesystem;
  std::vector<std::string> paths;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(fixtures_dir, ec))
    if (entry.path().extension() == ".datum") paths.push_back(entry.path().string());
  if (ec || paths.empty()) {
    std::cerr << "error: no .datum fixtures under '" << fixtures_dir << "'\n";
    return kExitInput;
  }
  std::sort(paths.begin(), paths.end());

  bool all_ok = true;
  nlohmann::json results = nlohmann::json::array();
  for (const std::string& path : paths) {
    std::vector<std::string> failures;
    try {
      DatumFile file = parse_datum_file(path);
      ClassifyReport classified = run_classify(file);
      if (!classified.all_valid) failures.push_back("datum does not validate");
      if (classify_report_from_json(to_json(classified)) != classified)
        failures.push_back("classify machine block does not round-trip");
      for (LiftMode mode : {LiftMode::unliftable, LiftMode::simply_connected}) {
        LiftReport lifted = run_lift(file, mode);
        if (!lifted.ok) failures.push_back(lift_mode_name(mode) + " lift failed");
        for (const auto& fr : lifted.factors) {
          if (fr.lift && !fr.lift->certificate.ok)
            failures.push_back(lift_mode_name(mode) + " certificate failed");
          if (fr.abelianized && !fr.abelianized->weight_zero)
            failures.push_back("abelianized table is not weight zero");
        }
        if (lift_report_from_json(to_json(lifted)) != lifted)
          failures.push_back(lift_mode_name(mode) + " machine block does not round-trip");
        if (render_lift(lifted, file, false) !=
            render_lift(run_lift(file, mode), file, false))
          failures.push_back(lift_mode_name(mode) + " output is not deterministic");
      }
    } catch (const std::exception& e) {
      failures.push_back(std::string("exception: ") + e.what());
    }
    std::string name = fs::path(path).filename().string();
    if (!machine) {
      if (failures.empty()) {
        std::cout << "fixture " << name << ": PASS\n";
      } else {
        std::cout << "fixture " << name << ": FAIL\n";
        for (const auto& f : failures) std::cout << "  - " << f << "\n";
      }
    }
    results.push_back({{"fixture", name}, {"failures", failures}});
    all_ok &= failures.empty();
  }
  if (machine)
    std::cout << nlohmann::json{{"kind", "check"}, {"results", results}, {"ok", all_ok}}.dump(2)
              << "\n";
  else
    std::cout << (all_ok ? "check passed" : "check failed") << "\n";
  return all_ok ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Root-system engine for Mumford-Tate data: two-weight classification, "
               "D-subtype detection and weak lift construction"};
  app.require_subcommand(1);

  bool machine = false;
  app.add_flag("--machine", machine, "emit only the machine-readable block");

  std::string path, mode = "unliftable", family;
  int rank = 0, s = 0, node = 0, max_rank = 8;
  std::string fixtures_dir = "fixtures";

  auto* classify_cmd = app.add_subcommand("classify", "validate a datum file and classify D-subtypes");
  classify_cmd->add_option("path", path, "datum file")->required();

  auto* lift_cmd = app.add_subcommand("lift", "construct weak Mumford-Tate lift descriptors");
  lift_cmd->add_option("path", path, "datum file")->required();
  lift_cmd->add_option("--mode", mode, "unliftable | simply_connected")
      ->check(CLI::IsMember({"unliftable", "simply_connected"}));

  auto* weights_cmd = app.add_subcommand("weights", "pairing values of one representation");
  weights_cmd->add_option("family", family, "A, B, C or D")->required();
  weights_cmd->add_option("rank", rank, "rank")->required();
  weights_cmd->add_option("s", s, "highest-weight node")->required();
  weights_cmd->add_option("node", node, "cocharacter node")->required();

  auto* table_cmd = app.add_subcommand("table", "emit the two-weight table");
  table_cmd->add_option("max_rank", max_rank, "largest rank (2..9)")->required();

  auto* check_cmd = app.add_subcommand("check", "run the invariant suite on bundled fixtures");
  check_cmd->add_option("--fixtures-dir", fixtures_dir, "fixture directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (classify_cmd->parsed()) return cmd_classify(path, machine);
  if (lift_cmd->parsed()) return cmd_lift(path, mode, machine);
  if (weights_cmd->parsed()) return cmd_weights(family, rank, s, node, machine);
  if (table_cmd->parsed()) return cmd_table(max_rank, machine);
  if (check_cmd->parsed()) return cmd_check(fixtures_dir, machine);
  return 2;
}
