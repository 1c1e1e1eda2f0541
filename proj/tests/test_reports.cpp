#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "mtlift/datumfile.hpp"
#include "mtlift/report.hpp"

using namespace mtlift;

#ifndef MTLIFT_FIXTURES_DIR
#define MTLIFT_FIXTURES_DIR "fixtures"
#endif

namespace {

DatumFile parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse_datum(in, "test");
}

std::string fixture(const std::string& name) {
  return std::string(MTLIFT_FIXTURES_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("datum parsing: fixtures load and validate") {
  for (const char* name : {"mumford.datum", "d4_trivial.datum", "d4_triality.datum",
                           "d5_dh.datum", "b3.datum", "d6_dh_quadratic.datum",
                           "d6_dr.datum", "mixed_b3_d5.datum"}) {
    DatumFile file = parse_datum_file(fixture(name));
    CHECK(file.version == 1);
    for (const auto& f : file.factors) CHECK(validate(f).empty());
  }
}

TEST_CASE("datum parsing: strictness") {
  // malformed JSON
  CHECK_THROWS_AS(parse_string("{ nope"), DatumParseError);
  // unknown top-level field
  CHECK_THROWS_AS(parse_string(R"({"version":1,"factors":[],"extra":0})"),
                  DatumParseError);
  // unknown factor field
  CHECK_THROWS_AS(parse_string(R"({"version":1,"factors":[
    {"family":"B","rank":3,"embeddings":["a"],"galois":[],"compact":[],
     "hodge_nodes":{"a":1},"typo":true}]})"),
                  DatumParseError);
  // duplicate labels
  CHECK_THROWS_AS(parse_string(R"({"version":1,"factors":[
    {"family":"B","rank":3,"embeddings":["a","a"],"galois":[],"compact":[],
     "hodge_nodes":{"a":1}}]})"),
                  DatumParseError);
  // unknown label in a permutation
  CHECK_THROWS_AS(parse_string(R"({"version":1,"factors":[
    {"family":"B","rank":3,"embeddings":["a"],"galois":[{"perm":{"a":"b"},"nodes":{}}],
     "compact":[],"hodge_nodes":{"a":1}}]})"),
                  DatumParseError);
  // non-bijective node map
  CHECK_THROWS_AS(parse_string(R"({"version":1,"factors":[
    {"family":"D","rank":4,"embeddings":["a"],
     "galois":[{"perm":{},"nodes":{"a":{"1":3,"3":3}}}],
     "compact":[],"hodge_nodes":{"a":4}}]})"),
                  DatumParseError);
  // node out of range
  CHECK_THROWS_AS(parse_string(R"({"version":1,"factors":[
    {"family":"D","rank":4,"embeddings":["a"],"galois":[],
     "compact":[],"hodge_nodes":{"a":9}}]})"),
                  DatumParseError);
  // bad version
  CHECK_THROWS_AS(parse_string(R"({"version":2,"factors":[]})"), DatumParseError);
  // missing file
  CHECK_THROWS_AS(parse_datum_file("/nonexistent/x.datum"), DatumParseError);
}

TEST_CASE("datum parsing: explicit conjugation override is caught by validate") {
  DatumFile file = parse_string(R"({"version":1,"factors":[
    {"family":"D","rank":5,"embeddings":["a"],"galois":[],
     "compact":[],"hodge_nodes":{"a":5},
     "conjugation":{"nodes":{"a":{}}}}]})");
  // trivial conjugation on D_5 violates the opposition involution
  auto violations = validate(file.factors[0]);
  REQUIRE_FALSE(violations.empty());
  CHECK(violations[0].code == "opposition involution");
}

TEST_CASE("decomposed flags parse and validate") {
  DatumFile file = parse_string(R"({"version":1,"factors":[
    {"family":"B","rank":3,"embeddings":["a"],"galois":[],
     "compact":[],"hodge_nodes":{"a":1},
     "decomposed":{"res_form":true,"single_isotypic":true}}]})");
  CHECK(file.factors[0].decomposed.has_value());
  CHECK(validate(file.factors[0]).empty());

  DatumFile bad = parse_string(R"({"version":1,"factors":[
    {"family":"B","rank":3,"embeddings":["a"],"galois":[],
     "compact":[],"hodge_nodes":{"a":1},
     "decomposed":{"res_form":false,"single_isotypic":true}}]})");
  CHECK_FALSE(validate(bad.factors[0]).empty());
}

TEST_CASE("classify report: machine block round-trips") {
  for (const char* name : {"mumford.datum", "d4_triality.datum", "d6_dr.datum"}) {
    DatumFile file = parse_datum_file(fixture(name));
    ClassifyReport report = run_classify(file);
    CHECK(classify_report_from_json(to_json(report)) == report);
  }
}

TEST_CASE("lift report: machine block round-trips") {
  for (const char* name : {"mumford.datum", "d5_dh.datum", "d6_dh_quadratic.datum",
                           "mixed_b3_d5.datum"}) {
    DatumFile file = parse_datum_file(fixture(name));
    for (LiftMode mode : {LiftMode::unliftable, LiftMode::simply_connected}) {
      LiftReport report = run_lift(file, mode);
      CHECK(report.ok);
      CHECK(lift_report_from_json(to_json(report)) == report);
    }
  }
}

TEST_CASE("table round-trips") {
  TwoWeightTable t = two_weight_table(6);
  TwoWeightTable back = two_weight_table_from_json(to_json(t));
  REQUIRE(back.rows.size() == t.rows.size());
  for (size_t i = 0; i < t.rows.size(); ++i) CHECK(back.rows[i] == t.rows[i]);
}

TEST_CASE("classify fixtures produce the expected verdicts") {
  {
    ClassifyReport r = run_classify(parse_datum_file(fixture("mumford.datum")));
    CHECK(r.all_valid);
    REQUIRE(r.factors.size() == 1);
    CHECK(r.factors[0].verdict->subtype == Subtype::not_D);
  }
  {
    ClassifyReport r = run_classify(parse_datum_file(fixture("d4_trivial.datum")));
    CHECK(r.all_valid);
    CHECK(r.factors[0].verdict->subtype == Subtype::D_R);
    CHECK(r.factors[0].verdict->delta_prime_max ==
          std::vector<std::vector<int>>{{1, 3}});
  }
  {
    ClassifyReport r = run_classify(parse_datum_file(fixture("d4_triality.datum")));
    CHECK(r.all_valid);
    CHECK(r.factors[0].verdict->subtype == Subtype::D_H);
  }
}

TEST_CASE("lift reports carry the case tag and certificates") {
  {
    LiftReport r = run_lift(parse_datum_file(fixture("d5_dh.datum")),
                            LiftMode::simply_connected);
    REQUIRE(r.ok);
    CHECK(r.factors[0].lift->case_tag == CaseTag::k_odd);
    CHECK(r.factors[0].lift->certificate.ok);
    CHECK(r.factors[0].abelianized.has_value());
    CHECK(r.factors[0].abelianized->weight_zero);
    CHECK(r.derived_simply_connected);
  }
  {
    LiftReport r = run_lift(parse_datum_file(fixture("d5_dh.datum")),
                            LiftMode::unliftable);
    REQUIRE(r.ok);
    CHECK(r.factors[0].lift->cover.label == CoverLabel::h_maximal);
    CHECK_FALSE(r.factors[0].abelianized.has_value());
  }
  {
    // b3: both modes produce the same simply connected cover
    DatumFile file = parse_datum_file(fixture("b3.datum"));
    LiftReport a = run_lift(file, LiftMode::unliftable);
    LiftReport b = run_lift(file, LiftMode::simply_connected);
    CHECK(a.factors[0].lift->cover == b.factors[0].lift->cover);
  }
}

TEST_CASE("human rendering is deterministic and embeds the machine block") {
  DatumFile file = parse_datum_file(fixture("d6_dh_quadratic.datum"));
  LiftReport r = run_lift(file, LiftMode::simply_connected);
  std::string once = render_lift(r, file, false);
  std::string twice = render_lift(run_lift(file, LiftMode::simply_connected), file, false);
  CHECK(once == twice);
  CHECK(once.find("--- machine ---") != std::string::npos);
  CHECK(once.find("k_even_K_quadratic") != std::string::npos);
  std::string machine_only = render_lift(r, file, true);
  CHECK(machine_only.find("--- machine ---") == std::string::npos);
}
