#include "mtlift/report.hpp"

#include <sstream>

namespace mtlift {

namespace {

using nlohmann::json;

// ---- serialization helpers ----

json rat_json(const Rat& r) { return r.str(); }
Rat rat_from(const json& v) { return Rat::parse(v.get<std::string>()); }

json weights_json(const std::map<Rat, int>& ws) {
  json obj = json::object();
  for (const auto& [w, m] : ws) obj[w.str()] = m;
  return obj;
}

std::map<Rat, int> weights_from(const json& v) {
  std::map<Rat, int> ws;
  for (const auto& [key, val] : v.items()) ws[Rat::parse(key)] = val.get<int>();
  return ws;
}

json node_map_json(const NodeMap& m) { return m.image; }
NodeMap node_map_from(const json& v) { return NodeMap{v.get<std::vector<int>>()}; }

json factor_datum_json(const MTFactorDatum& f) {
  json j;
  j["family"] = std::string(1, family_letter(f.rd.family));
  j["rank"] = f.rd.rank;
  j["labels"] = f.labels;
  json gens = json::array();
  for (const auto& g : f.generators) {
    json nodes = json::array();
    for (const auto& m : g.node_action) nodes.push_back(node_map_json(m));
    gens.push_back({{"perm", g.perm}, {"nodes", nodes}});
  }
  j["generators"] = gens;
  json conj = json::array();
  for (const auto& m : f.conjugation_action) conj.push_back(node_map_json(m));
  j["conjugation"] = conj;
  j["compact"] = f.compact;
  json hodge = json::object();
  for (const auto& [i, node] : f.hodge_node) hodge[std::to_string(i)] = node;
  j["hodge_nodes"] = hodge;
  if (f.decomposed)
    j["decomposed"] = {{"res_form", f.decomposed->res_form},
                       {"single_isotypic", f.decomposed->single_isotypic}};
  else
    j["decomposed"] = nullptr;
  return j;
}

MTFactorDatum factor_datum_from(const json& j) {
  RootDatum rd(family_from_letter(j.at("family").get<std::string>().at(0)),
               j.at("rank").get<int>());
  MTFactorDatum f = make_factor(rd, j.at("labels").get<std::vector<std::string>>());
  f.generators.clear();
  for (const auto& g : j.at("generators")) {
    GaloisGenerator gen;
    gen.perm = g.at("perm").get<std::vector<int>>();
    for (const auto& m : g.at("nodes")) gen.node_action.push_back(node_map_from(m));
    f.generators.push_back(std::move(gen));
  }
  f.conjugation_action.clear();
  for (const auto& m : j.at("conjugation")) f.conjugation_action.push_back(node_map_from(m));
  f.compact = j.at("compact").get<std::vector<bool>>();
  f.hodge_node.clear();
  for (const auto& [key, val] : j.at("hodge_nodes").items())
    f.hodge_node[std::stoi(key)] = val.get<int>();
  if (!j.at("decomposed").is_null())
    f.decomposed = DecomposedFlags{j.at("decomposed").at("res_form").get<bool>(),
                                   j.at("decomposed").at("single_isotypic").get<bool>()};
  return f;
}

json verdict_json(const SubtypeVerdict& v) {
  return {{"subtype", subtype_name(v.subtype)},
          {"delta_prime_max", v.delta_prime_max},
          {"evidence", v.evidence},
          {"candidates_examined", v.candidates_examined}};
}

SubtypeVerdict verdict_from(const json& j) {
  SubtypeVerdict v;
  std::string name = j.at("subtype").get<std::string>();
  v.subtype = name == "D_R" ? Subtype::D_R : name == "D_H" ? Subtype::D_H : Subtype::not_D;
  v.delta_prime_max = j.at("delta_prime_max").get<std::vector<std::vector<int>>>();
  v.evidence = j.at("evidence").get<std::string>();
  v.candidates_examined = j.at("candidates_examined").get<int>();
  return v;
}

json cover_json(const CoverDescriptor& c) {
  return {{"family", std::string(1, family_letter(c.family))},
          {"rank", c.rank},
          {"kernel", {{"moduli", c.kernel.moduli}, {"elements", c.kernel.elements}}},
          {"label", cover_label_name(c.label)},
          {"vector_endpoint", c.vector_endpoint}};
}

CoverDescriptor cover_from(const json& j) {
  CoverDescriptor c;
  c.family = family_from_letter(j.at("family").get<std::string>().at(0));
  c.rank = j.at("rank").get<int>();
  c.kernel.moduli = j.at("kernel").at("moduli").get<std::vector<int>>();
  c.kernel.elements = j.at("kernel").at("elements").get<std::vector<std::vector<int>>>();
  std::string label = j.at("label").get<std::string>();
  for (CoverLabel l : {CoverLabel::simply_connected, CoverLabel::h_maximal,
                       CoverLabel::adjoint, CoverLabel::other})
    if (cover_label_name(l) == label) c.label = l;
  c.vector_endpoint = j.at("vector_endpoint").get<int>();
  return c;
}

json block_json(const RepBlock& b) {
  return {{"index", b.index},
          {"compact", b.compact},
          {"highest_weights", b.highest_weights},
          {"mu_node", b.mu_node},
          {"cochar_weights", weights_json(b.cochar_weights)},
          {"mu_t_exponent", rat_json(b.mu_t_exponent)},
          {"torus_exponent", rat_json(b.torus_exponent)},
          {"totals", weights_json(b.totals())}};
}

RepBlock block_from(const json& j) {
  RepBlock b;
  b.index = j.at("index").get<std::string>();
  b.compact = j.at("compact").get<bool>();
  b.highest_weights = j.at("highest_weights").get<std::vector<int>>();
  b.mu_node = j.at("mu_node").get<int>();
  b.cochar_weights = weights_from(j.at("cochar_weights"));
  b.mu_t_exponent = rat_from(j.at("mu_t_exponent"));
  b.torus_exponent = rat_from(j.at("torus_exponent"));
  return b;
}

json torus_json(const TorusDescriptor& t) {
  json factors = json::array();
  for (const auto& tf : t.factors) {
    json exps = json::object();
    for (const auto& [coord, e] : tf.exponents) exps[coord] = rat_json(e);
    factors.push_back({{"name", tf.name}, {"exponents", exps}});
  }
  return {{"kind", torus_kind_name(t.kind)}, {"factors", factors}};
}

TorusDescriptor torus_from(const json& j) {
  TorusDescriptor t;
  t.kind = j.at("kind").get<std::string>() == "norm_one_CM" ? TorusKind::norm_one_CM
                                                            : TorusKind::full_CM;
  for (const auto& tf : j.at("factors")) {
    TorusFactor factor;
    factor.name = tf.at("name").get<std::string>();
    for (const auto& [coord, e] : tf.at("exponents").items())
      factor.exponents[coord] = rat_from(e);
    t.factors.push_back(std::move(factor));
  }
  return t;
}

json certificate_json(const IntegralityCertificate& c) {
  json rows = json::array();
  for (const auto& r : c.rows)
    rows.push_back({{"block", r.block}, {"property", r.property}, {"ok", r.ok}});
  return {{"contract", c.contract}, {"ok", c.ok}, {"rows", rows}};
}

IntegralityCertificate certificate_from(const json& j) {
  IntegralityCertificate c;
  c.contract = j.at("contract").get<std::string>();
  c.ok = j.at("ok").get<bool>();
  for (const auto& r : j.at("rows"))
    c.rows.push_back({r.at("block").get<std::string>(),
                      r.at("property").get<std::string>(), r.at("ok").get<bool>()});
  return c;
}

json lift_json(const FactorLift& lift) {
  return {{"datum", factor_datum_json(lift.datum)},
          {"subtype", verdict_json(lift.subtype)},
          {"cover", cover_json(lift.cover)},
          {"case_tag", case_tag_name(lift.case_tag)},
          {"K_over_K0", lift.K_over_K0},
          {"mu_t_skipped", lift.mu_t_skipped},
          {"centre_shrunk", lift.centre_shrunk},
          {"blocks", [&] {
             json arr = json::array();
             for (const auto& b : lift.blocks) arr.push_back(block_json(b));
             return arr;
           }()},
          {"torus", torus_json(lift.torus)},
          {"certificate", certificate_json(lift.certificate)}};
}

FactorLift lift_from(const json& j) {
  FactorLift lift;
  lift.datum = factor_datum_from(j.at("datum"));
  lift.subtype = verdict_from(j.at("subtype"));
  lift.cover = cover_from(j.at("cover"));
  lift.case_tag = case_tag_from_name(j.at("case_tag").get<std::string>());
  lift.K_over_K0 = j.at("K_over_K0").get<int>();
  lift.mu_t_skipped = j.at("mu_t_skipped").get<bool>();
  lift.centre_shrunk = j.at("centre_shrunk").get<bool>();
  for (const auto& b : j.at("blocks")) lift.blocks.push_back(block_from(b));
  lift.torus = torus_from(j.at("torus"));
  lift.certificate = certificate_from(j.at("certificate"));
  return lift;
}

json abelianized_json(const AbelianizedTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"index", r.index},
                    {"conj_index", r.conj_index},
                    {"exponent", rat_json(r.exponent)},
                    {"conj_exponent", rat_json(r.conj_exponent)}});
  return {{"rows", rows}, {"weight_zero", t.weight_zero}};
}

AbelianizedTable abelianized_from(const json& j) {
  AbelianizedTable t;
  for (const auto& r : j.at("rows"))
    t.rows.push_back({r.at("index").get<std::string>(),
                      r.at("conj_index").get<std::string>(),
                      rat_from(r.at("exponent")), rat_from(r.at("conj_exponent"))});
  t.weight_zero = j.at("weight_zero").get<bool>();
  return t;
}

json violations_json(const std::vector<Violation>& vs) {
  json arr = json::array();
  for (const auto& v : vs) arr.push_back({{"code", v.code}, {"detail", v.detail}});
  return arr;
}

std::vector<Violation> violations_from(const json& j) {
  std::vector<Violation> vs;
  for (const auto& v : j)
    vs.push_back({v.at("code").get<std::string>(), v.at("detail").get<std::string>()});
  return vs;
}

std::string multiset_str(const std::map<Rat, int>& ws) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [w, m] : ws) {
    if (!first) os << ", ";
    os << w.str() << ":" << m;
    first = false;
  }
  os << "}";
  return os.str();
}

std::string factor_headline(const MTFactorDatum& f) {
  std::ostringstream os;
  os << family_letter(f.rd.family) << f.rd.rank << ", |I| = " << f.size();
  std::string nc, c;
  for (int i = 0; i < f.size(); ++i) {
    std::string& bucket = f.is_compact(i) ? c : nc;
    if (!bucket.empty()) bucket += ",";
    bucket += f.labels[i];
  }
  os << " (non-compact: " << (nc.empty() ? "-" : nc);
  if (!c.empty()) os << "; compact: " << c;
  os << ")";
  return os.str();
}

}  // namespace

std::string lift_mode_name(LiftMode m) {
  return m == LiftMode::unliftable ? "unliftable" : "simply_connected";
}

ClassifyReport run_classify(const DatumFile& file) {
  ClassifyReport report;
  for (const auto& f : file.factors) {
    FactorClassifyReport fr;
    fr.violations = validate(f);
    if (fr.violations.empty()) {
      try {
        fr.verdict = classify(f);
      } catch (const std::exception& e) {
        fr.error = e.what();
      }
    }
    report.all_valid &= fr.violations.empty() && fr.error.empty();
    report.factors.push_back(std::move(fr));
  }
  return report;
}

LiftReport run_lift(const DatumFile& file, LiftMode mode) {
  LiftReport report;
  report.mode = mode;
  for (const auto& f : file.factors) {
    FactorLiftReport fr;
    auto violations = validate(f);
    if (!violations.empty()) {
      fr.error = "invalid datum: " + violations.front().code + " (" +
                 violations.front().detail + ")";
    } else {
      try {
        if (mode == LiftMode::unliftable) {
          fr.lift = general_weak_lift(f);
        } else {
          SubtypeVerdict verdict = classify(f);
          fr.lift = verdict.subtype == Subtype::D_H
                        ? dkh_lift(normalize_hodge_nodes(f))
                        : general_weak_lift(f);
        }
        if (fr.lift->case_tag != CaseTag::general_ABCD)
          fr.abelianized = abelianized_hodge(*fr.lift);
      } catch (const std::exception& e) {
        fr.error = e.what();
        fr.lift.reset();
      }
    }
    report.ok &= fr.error.empty();
    if (fr.lift)
      report.derived_simply_connected &=
          fr.lift->cover.label == CoverLabel::simply_connected;
    report.factors.push_back(std::move(fr));
  }
  return report;
}

json to_json(const ClassifyReport& r) {
  json factors = json::array();
  for (const auto& fr : r.factors) {
    json j;
    j["violations"] = violations_json(fr.violations);
    j["verdict"] = fr.verdict ? verdict_json(*fr.verdict) : json(nullptr);
    j["error"] = fr.error;
    factors.push_back(j);
  }
  return {{"kind", "classify"}, {"factors", factors}, {"all_valid", r.all_valid}};
}

ClassifyReport classify_report_from_json(const json& j) {
  ClassifyReport r;
  for (const auto& fj : j.at("factors")) {
    FactorClassifyReport fr;
    fr.violations = violations_from(fj.at("violations"));
    if (!fj.at("verdict").is_null()) fr.verdict = verdict_from(fj.at("verdict"));
    fr.error = fj.at("error").get<std::string>();
    r.factors.push_back(std::move(fr));
  }
  r.all_valid = j.at("all_valid").get<bool>();
  return r;
}

json to_json(const LiftReport& r) {
  json factors = json::array();
  for (const auto& fr : r.factors) {
    json j;
    j["lift"] = fr.lift ? lift_json(*fr.lift) : json(nullptr);
    j["abelianized"] = fr.abelianized ? abelianized_json(*fr.abelianized) : json(nullptr);
    j["error"] = fr.error;
    factors.push_back(j);
  }
  return {{"kind", "lift"},
          {"mode", lift_mode_name(r.mode)},
          {"factors", factors},
          {"ok", r.ok},
          {"derived_simply_connected", r.derived_simply_connected}};
}

LiftReport lift_report_from_json(const json& j) {
  LiftReport r;
  r.mode = j.at("mode").get<std::string>() == "unliftable" ? LiftMode::unliftable
                                                           : LiftMode::simply_connected;
  for (const auto& fj : j.at("factors")) {
    FactorLiftReport fr;
    if (!fj.at("lift").is_null()) fr.lift = lift_from(fj.at("lift"));
    if (!fj.at("abelianized").is_null())
      fr.abelianized = abelianized_from(fj.at("abelianized"));
    fr.error = fj.at("error").get<std::string>();
    r.factors.push_back(std::move(fr));
  }
  r.ok = j.at("ok").get<bool>();
  r.derived_simply_connected = j.at("derived_simply_connected").get<bool>();
  return r;
}

json to_json(const TwoWeightTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows)
    rows.push_back({{"family", std::string(1, family_letter(row.family))},
                    {"rank", row.rank},
                    {"mu_node", row.mu_node},
                    {"fundamentals", row.fundamentals}});
  return {{"kind", "two_weight_table"}, {"rows", rows}};
}

TwoWeightTable two_weight_table_from_json(const json& j) {
  TwoWeightTable t;
  for (const auto& row : j.at("rows")) {
    TwoWeightTable::Row r;
    r.family = family_from_letter(row.at("family").get<std::string>().at(0));
    r.rank = row.at("rank").get<int>();
    r.mu_node = row.at("mu_node").get<int>();
    for (int s : row.at("fundamentals")) r.fundamentals.insert(s);
    t.rows.push_back(std::move(r));
  }
  return t;
}

std::string render_classify(const ClassifyReport& r, const DatumFile& file,
                            bool machine_only) {
  json machine = to_json(r);
  if (machine_only) return machine.dump(2) + "\n";
  std::ostringstream os;
  for (size_t i = 0; i < r.factors.size(); ++i) {
    const auto& fr = r.factors[i];
    os << "factor " << i + 1 << ": " << factor_headline(file.factors[i]) << "\n";
    if (file.factors[i].decomposed)
      os << "  decomposed: res_form=" << (file.factors[i].decomposed->res_form ? "yes" : "no")
         << ", single_isotypic="
         << (file.factors[i].decomposed->single_isotypic ? "yes" : "no") << "\n";
    if (fr.violations.empty()) {
      os << "  validation: ok\n";
    } else {
      os << "  validation: " << fr.violations.size() << " violation(s)\n";
      for (const auto& v : fr.violations)
        os << "    - " << v.code << ": " << v.detail << "\n";
    }
    if (fr.verdict) {
      os << "  subtype: " << subtype_name(fr.verdict->subtype) << "\n";
      if (!fr.verdict->delta_prime_max.empty()) {
        os << "    witness delta'_max:";
        for (int c = 0; c < static_cast<int>(fr.verdict->delta_prime_max.size()); ++c) {
          os << " " << file.factors[i].labels[c] << "->{";
          const auto& pair = fr.verdict->delta_prime_max[c];
          for (size_t p = 0; p < pair.size(); ++p)
            os << (p ? "," : "") << pair[p];
          os << "}";
        }
        os << "\n";
      }
      os << "    evidence: " << fr.verdict->evidence << "\n";
    }
    if (!fr.error.empty()) os << "  classification error: " << fr.error << "\n";
  }
  os << (r.all_valid ? "all factors valid\n" : "datum has failures\n");
  os << "--- machine ---\n" << machine.dump(2) << "\n";
  return os.str();
}

std::string render_lift(const LiftReport& r, const DatumFile& file, bool machine_only) {
  json machine = to_json(r);
  if (machine_only) return machine.dump(2) + "\n";
  std::ostringstream os;
  os << "lift mode: " << lift_mode_name(r.mode) << "\n";
  for (size_t i = 0; i < r.factors.size(); ++i) {
    const auto& fr = r.factors[i];
    os << "factor " << i + 1 << ": " << factor_headline(file.factors[i]) << "\n";
    if (!fr.error.empty()) {
      os << "  error: " << fr.error << "\n";
      continue;
    }
    const FactorLift& lift = *fr.lift;
    os << "  subtype: " << subtype_name(lift.subtype.subtype) << "\n";
    os << "  case: " << case_tag_name(lift.case_tag);
    if (lift.K_over_K0 > 0) os << "   [K:K_0] = " << lift.K_over_K0;
    os << "\n";
    os << "  cover: " << cover_label_name(lift.cover.label);
    if (lift.cover.label == CoverLabel::h_maximal)
      os << " (vector endpoint " << lift.cover.vector_endpoint << ")";
    os << "\n";
    if (lift.mu_t_skipped) os << "  recentering layer skipped (weights already +-1/2)\n";
    os << "  torus: " << torus_kind_name(lift.torus.kind) << "\n";
    for (const auto& tf : lift.torus.factors) {
      os << "    " << tf.name << ":";
      for (const auto& [coord, e] : tf.exponents) os << " " << coord << "->" << e.str();
      os << "\n";
    }
    os << "  blocks:\n";
    for (const auto& b : lift.blocks) {
      os << "    " << b.index << "  hw {";
      for (size_t h = 0; h < b.highest_weights.size(); ++h)
        os << (h ? "," : "") << b.highest_weights[h];
      os << "}";
      if (b.compact) os << "  compact";
      else os << "  mu node " << b.mu_node;
      os << "  weights " << multiset_str(b.cochar_weights);
      if (!b.mu_t_exponent.is_zero()) os << "  mu_T " << b.mu_t_exponent.str();
      os << "  torus " << b.torus_exponent.str();
      os << "  totals " << multiset_str(b.totals()) << "\n";
    }
    os << "  certificate: " << lift.certificate.contract << " -- "
       << (lift.certificate.ok ? "OK" : "FAILED") << "\n";
    if (fr.abelianized) {
      os << "  abelianized exponents:";
      for (const auto& row : fr.abelianized->rows)
        os << " (" << row.index << "," << row.conj_index << ")=" << row.exponent.str()
           << "+" << row.conj_exponent.str();
      os << "  weight zero: " << (fr.abelianized->weight_zero ? "yes" : "NO") << "\n";
    }
  }
  os << (r.ok ? "lift constructed\n" : "lift failed\n");
  os << "--- machine ---\n" << machine.dump(2) << "\n";
  return os.str();
}

std::string render_table(const TwoWeightTable& t, bool machine_only) {
  json machine = to_json(t);
  if (machine_only) return machine.dump(2) + "\n";
  std::ostringstream os;
  os << "two-weight fundamental representations (family, rank, mu node -> s)\n";
  for (const auto& row : t.rows) {
    os << "  " << family_letter(row.family) << row.rank << "  node " << row.mu_node
       << "  -> {";
    bool first = true;
    for (int s : row.fundamentals) {
      os << (first ? "" : ",") << s;
      first = false;
    }
    os << "}\n";
  }
  os << "--- machine ---\n" << machine.dump(2) << "\n";
  return os.str();
}

}  // namespace mtlift
