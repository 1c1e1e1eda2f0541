#include "mtlift/liftbuilder.hpp"

#include <algorithm>
#include <sstream>

namespace mtlift {

std::string case_tag_name(CaseTag t) {
  switch (t) {
    case CaseTag::general_ABCD: return "general_ABCD";
    case CaseTag::k_even_K_eq_K0: return "k_even_K_eq_K0";
    case CaseTag::k_even_K_quadratic: return "k_even_K_quadratic";
    case CaseTag::k_odd: return "k_odd";
  }
  throw std::logic_error("case_tag_name: bad enum");
}

CaseTag case_tag_from_name(const std::string& name) {
  for (CaseTag t : {CaseTag::general_ABCD, CaseTag::k_even_K_eq_K0,
                    CaseTag::k_even_K_quadratic, CaseTag::k_odd})
    if (case_tag_name(t) == name) return t;
  throw std::invalid_argument("unknown case tag '" + name + "'");
}

std::string torus_kind_name(TorusKind k) {
  return k == TorusKind::norm_one_CM ? "norm_one_CM" : "full_CM";
}

std::map<Rat, int> RepBlock::totals() const {
  std::map<Rat, int> t;
  for (const auto& [w, m] : cochar_weights) t[w + mu_t_exponent + torus_exponent] += m;
  return t;
}

namespace {

void require_valid(const MTFactorDatum& f, const char* who) {
  auto violations = validate(f);
  if (!violations.empty())
    throw std::invalid_argument(std::string(who) + ": invalid datum (" +
                                violations.front().code + ": " +
                                violations.front().detail + ")");
}

std::set<Rat> value_set(const std::map<Rat, int>& values) {
  std::set<Rat> s;
  for (const auto& [v, m] : values) s.insert(v);
  return s;
}

bool in_coset(const std::map<Rat, int>& values, const Rat& offset) {
  for (const auto& [v, m] : values)
    if (!(v - offset).is_integer()) return false;
  return true;
}

std::string block_label(const std::string& component, int hw_node) {
  return component + ".w" + std::to_string(hw_node);
}

// Lexicographically least Galois-stable choice of a per-component endpoint
// set of the given size, disjoint from the Hodge nodes; nullopt when the
// search space is exhausted.
std::optional<std::vector<std::vector<int>>> stable_endpoint_sets(
    const MTFactorDatum& f, size_t set_size) {
  int n = f.size();
  std::vector<std::vector<std::vector<int>>> cands(n);
  auto endpoints = f.rd.endpoints();
  for (int i = 0; i < n; ++i) {
    int delta = f.hodge_node.count(i) ? f.hodge_node.at(i) : 0;
    std::vector<int> avail;
    for (int e : endpoints)
      if (e != delta) avail.push_back(e);
    if (set_size > avail.size()) return std::nullopt;
    std::vector<bool> pick(avail.size(), false);
    std::fill(pick.begin(), pick.begin() + set_size, true);
    do {
      std::vector<int> subset;
      for (size_t j = 0; j < avail.size(); ++j)
        if (pick[j]) subset.push_back(avail[j]);
      cands[i].push_back(subset);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(cands[i].begin(), cands[i].end());
  }
  std::vector<size_t> at(n, 0);
  while (true) {
    std::vector<std::vector<int>> choice(n);
    for (int i = 0; i < n; ++i) choice[i] = cands[i][at[i]];
    bool stable = true;
    for (const auto& g : f.generators) {
      for (int i = 0; i < n && stable; ++i) {
        std::vector<int> mapped;
        for (int node : choice[i]) mapped.push_back(g.node_action[i].apply(node));
        std::sort(mapped.begin(), mapped.end());
        stable = mapped == choice[g.perm[i]];
      }
      if (!stable) break;
    }
    if (stable) return choice;
    int i = n - 1;
    while (i >= 0 && ++at[i] == cands[i].size()) at[i--] = 0;
    if (i < 0) return std::nullopt;
  }
}

// Highest weights of the lift representation on one component.
std::vector<int> block_highest_weights(const MTFactorDatum& f,
                                       const SubtypeVerdict& verdict,
                                       const std::vector<std::vector<int>>& d4_witness,
                                       const std::vector<int>& dh_vector_endpoint,
                                       int component) {
  int k = f.rd.rank;
  switch (f.rd.family) {
    case Family::A:
      return k == 1 ? std::vector<int>{1} : std::vector<int>{1, k};
    case Family::B:
      return {k};
    case Family::C:
      return {1};
    case Family::D:
      break;
  }
  if (k < 4)
    throw UnsupportedType("type D factors below rank 4 have no lift construction");
  if (verdict.subtype == Subtype::D_R) {
    if (k >= 5) return {k - 1, k};
    return d4_witness.at(component);
  }
  return {dh_vector_endpoint.at(component)};
}

}  // namespace

FactorLift general_weak_lift(const MTFactorDatum& f) {
  require_valid(f, "general_weak_lift");
  if (f.rd.family == Family::D && f.rd.rank < 4)
    throw UnsupportedType("type D factors below rank 4 have no lift construction");

  FactorLift lift;
  lift.datum = f;
  lift.subtype = classify(f);
  lift.case_tag = CaseTag::general_ABCD;
  lift.centre_shrunk = true;

  // For D_4 the representation endpoints come from the classification
  // witness (D_R) or from a stable designated endpoint per component (D_H).
  std::vector<std::vector<int>> d4_witness = lift.subtype.delta_prime_max;
  std::vector<int> dh_vector_endpoint;
  if (lift.subtype.subtype == Subtype::D_H) {
    if (f.rd.rank >= 5) {
      dh_vector_endpoint.assign(f.size(), 1);
    } else if (auto singletons = stable_endpoint_sets(f, 1)) {
      for (const auto& s : *singletons) dh_vector_endpoint.push_back(s.front());
    } else {
      // No stable designated endpoint exists (possible for triality actions);
      // fall back to the least endpoint away from the Hodge node.
      for (int i = 0; i < f.size(); ++i) {
        int delta = f.hodge_node.count(i) ? f.hodge_node.at(i) : 0;
        for (int e : f.rd.endpoints())
          if (e != delta) {
            dh_vector_endpoint.push_back(e);
            break;
          }
      }
    }
  }

  bool all_centered = true;
  for (int i = 0; i < f.size(); ++i) {
    auto hws = block_highest_weights(f, lift.subtype, d4_witness, dh_vector_endpoint, i);
    if (f.is_compact(i)) {
      for (int s : hws) {
        int dim = irrep_weights(f.rd, s).dimension();
        RepBlock z_block{block_label(f.labels[i], s) + ".z", true, {s}, 0,
                         {{Rat(0), dim}}, Rat(0), Rat(1)};
        RepBlock unit_block{block_label(f.labels[i], s) + ".1", true, {s}, 0,
                            {{Rat(0), dim}}, Rat(0), Rat(0)};
        lift.blocks.push_back(std::move(z_block));
        lift.blocks.push_back(std::move(unit_block));
      }
      continue;
    }
    int node = f.hodge_node.at(i);
    QuasiCocharacter mu = fundamental_coweight(f.rd, node);
    for (int s : hws) {
      RepBlock b;
      b.index = block_label(f.labels[i], s);
      b.compact = false;
      b.highest_weights = {s};
      b.mu_node = node;
      b.cochar_weights = pairing_values(irrep_weights(f.rd, s), mu);
      auto distinct = value_set(b.cochar_weights);
      if (distinct.size() != 2 || *distinct.rbegin() - *distinct.begin() != Rat(1))
        throw TwoWeightViolation(
            "block " + b.index + " pairs to " + std::to_string(distinct.size()) +
            " distinct values; the cocharacter must act with weights r and r+1");
      Rat r = *distinct.begin();
      b.mu_t_exponent = Rat(-1, 2) - r;
      if (!b.mu_t_exponent.is_zero()) all_centered = false;
      b.torus_exponent = Rat(1, 2);
      lift.blocks.push_back(std::move(b));
    }
  }
  lift.mu_t_skipped = all_centered;

  // The CM layer: L^x acting through two coordinates per embedding,
  // (sqrt z, sqrt z) at non-compact places and (z, 1) at compact ones.
  TorusFactor first{"L(1)", {}}, second{"L(2)", {}};
  for (int i = 0; i < f.size(); ++i) {
    first.exponents[f.labels[i]] = f.is_compact(i) ? Rat(1) : Rat(1, 2);
    second.exponents[f.labels[i]] = f.is_compact(i) ? Rat(0) : Rat(1, 2);
  }
  lift.torus = TorusDescriptor{TorusKind::full_CM, {first, second}};

  if (lift.subtype.subtype == Subtype::D_H)
    lift.cover = h_maximal_cover(f.rd, dh_vector_endpoint.front());
  else
    lift.cover = simply_connected_cover(f.rd);

  lift.certificate.contract = "totals in {0,1}";
  lift.certificate.ok = true;
  for (const auto& b : lift.blocks) {
    auto totals = value_set(b.totals());
    bool ok;
    if (!b.compact) {
      ok = totals == std::set<Rat>{Rat(0), Rat(1)};
      auto corrected = std::set<Rat>{};
      for (const auto& [w, m] : b.cochar_weights) corrected.insert(w + b.mu_t_exponent);
      bool centered = corrected == std::set<Rat>{Rat(-1, 2), Rat(1, 2)};
      lift.certificate.rows.push_back({b.index, "corrected weights are +-1/2", centered});
      lift.certificate.ok &= centered;
      bool matches =
          b.cochar_weights == pairing_values(irrep_weights(f.rd, b.highest_weights.front()),
                                             fundamental_coweight(f.rd, b.mu_node));
      lift.certificate.rows.push_back({b.index, "nu matches the Hodge coweight", matches});
      lift.certificate.ok &= matches;
    } else {
      ok = totals.size() == 1 && (*totals.begin() == Rat(0) || *totals.begin() == Rat(1));
    }
    lift.certificate.rows.push_back({b.index, "totals in {0,1}", ok});
    lift.certificate.ok &= ok;
  }
  return lift;
}

FactorLift dkh_lift(const MTFactorDatum& f) {
  require_valid(f, "dkh_lift");
  if (f.rd.family != Family::D || f.rd.rank < 4)
    throw UnsupportedType("dkh_lift: requires family D with rank >= 4");
  FactorLift lift;
  lift.datum = f;
  lift.subtype = classify_D(f);
  if (lift.subtype.subtype != Subtype::D_H)
    throw std::invalid_argument("dkh_lift: factor is not of type D_H");
  int k = f.rd.rank;
  for (const auto& [i, node] : f.hodge_node)
    if (node != k)
      throw NormalizationRequired(
          "Hodge node on component " + f.labels.at(i) +
          " is not at node k; apply normalize_hodge_nodes first");

  // Field degree [K:K_0]: forced quadratic for odd k; for even k read off
  // whether any Galois node action moves the fork.
  if (k % 2 == 1) {
    lift.K_over_K0 = 2;
  } else {
    lift.K_over_K0 = 1;
    for (const auto& g : f.generators)
      for (const auto& m : g.node_action)
        if (m.apply(k) != k || m.apply(k - 1) != k - 1) lift.K_over_K0 = 2;
  }
  lift.case_tag = k % 2 == 1 ? CaseTag::k_odd
                  : lift.K_over_K0 == 1 ? CaseTag::k_even_K_eq_K0
                                        : CaseTag::k_even_K_quadratic;

  QuasiCocharacter nu = fundamental_coweight(f.rd, k);
  std::map<Rat, int> lower = pairing_values(irrep_weights(f.rd, k - 1), nu);
  std::map<Rat, int> upper = pairing_values(irrep_weights(f.rd, k), nu);
  int half_spin_dim = irrep_weights(f.rd, k).dimension();
  std::map<Rat, int> zero_weights{{Rat(0), half_spin_dim}};

  auto classify_coset = [&](const std::map<Rat, int>& values,
                            std::initializer_list<Rat> offsets,
                            const std::string& where) -> Rat {
    for (const Rat& off : offsets)
      if (in_coset(values, off)) return off;
    throw IntegralityFailure("weights on " + where +
                             " fall in no expected residue class modulo Z");
  };

  TorusFactor tl_first{"T_L(1)", {}}, tl_second{"T_L(2)", {}}, tl{"T_L", {}};

  for (int i = 0; i < f.size(); ++i) {
    const std::string& comp = f.labels[i];
    bool compact = f.is_compact(i);
    std::string lo_label = block_label(comp, k - 1);
    std::string hi_label = block_label(comp, k);
    RepBlock lo{lo_label, compact, {k - 1}, compact ? 0 : k,
                compact ? zero_weights : lower, Rat(0), Rat(0)};
    RepBlock hi{hi_label, compact, {k}, compact ? 0 : k,
                compact ? zero_weights : upper, Rat(0), Rat(0)};

    switch (lift.case_tag) {
      case CaseTag::k_even_K_eq_K0: {
        // nu_L is (sqrt z, 1) for k = 0 mod 4 and (1, sqrt z) for k = 2 mod 4;
        // the first T_L factor acts on the varpi_{k-1} summand.
        Rat lo_exp(0), hi_exp(0);
        if (!compact) {
          if (k % 4 == 0) {
            classify_coset(lower, {Rat(1, 2)}, lo_label);
            classify_coset(upper, {Rat(0)}, hi_label);
            lo_exp = Rat(1, 2);
          } else {
            classify_coset(lower, {Rat(0)}, lo_label);
            classify_coset(upper, {Rat(1, 2)}, hi_label);
            hi_exp = Rat(1, 2);
          }
        }
        lo.torus_exponent = lo_exp;
        hi.torus_exponent = hi_exp;
        tl_first.exponents[comp] = lo_exp;
        tl_second.exponents[comp] = hi_exp;
        break;
      }
      case CaseTag::k_even_K_quadratic: {
        // One embedding of K over each place carries the integral-weight
        // summand, the other the half-integral one.
        Rat lo_exp(0), hi_exp(0);
        if (!compact) {
          Rat lo_coset = classify_coset(lower, {Rat(0), Rat(1, 2)}, lo_label);
          Rat hi_coset = classify_coset(upper, {Rat(0), Rat(1, 2)}, hi_label);
          if (lo_coset == hi_coset)
            throw IntegralityFailure("the two half-spin summands on " + comp +
                                     " fall in the same residue class");
          lo_exp = lo_coset;
          hi_exp = hi_coset;
        }
        lo.torus_exponent = lo_exp;
        hi.torus_exponent = hi_exp;
        tl.exponents[lo_label] = lo_exp;
        tl.exponents[hi_label] = hi_exp;
        break;
      }
      case CaseTag::k_odd: {
        // Embeddings with weights in 1/4 + Z get z^{-1/4}; their conjugates
        // (weights in -1/4 + Z) get the inverse coordinate, hence +1/4.
        // Compact places contribute exponent 0 on the chosen section.
        if (!compact) {
          Rat lo_coset = classify_coset(lower, {Rat(1, 4), Rat(-1, 4)}, lo_label);
          Rat hi_coset = classify_coset(upper, {Rat(1, 4), Rat(-1, 4)}, hi_label);
          if (lo_coset == hi_coset)
            throw IntegralityFailure("the two half-spin summands on " + comp +
                                     " fall in the same residue class");
          lo.torus_exponent = -lo_coset;
          hi.torus_exponent = -hi_coset;
          // Section coordinate: the embedding with weights in 1/4 + Z.
          tl.exponents[lo_coset == Rat(1, 4) ? lo_label : hi_label] = Rat(-1, 4);
        } else {
          // Lexicographically least section over compact places: the sheet
          // carrying the lower highest weight.
          tl.exponents[lo_label] = Rat(0);
        }
        break;
      }
      case CaseTag::general_ABCD:
        throw std::logic_error("dkh_lift: impossible case tag");
    }
    lift.blocks.push_back(std::move(lo));
    lift.blocks.push_back(std::move(hi));
  }

  if (lift.case_tag == CaseTag::k_even_K_eq_K0)
    lift.torus = TorusDescriptor{TorusKind::norm_one_CM, {tl_first, tl_second}};
  else
    lift.torus = TorusDescriptor{TorusKind::norm_one_CM, {tl}};

  lift.cover = simply_connected_cover(f.rd);

  lift.certificate.contract = "totals integral";
  lift.certificate.ok = true;
  for (const auto& b : lift.blocks) {
    bool integral = true;
    for (const auto& [w, m] : b.totals()) integral &= w.is_integer();
    lift.certificate.rows.push_back({b.index, "totals integral", integral});
    lift.certificate.ok &= integral;
    if (!b.compact) {
      // pi^ad compatibility: the cocharacter layer of the block is exactly
      // the pairing against the coweight dual to the Hodge node.
      bool matches = b.cochar_weights ==
                     pairing_values(irrep_weights(f.rd, b.highest_weights.front()), nu);
      lift.certificate.rows.push_back({b.index, "nu matches the Hodge coweight", matches});
      lift.certificate.ok &= matches;
    }
  }
  if (!lift.certificate.ok)
    throw IntegralityFailure("dkh_lift: certificate failed; this is a construction bug");
  return lift;
}

AbelianizedTable abelianized_hodge(const FactorLift& lift) {
  if (lift.case_tag == CaseTag::general_ABCD)
    throw std::invalid_argument("abelianized_hodge: descriptor is not a dkh_lift output");
  AbelianizedTable table;
  if (lift.case_tag == CaseTag::k_odd) {
    // Coordinates are a section of the K-embedding pairs over each place;
    // the conjugate embedding carries the opposite exponent.
    const TorusFactor& tl = lift.torus.factors.front();
    for (const auto& b : lift.blocks) {
      auto it = tl.exponents.find(b.index);
      if (it == tl.exponents.end()) continue;  // not a section coordinate
      // find the paired sheet: same component, other highest weight
      for (const auto& other : lift.blocks) {
        if (&other == &b || other.index == b.index) continue;
        if (other.index.substr(0, other.index.find_last_of('.')) ==
            b.index.substr(0, b.index.find_last_of('.'))) {
          AbelianizedRow row{b.index, other.index, it->second, -it->second};
          table.weight_zero &= (row.exponent + row.conj_exponent).is_zero();
          table.rows.push_back(std::move(row));
        }
      }
    }
  } else {
    // Conjugation pairs the two L-embeddings over each (real) coordinate of
    // the norm-one torus; the pair carries exponents (x, -x).
    for (const auto& tf : lift.torus.factors)
      for (const auto& [coord, exp] : tf.exponents) {
        AbelianizedRow row{tf.name + ":" + coord, tf.name + ":" + coord + "'", exp, -exp};
        table.weight_zero &= (row.exponent + row.conj_exponent).is_zero();
        table.rows.push_back(std::move(row));
      }
  }
  return table;
}

LiftDescriptor assemble(const std::vector<MTFactorDatum>& factors) {
  LiftDescriptor product;
  for (const auto& f : factors) {
    SubtypeVerdict verdict = classify(f);
    FactorLift lift = verdict.subtype == Subtype::D_H
                          ? dkh_lift(normalize_hodge_nodes(f))
                          : general_weak_lift(f);
    product.derived_simply_connected &=
        lift.cover.label == CoverLabel::simply_connected;
    product.factors.push_back(std::move(lift));
  }
  return product;
}

}  // namespace mtlift
