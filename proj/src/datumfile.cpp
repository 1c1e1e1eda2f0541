#include "mtlift/datumfile.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mtlift {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw DatumParseError(where + ": " + what);
}

void expect_keys(const json& obj, const std::string& where,
                 const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) fail(where, "unknown field '" + key + "'");
}

const json* get(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& require(const json& obj, const std::string& where, const std::string& key) {
  const json* v = get(obj, key);
  if (!v) fail(where, "missing field '" + key + "'");
  return *v;
}

int require_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<int>();
}

std::string require_string(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

int label_index(const std::map<std::string, int>& index, const std::string& label,
                const std::string& where) {
  auto it = index.find(label);
  if (it == index.end()) fail(where, "unknown embedding label '" + label + "'");
  return it->second;
}

// {"a":"b", ...}: partial map completed with fixed points; must be bijective.
std::vector<int> parse_perm(const json& v, const std::map<std::string, int>& index,
                            int n, const std::string& where) {
  if (!v.is_object()) fail(where, "expected an object mapping labels to labels");
  std::vector<int> perm(n, -1);
  for (const auto& [from, to] : v.items()) {
    int i = label_index(index, from, where);
    int j = label_index(index, require_string(to, where + "." + from), where);
    perm[i] = j;
  }
  for (int i = 0; i < n; ++i)
    if (perm[i] == -1) perm[i] = i;
  std::set<int> hit(perm.begin(), perm.end());
  if (static_cast<int>(hit.size()) != n) fail(where, "mapping is not a permutation");
  return perm;
}

// {"1":2, ...}: partial node map completed with fixed points; bijective.
NodeMap parse_node_map(const json& v, int rank, const std::string& where) {
  if (!v.is_object()) fail(where, "expected an object mapping nodes to nodes");
  NodeMap m;
  m.image.assign(rank, 0);
  for (const auto& [from, to] : v.items()) {
    int src;
    try {
      src = std::stoi(from);
    } catch (const std::exception&) {
      fail(where, "node key '" + from + "' is not an integer");
    }
    if (src < 1 || src > rank) fail(where, "node " + from + " out of range");
    int dst = require_int(to, where + "." + from);
    if (dst < 1 || dst > rank) fail(where, "node image " + std::to_string(dst) + " out of range");
    m.image[src - 1] = dst;
  }
  for (int i = 0; i < rank; ++i)
    if (m.image[i] == 0) m.image[i] = i + 1;
  std::set<int> hit(m.image.begin(), m.image.end());
  if (static_cast<int>(hit.size()) != rank) fail(where, "node mapping is not a permutation");
  return m;
}

MTFactorDatum parse_factor(const json& v, const std::string& where) {
  expect_keys(v, where,
              {"family", "rank", "embeddings", "galois", "compact", "hodge_nodes",
               "conjugation", "decomposed"});
  Family family;
  std::string fam = require_string(require(v, where, "family"), where + ".family");
  if (fam.size() != 1) fail(where + ".family", "expected one of A, B, C, D");
  try {
    family = family_from_letter(fam[0]);
  } catch (const std::exception& e) {
    fail(where + ".family", e.what());
  }
  int rank = require_int(require(v, where, "rank"), where + ".rank");
  RootDatum rd = [&] {
    try {
      return RootDatum(family, rank);
    } catch (const std::exception& e) {
      fail(where + ".rank", e.what());
    }
  }();

  const json& embeddings = require(v, where, "embeddings");
  if (!embeddings.is_array() || embeddings.empty())
    fail(where + ".embeddings", "expected a nonempty array of labels");
  std::vector<std::string> labels;
  std::map<std::string, int> index;
  for (size_t i = 0; i < embeddings.size(); ++i) {
    std::string label =
        require_string(embeddings[i], where + ".embeddings[" + std::to_string(i) + "]");
    if (index.count(label))
      fail(where + ".embeddings", "duplicate label '" + label + "'");
    index[label] = static_cast<int>(i);
    labels.push_back(std::move(label));
  }
  int n = static_cast<int>(labels.size());

  MTFactorDatum f = make_factor(rd, labels);

  const json& galois = require(v, where, "galois");
  if (!galois.is_array()) fail(where + ".galois", "expected an array");
  for (size_t gi = 0; gi < galois.size(); ++gi) {
    std::string gw = where + ".galois[" + std::to_string(gi) + "]";
    expect_keys(galois[gi], gw, {"perm", "nodes"});
    GaloisGenerator g;
    g.perm = parse_perm(require(galois[gi], gw, "perm"), index, n, gw + ".perm");
    g.node_action.assign(n, NodeMap::identity(rank));
    if (const json* nodes = get(galois[gi], "nodes")) {
      if (!nodes->is_object()) fail(gw + ".nodes", "expected an object");
      for (const auto& [label, nmap] : nodes->items()) {
        int i = label_index(index, label, gw + ".nodes");
        g.node_action[i] = parse_node_map(nmap, rank, gw + ".nodes." + label);
      }
    }
    f.generators.push_back(std::move(g));
  }

  const json& compact = require(v, where, "compact");
  if (!compact.is_array()) fail(where + ".compact", "expected an array of labels");
  for (size_t i = 0; i < compact.size(); ++i) {
    std::string label =
        require_string(compact[i], where + ".compact[" + std::to_string(i) + "]");
    f.compact[label_index(index, label, where + ".compact")] = true;
  }

  const json& hodge = require(v, where, "hodge_nodes");
  if (!hodge.is_object()) fail(where + ".hodge_nodes", "expected an object");
  for (const auto& [label, node] : hodge.items()) {
    int i = label_index(index, label, where + ".hodge_nodes");
    int s = require_int(node, where + ".hodge_nodes." + label);
    if (s < 1 || s > rank)
      fail(where + ".hodge_nodes." + label, "node out of range");
    f.hodge_node[i] = s;
  }

  if (const json* conj = get(v, "conjugation")) {
    std::string cw = where + ".conjugation";
    expect_keys(*conj, cw, {"nodes"});
    if (const json* nodes = get(*conj, "nodes")) {
      if (!nodes->is_object()) fail(cw + ".nodes", "expected an object");
      for (const auto& [label, nmap] : nodes->items()) {
        int i = label_index(index, label, cw + ".nodes");
        f.conjugation_action[i] = parse_node_map(nmap, rank, cw + ".nodes." + label);
      }
    }
  }

  if (const json* dec = get(v, "decomposed")) {
    std::string dw = where + ".decomposed";
    expect_keys(*dec, dw, {"res_form", "single_isotypic"});
    DecomposedFlags flags;
    if (const json* b = get(*dec, "res_form")) {
      if (!b->is_boolean()) fail(dw + ".res_form", "expected a boolean");
      flags.res_form = b->get<bool>();
    }
    if (const json* b = get(*dec, "single_isotypic")) {
      if (!b->is_boolean()) fail(dw + ".single_isotypic", "expected a boolean");
      flags.single_isotypic = b->get<bool>();
    }
    f.decomposed = flags;
  }
  return f;
}

}  // namespace

DatumFile parse_datum(std::istream& in, const std::string& source_name) {
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DatumParseError(source_name + ": " + e.what());
  }
  expect_keys(root, source_name, {"version", "factors"});
  DatumFile file;
  file.version = require_int(require(root, source_name, "version"), source_name + ".version");
  if (file.version != 1)
    fail(source_name + ".version", "unsupported version " + std::to_string(file.version));
  const json& factors = require(root, source_name, "factors");
  if (!factors.is_array()) fail(source_name + ".factors", "expected an array");
  for (size_t i = 0; i < factors.size(); ++i)
    file.factors.push_back(
        parse_factor(factors[i], source_name + ".factors[" + std::to_string(i) + "]"));
  return file;
}

DatumFile parse_datum_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DatumParseError(path + ": cannot open file");
  return parse_datum(in, path);
}

}  // namespace mtlift
