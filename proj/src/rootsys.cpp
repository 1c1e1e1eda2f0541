#include "mtlift/rootsys.hpp"

#include <algorithm>
#include <deque>

namespace mtlift {

char family_letter(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::D: return 'D';
  }
  throw std::logic_error("family_letter: bad enum");
}

Family family_from_letter(char c) {
  switch (c) {
    case 'A': return Family::A;
    case 'B': return Family::B;
    case 'C': return Family::C;
    case 'D': return Family::D;
  }
  throw std::invalid_argument(std::string("unknown family '") + c + "'");
}

RootDatum::RootDatum(Family f, int k) : family(f), rank(k) {
  int min_rank = f == Family::A ? 1 : (f == Family::D ? 3 : 2);
  if (k < min_rank)
    throw std::invalid_argument(std::string("rank ") + std::to_string(k) +
                                " invalid for type " + family_letter(f));
}

std::vector<int> RootDatum::endpoints() const {
  if (rank == 1) return {1};
  if (family == Family::D) {
    // Node 1 is interior for D_3 (the diagram is 2 -- 1 -- 3).
    if (rank == 3) return {2, 3};
    return {1, rank - 1, rank};
  }
  return {1, rank};
}

bool RootDatum::is_endpoint(int node) const {
  auto e = endpoints();
  return std::find(e.begin(), e.end(), node) != e.end();
}

Weight Weight::operator+(const Weight& o) const {
  Weight r = *this;
  for (size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
  return r;
}

Weight Weight::operator-(const Weight& o) const {
  Weight r = *this;
  for (size_t i = 0; i < coords.size(); ++i) r.coords[i] -= o.coords[i];
  return r;
}

Weight Weight::operator-() const {
  Weight r = *this;
  for (auto& c : r.coords) c = -c;
  return r;
}

Rat Weight::dot(const Weight& o) const {
  if (coords.size() != o.coords.size())
    throw std::invalid_argument("Weight::dot: dimension mismatch");
  Rat acc;
  for (size_t i = 0; i < coords.size(); ++i) acc += coords[i] * o.coords[i];
  return acc;
}

std::string Weight::str() const {
  std::string s = "(";
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) s += ",";
    s += coords[i].str();
  }
  return s + ")";
}

Rat QuasiCocharacter::pair(const Weight& w) const {
  if (coweight.size() != w.coords.size())
    throw std::invalid_argument("QuasiCocharacter::pair: dimension mismatch");
  Rat acc;
  for (size_t i = 0; i < coweight.size(); ++i) acc += coweight[i] * w.coords[i];
  return acc / Rat(denominator);
}

void WeightMultiset::add(const Weight& w, int multiplicity) {
  if (multiplicity <= 0)
    throw std::invalid_argument("WeightMultiset::add: multiplicity must be positive");
  entries_[w] += multiplicity;
}

int WeightMultiset::dimension() const {
  int d = 0;
  for (const auto& [w, m] : entries_) d += m;
  return d;
}

namespace {

Weight unit(int dim, int i, Rat value = Rat(1)) {
  Weight w{std::vector<Rat>(static_cast<size_t>(dim))};
  w.coords[i] = value;
  return w;
}

}  // namespace

std::vector<Weight> simple_roots(const RootDatum& rd) {
  int n = rd.ambient_dim();
  std::vector<Weight> roots;
  for (int i = 1; i < std::min(rd.rank + 1, n); ++i)
    roots.push_back(unit(n, i - 1) - unit(n, i));  // e_i - e_{i+1}
  switch (rd.family) {
    case Family::A:
      break;
    case Family::B:
      roots.push_back(unit(n, n - 1));
      break;
    case Family::C:
      roots.push_back(unit(n, n - 1, Rat(2)));
      break;
    case Family::D:
      roots.push_back(unit(n, n - 2) + unit(n, n - 1));
      break;
  }
  return roots;
}

std::vector<Weight> simple_coroots(const RootDatum& rd) {
  std::vector<Weight> coroots;
  for (const Weight& a : simple_roots(rd)) {
    Rat norm = a.dot(a);
    Weight c = a;
    for (auto& x : c.coords) x = x * Rat(2) / norm;
    coroots.push_back(c);
  }
  return coroots;
}

std::vector<std::vector<int>> cartan_matrix(const RootDatum& rd) {
  auto roots = simple_roots(rd);
  auto coroots = simple_coroots(rd);
  std::vector<std::vector<int>> c(rd.rank, std::vector<int>(rd.rank));
  for (int i = 0; i < rd.rank; ++i)
    for (int j = 0; j < rd.rank; ++j) {
      Rat v = roots[i].dot(coroots[j]);
      if (!v.is_integer()) throw std::logic_error("cartan_matrix: non-integer entry");
      c[i][j] = static_cast<int>(v.num());
    }
  return c;
}

namespace {

// Gaussian elimination over Rat: solve M x = b exactly.  The systems here are
// square and nonsingular by construction.
std::vector<Rat> solve(std::vector<std::vector<Rat>> m, std::vector<Rat> b) {
  size_t n = m.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) throw std::logic_error("solve: singular system");
    std::swap(m[piv], m[col]);
    std::swap(b[piv], b[col]);
    for (size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col].is_zero()) continue;
      Rat f = m[row][col] / m[col][col];
      for (size_t j = col; j < n; ++j) m[row][j] -= f * m[col][j];
      b[row] -= f * b[col];
    }
  }
  std::vector<Rat> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / m[i][i];
  return x;
}

// Rows = the vectors that x must pair against; for type A an extra sum-zero
// row pins down the ambient degree of freedom.
std::vector<Rat> solve_pairings(const RootDatum& rd,
                                const std::vector<Weight>& against, int index) {
  int n = rd.ambient_dim();
  std::vector<std::vector<Rat>> m;
  std::vector<Rat> b;
  for (int j = 0; j < rd.rank; ++j) {
    m.push_back(against[j].coords);
    b.push_back(Rat(j + 1 == index ? 1 : 0));
  }
  if (rd.family == Family::A) {
    m.push_back(std::vector<Rat>(n, Rat(1)));
    b.push_back(Rat(0));
  }
  return solve(std::move(m), std::move(b));
}

}  // namespace

Weight fundamental_weight(const RootDatum& rd, int s) {
  if (s < 1 || s > rd.rank)
    throw std::out_of_range("fundamental_weight: node index out of range");
  return Weight(solve_pairings(rd, simple_coroots(rd), s));
}

QuasiCocharacter fundamental_coweight(const RootDatum& rd, int i) {
  if (i < 1 || i > rd.rank)
    throw std::out_of_range("fundamental_coweight: node index out of range");
  return QuasiCocharacter{solve_pairings(rd, simple_roots(rd), i), 1};
}

std::set<Weight> weyl_orbit(const RootDatum& rd, const Weight& w) {
  auto roots = simple_roots(rd);
  auto coroots = simple_coroots(rd);
  std::set<Weight> orbit{w};
  std::deque<Weight> todo{w};
  while (!todo.empty()) {
    Weight cur = todo.front();
    todo.pop_front();
    for (int i = 0; i < rd.rank; ++i) {
      Rat pairing = cur.dot(coroots[i]);
      if (pairing.is_zero()) continue;
      Weight refl = cur;
      for (size_t j = 0; j < refl.coords.size(); ++j)
        refl.coords[j] -= pairing * roots[i].coords[j];
      if (orbit.insert(refl).second) todo.push_back(refl);
    }
  }
  return orbit;
}

std::vector<int> supported_irreps(const RootDatum& rd) {
  switch (rd.family) {
    case Family::A: {
      std::vector<int> all(rd.rank);
      for (int s = 1; s <= rd.rank; ++s) all[s - 1] = s;
      return all;
    }
    case Family::B:
      return {1, rd.rank};
    case Family::C:
      return {1};
    case Family::D:
      return {1, rd.rank - 1, rd.rank};
  }
  throw std::logic_error("supported_irreps: bad enum");
}

WeightMultiset irrep_weights(const RootDatum& rd, int s) {
  auto supported = supported_irreps(rd);
  if (std::find(supported.begin(), supported.end(), s) == supported.end())
    throw UnsupportedRepresentation(
        std::string("representation ") + family_letter(rd.family) +
        std::to_string(rd.rank) + " with highest weight at node " +
        std::to_string(s) + " is outside the supported set");
  WeightMultiset ws;
  for (const Weight& w : weyl_orbit(rd, fundamental_weight(rd, s))) ws.add(w);
  // B_k vector representation is quasi-minuscule: the zero weight appears once.
  if (rd.family == Family::B && s == 1)
    ws.add(Weight(std::vector<Rat>(rd.ambient_dim())));
  return ws;
}

std::map<Rat, int> pairing_values(const WeightMultiset& ws,
                                  const QuasiCocharacter& c) {
  std::map<Rat, int> values;
  for (const auto& [w, m] : ws.entries()) values[c.pair(w)] += m;
  return values;
}

bool is_self_dual(const WeightMultiset& ws) {
  for (const auto& [w, m] : ws.entries()) {
    auto it = ws.entries().find(-w);
    if (it == ws.entries().end() || it->second != m) return false;
  }
  return true;
}

}  // namespace mtlift
