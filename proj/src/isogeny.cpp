#include "mtlift/isogeny.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace mtlift {

int CentreDescriptor::order() const {
  int o = 1;
  for (int d : invariant_factors) o *= d;
  return o;
}

namespace {

using Mat = std::vector<std::vector<long long>>;

Mat identity_matrix(size_t n) {
  Mat m(n, std::vector<long long>(n));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Diagonalize A over Z by unimodular row and column operations, tracking the
// row transform: on exit diag = U * A * V with U unimodular.  The cokernel
// Z^n / A Z^n is then the direct sum of Z/diag[t][t] via x -> U x.
void diagonalize(Mat a, Mat& diag, Mat& u) {
  size_t n = a.size();
  u = identity_matrix(n);
  for (size_t t = 0; t < n; ++t) {
    while (true) {
      size_t pr = n, pc = n;
      long long best = 0;
      for (size_t r = t; r < n; ++r)
        for (size_t c = t; c < n; ++c)
          if (a[r][c] != 0 && (best == 0 || std::llabs(a[r][c]) < best)) {
            best = std::llabs(a[r][c]);
            pr = r;
            pc = c;
          }
      if (pr == n) break;  // remaining block is zero
      if (pr != t) { std::swap(a[t], a[pr]); std::swap(u[t], u[pr]); }
      if (pc != t)
        for (size_t r = 0; r < n; ++r) std::swap(a[r][t], a[r][pc]);
      for (size_t r = t + 1; r < n; ++r)
        if (a[r][t] != 0) {
          long long f = a[r][t] / a[t][t];
          for (size_t c = 0; c < n; ++c) {
            a[r][c] -= f * a[t][c];
            u[r][c] -= f * u[t][c];
          }
        }
      for (size_t c = t + 1; c < n; ++c)
        if (a[t][c] != 0) {
          long long f = a[t][c] / a[t][t];
          for (size_t r = 0; r < n; ++r) a[r][c] -= f * a[r][t];
        }
      bool clean = true;
      for (size_t r = t + 1; r < n && clean; ++r) clean = a[r][t] == 0;
      for (size_t c = t + 1; c < n && clean; ++c) clean = a[t][c] == 0;
      if (clean) break;
    }
    if (a[t][t] < 0)
      for (size_t c = 0; c < n; ++c) { a[t][c] = -a[t][c]; u[t][c] = -u[t][c]; }
    if (a[t][t] == 0)
      throw std::logic_error("diagonalize: singular Cartan matrix");
  }
  diag = std::move(a);
}

long long pos_mod(long long x, long long m) {
  long long r = x % m;
  return r < 0 ? r + m : r;
}

}  // namespace

CentreDescriptor centre(const RootDatum& rd) {
  auto cm = cartan_matrix(rd);
  size_t n = cm.size();
  Mat a(n, std::vector<long long>(n));
  // The root lattice inside P (basis: fundamental weights) is spanned by
  // alpha_j = sum_i <alpha_j, alpha_i^vee> varpi_i, i.e. by the transposed
  // Cartan matrix columns.
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a[i][j] = cm[j][i];
  Mat diag, u;
  diagonalize(a, diag, u);

  // Nontrivial factors, ascending.  For classical types the only multi-factor
  // case is Z/2 x Z/2, so this ordering already is the invariant-factor chain.
  std::vector<size_t> kept;
  for (size_t i = 0; i < n; ++i)
    if (diag[i][i] != 1) kept.push_back(i);
  std::sort(kept.begin(), kept.end(),
            [&](size_t x, size_t y) { return diag[x][x] < diag[y][y]; });

  CentreDescriptor cd;
  cd.family = rd.family;
  cd.rank = rd.rank;
  for (size_t i : kept) cd.invariant_factors.push_back(static_cast<int>(diag[i][i]));
  for (size_t col = 0; col < n; ++col) {
    std::vector<int> cls;
    for (size_t i : kept)
      cls.push_back(static_cast<int>(pos_mod(u[i][col], diag[i][i])));
    cd.fundamental_class.push_back(cls);
  }
  return cd;
}

namespace {

// Enumerate Hom(P/Q, Q/Z) as residue tuples and keep those annihilating the
// classes of the given fundamental weights.
CentralSubgroup kernel_of_classes(const CentreDescriptor& cd,
                                  const std::vector<std::vector<int>>& classes) {
  CentralSubgroup sub;
  sub.moduli = cd.invariant_factors;
  size_t r = sub.moduli.size();
  long long lcm = 1;
  for (int d : sub.moduli) lcm = std::lcm(lcm, static_cast<long long>(d));
  std::vector<int> b(r, 0);
  while (true) {
    bool kills_all = true;
    for (const auto& a : classes) {
      long long acc = 0;  // sum a_i b_i / d_i over the common denominator
      for (size_t i = 0; i < r; ++i)
        acc += static_cast<long long>(a[i]) * b[i] * (lcm / sub.moduli[i]);
      if (pos_mod(acc, lcm) != 0) {
        kills_all = false;
        break;
      }
    }
    if (kills_all) sub.elements.push_back(b);
    if (r == 0) break;
    size_t i = 0;
    while (i < r && ++b[i] == sub.moduli[i]) b[i++] = 0;
    if (i == r) break;
  }
  std::sort(sub.elements.begin(), sub.elements.end());
  return sub;
}

}  // namespace

CentralSubgroup rep_kernel(const RootDatum& rd, const std::set<int>& hw_nodes) {
  if (hw_nodes.empty())
    throw std::invalid_argument("rep_kernel: empty highest-weight set");
  CentreDescriptor cd = centre(rd);
  std::vector<std::vector<int>> classes;
  for (int s : hw_nodes) {
    if (s < 1 || s > rd.rank)
      throw std::out_of_range("rep_kernel: node index out of range");
    classes.push_back(cd.fundamental_class[s - 1]);
  }
  return kernel_of_classes(cd, classes);
}

CentralSubgroup full_centre_subgroup(const RootDatum& rd) {
  return kernel_of_classes(centre(rd), {});
}

std::string cover_label_name(CoverLabel label) {
  switch (label) {
    case CoverLabel::simply_connected: return "simply_connected";
    case CoverLabel::h_maximal: return "h_maximal";
    case CoverLabel::adjoint: return "adjoint";
    case CoverLabel::other: return "other";
  }
  throw std::logic_error("cover_label_name: bad enum");
}

CoverDescriptor simply_connected_cover(const RootDatum& rd) {
  CoverDescriptor c;
  c.family = rd.family;
  c.rank = rd.rank;
  c.kernel.moduli = centre(rd).invariant_factors;
  c.kernel.elements.push_back(std::vector<int>(c.kernel.moduli.size(), 0));
  c.label = CoverLabel::simply_connected;
  return c;
}

CoverDescriptor adjoint_cover(const RootDatum& rd) {
  CoverDescriptor c;
  c.family = rd.family;
  c.rank = rd.rank;
  c.kernel = full_centre_subgroup(rd);
  c.label = c.kernel.trivial() ? CoverLabel::simply_connected : CoverLabel::adjoint;
  return c;
}

CoverDescriptor h_maximal_cover(const RootDatum& rd, int designated_endpoint) {
  if (rd.family != Family::D)
    throw std::invalid_argument("h_maximal_cover: family must be D");
  if (rd.rank < 4)
    throw std::invalid_argument("h_maximal_cover: rank must be >= 4");
  if (!rd.is_endpoint(designated_endpoint))
    throw std::invalid_argument("h_maximal_cover: designated node is not an endpoint");
  CoverDescriptor c;
  c.family = rd.family;
  c.rank = rd.rank;
  c.kernel = rep_kernel(rd, {designated_endpoint});
  c.vector_endpoint = designated_endpoint;
  if (c.kernel.order() != 2)
    throw std::logic_error("h_maximal_cover: kernel order is not 2");
  c.label = CoverLabel::h_maximal;
  return c;
}

}  // namespace mtlift
