#include "riesz/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "riesz/sphere.hpp"

namespace riesz {

int num_edges(int n) { return n * (n - 1) / 2; }

int edge_index(int n, int a, int b) {
  if (a == b || a < 0 || b < 0 || a >= n || b >= n) throw std::out_of_range("edge index");
  if (a > b) std::swap(a, b);
  // Edges before row a: (n-1) + (n-2) + ... + (n-a).
  return a * (2 * n - a - 1) / 2 + (b - a - 1);
}

std::vector<std::pair<int, int>> edge_list(int n) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) out.emplace_back(a, b);
  return out;
}

namespace {

// x_a · x_b in 3n variables (a == b gives the squared norm).
RealPoly dot_poly(int n, int a, int b, long prec) {
  RealPoly r(3 * n, prec);
  for (int k = 0; k < 3; ++k) {
    Monomial m(3 * n);
    m.set(3 * a + k, m[3 * a + k] + 1);
    m.set(3 * b + k, m[3 * b + k] + 1);
    r += RealPoly::term(m, Scalar(1, prec));
  }
  return r;
}

}  // namespace

RealPoly expand_edge_monomial(int n, const std::vector<int>& exponents) {
  if (n > 4) throw std::invalid_argument("at most 4 points");
  if (static_cast<int>(exponents.size()) != num_edges(n)) throw std::invalid_argument("exponent length mismatch");
  const long prec = kDefaultPrecision;
  RealPoly r = RealPoly::constant(3 * n, Scalar(1, prec));
  auto edges = edge_list(n);
  for (size_t e = 0; e < edges.size(); ++e) {
    if (exponents[e] == 0) continue;
    r = r * dot_poly(n, edges[e].first, edges[e].second, prec).pow(exponents[e]);
  }
  return r;
}

Perm vertex_to_edge_perm(const Perm& sigma) {
  const int n = static_cast<int>(sigma.size());
  Perm out(num_edges(n));
  auto edges = edge_list(n);
  for (size_t e = 0; e < edges.size(); ++e) out[e] = edge_index(n, sigma[edges[e].first], sigma[edges[e].second]);
  return out;
}

PermGroup edge_action_image(int n) {
  if (n < 2 || n > 4) throw std::invalid_argument("edge action needs 2 <= n <= 4");
  Perm sigma = perm_identity(n);
  std::set<Perm> elems;  // φ_2 is not injective
  do {
    elems.insert(vertex_to_edge_perm(sigma));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return PermGroup::from_elements(num_edges(n), {elems.begin(), elems.end()});
}

RealPoly symmetrize_q(const RealPoly& q, int n) {
  if (q.nvars() != num_edges(n)) throw std::invalid_argument("variable count is not C(n,2)");
  if (n < 2) return q;
  Perm sigma = perm_identity(n);
  RealPoly sum(q.nvars(), q.precision());
  long count = 0;
  do {
    sum += act(vertex_to_edge_perm(sigma), q);
    ++count;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return sum * Scalar::rational(1, count, q.precision());
}

void SparseSymmetric::add(int i, int j, const Scalar& v) {
  auto bump = [&](int r, int c) {
    auto it = rows_[r].find(c);
    if (it == rows_[r].end()) {
      rows_[r].emplace(c, v);
    } else {
      it->second += v;
    }
  };
  bump(i, j);
  if (i != j) bump(j, i);
}

std::vector<Scalar> SparseSymmetric::multiply(const std::vector<Scalar>& x) const {
  std::vector<Scalar> y(n_, Scalar(prec_));
  for (int i = 0; i < n_; ++i)
    for (const auto& [j, v] : rows_[i]) y[i].add_product(v, x[j]);
  return y;
}

CholeskyFactor::CholeskyFactor(const SparseSymmetric& m) : prec_(m.precision()) {
  const int n = m.size();
  std::vector<std::map<int, Scalar>> w = m.rows_;
  std::vector<bool> active(n, true);
  for (int step = 0; step < n; ++step) {
    int p = -1;
    for (int i = 0; i < n; ++i) {
      if (!active[i]) continue;
      auto it = w[i].find(i);
      if (it == w[i].end()) continue;
      if (p < 0 || w[p].at(p) < it->second) p = i;
    }
    if (p < 0 || w[p].at(p).sign() <= 0) throw std::runtime_error("nonpositive pivot in Cholesky factorization");
    Scalar piv = sqrt(w[p].at(p));
    std::vector<std::pair<int, Scalar>> col;
    col.emplace_back(p, piv);
    for (const auto& [j, v] : w[p]) {
      if (j == p || !active[j]) continue;
      col.emplace_back(j, v / piv);
    }
    // Schur complement update on the active rows touched by this column.
    for (size_t a = 1; a < col.size(); ++a) {
      int i = col[a].first;
      for (size_t b = 1; b < col.size(); ++b) {
        int j = col[b].first;
        auto it = w[i].find(j);
        if (it == w[i].end()) it = w[i].emplace(j, Scalar(prec_)).first;
        it->second.sub_product(col[a].second, col[b].second);
      }
      w[i].erase(p);
    }
    active[p] = false;
    w[p].clear();
    order_.push_back(p);
    cols_.push_back(std::move(col));
  }
}

std::vector<Scalar> CholeskyFactor::solve(const std::vector<Scalar>& rhs) const {
  std::vector<Scalar> b = rhs;
  std::vector<Scalar> y(order_.size(), Scalar(prec_));
  for (size_t k = 0; k < order_.size(); ++k) {
    const auto& col = cols_[k];
    y[k] = b[col[0].first] / col[0].second;
    for (size_t a = 1; a < col.size(); ++a) b[col[a].first].sub_product(col[a].second, y[k]);
  }
  std::vector<Scalar> x(rhs.size(), Scalar(prec_));
  for (size_t k = order_.size(); k-- > 0;) {
    const auto& col = cols_[k];
    Scalar s = y[k];
    for (size_t a = 1; a < col.size(); ++a) s.sub_product(col[a].second, x[col[a].first]);
    x[col[0].first] = s / col[0].second;
  }
  return x;
}

std::vector<Scalar> pivoted_sparse_cholesky(const SparseSymmetric& m, const std::vector<Scalar>& rhs) {
  return CholeskyFactor(m).solve(rhs);
}

struct InnerProductRewriter::Block {
  std::vector<Monomial> cols;  // extended inner-product monomials
  std::unordered_map<Monomial, int, MonomialHash> rows;
  std::vector<std::vector<std::pair<int, Scalar>>> a;  // column entries
  std::unique_ptr<CholeskyFactor> factor;
};

InnerProductRewriter::InnerProductRewriter(long prec, RewriteOptions opts) : prec_(prec), opts_(opts) {}
InnerProductRewriter::~InnerProductRewriter() = default;

namespace {

// Extended monomials (edges, then norms) with the given degree at each slot.
void enumerate_columns(int n, const std::vector<std::pair<int, int>>& edges, size_t e, std::vector<int>& left,
                       Monomial& cur, std::vector<Monomial>& out) {
  if (e == edges.size()) {
    for (int a = 0; a < n; ++a)
      if (left[a] % 2) return;
    Monomial m = cur;
    for (int a = 0; a < n; ++a) m.set(static_cast<int>(edges.size()) + a, left[a] / 2);
    out.push_back(m);
    return;
  }
  auto [a, b] = edges[e];
  int top = std::min(left[a], left[b]);
  for (int k = 0; k <= top; ++k) {
    cur.set(static_cast<int>(e), k);
    left[a] -= k;
    left[b] -= k;
    enumerate_columns(n, edges, e + 1, left, cur, out);
    left[a] += k;
    left[b] += k;
  }
  cur.set(static_cast<int>(e), 0);
}

std::vector<int> multidegree(const Monomial& m, int n) {
  std::vector<int> k(n, 0);
  for (int a = 0; a < n; ++a) k[a] = m[3 * a] + m[3 * a + 1] + m[3 * a + 2];
  return k;
}

}  // namespace

const InnerProductRewriter::Block& InnerProductRewriter::block(int n, const std::vector<int>& k) {
  auto key = std::make_pair(n, k);
  auto it = blocks_.find(key);
  if (it != blocks_.end()) return *it->second;

  auto blk = std::make_unique<Block>();
  const auto edges = edge_list(n);
  const int ne = static_cast<int>(edges.size());
  std::vector<int> left = k;
  Monomial cur(ne + n);
  enumerate_columns(n, edges, 0, left, cur, blk->cols);
  std::sort(blk->cols.begin(), blk->cols.end(), grlex_less);

  // Powers of the basic dot products, shared between columns.
  std::map<std::tuple<int, int, int>, RealPoly> powers;
  auto power = [&](int a, int b, int e) -> const RealPoly& {
    auto key = std::make_tuple(a, b, e);
    auto pit = powers.find(key);
    if (pit == powers.end()) pit = powers.emplace(key, dot_poly(n, a, b, prec_).pow(e)).first;
    return pit->second;
  };
  for (const auto& col : blk->cols) {
    RealPoly expanded = RealPoly::constant(3 * n, Scalar(1, prec_));
    for (int e = 0; e < ne; ++e)
      if (col[e]) expanded = expanded * power(edges[e].first, edges[e].second, col[e]);
    for (int a = 0; a < n; ++a)
      if (col[ne + a]) expanded = expanded * power(a, a, col[ne + a]);
    std::vector<std::pair<int, Scalar>> entries;
    for (const auto& [m, c] : expanded.terms()) {
      auto rit = blk->rows.find(m);
      if (rit == blk->rows.end()) rit = blk->rows.emplace(m, static_cast<int>(blk->rows.size())).first;
      entries.emplace_back(rit->second, c);
    }
    blk->a.push_back(std::move(entries));
  }

  // Normal equations AᵀA + εI, assembled row by row.
  const int nc = static_cast<int>(blk->cols.size());
  std::vector<std::vector<std::pair<int, const Scalar*>>> by_row(blk->rows.size());
  for (int c = 0; c < nc; ++c)
    for (const auto& [r, v] : blk->a[c]) by_row[r].emplace_back(c, &v);
  SparseSymmetric m(nc, prec_);
  for (const auto& row : by_row)
    for (size_t x = 0; x < row.size(); ++x)
      for (size_t y = x; y < row.size(); ++y) m.add(row[x].first, row[y].first, *row[x].second * *row[y].second);
  Scalar eps = Scalar::pow2(-prec_ / 2 + opts_.eps_shift, prec_);
  for (int c = 0; c < nc; ++c) m.add(c, c, eps);
  if (nc > 0) blk->factor = std::make_unique<CholeskyFactor>(m);

  return *blocks_.emplace(key, std::move(blk)).first->second;
}

RealPoly InnerProductRewriter::rewrite_extended(const RealPoly& p, int n, RewriteReport* report) {
  if (p.nvars() != 3 * n) throw std::invalid_argument("expected 3i cartesian variables");
  if (p.precision() != prec_) throw std::invalid_argument("Scalar precision mismatch");
  const int ne = num_edges(n);
  RewriteReport rep;
  std::map<std::vector<int>, std::vector<const RealPoly::Term*>> groups;
  for (const auto& t : p.terms()) groups[multidegree(t.first, n)].push_back(&t);

  std::vector<RealPoly::Term> out;
  Scalar worst(prec_);
  const Scalar target = Scalar::pow2(-(prec_ * 3) / 4, prec_) * max(Scalar(1, prec_), p.max_abs_coeff());
  for (const auto& [k, terms] : groups) {
    const Block& blk = block(n, k);
    const int nr = static_cast<int>(blk.rows.size());
    const int nc = static_cast<int>(blk.cols.size());
    std::vector<Scalar> b(nr, Scalar(prec_));
    for (const auto* t : terms) {
      auto rit = blk.rows.find(t->first);
      if (rit == blk.rows.end()) {
        // Not reachable by any inner-product monomial: p is not invariant.
        if (worst < abs(t->second)) worst = abs(t->second);
        continue;
      }
      b[rit->second] = t->second;
    }
    std::vector<Scalar> x(nc, Scalar(prec_));
    std::vector<Scalar> r = b;
    for (int it = 0; it <= opts_.max_refinements && nc > 0; ++it) {
      std::vector<Scalar> atr(nc, Scalar(prec_));
      for (int c = 0; c < nc; ++c)
        for (const auto& [row, v] : blk.a[c]) atr[c].add_product(v, r[row]);
      std::vector<Scalar> dx = blk.factor->solve(atr);
      for (int c = 0; c < nc; ++c) x[c] += dx[c];
      r = b;
      for (int c = 0; c < nc; ++c)
        for (const auto& [row, v] : blk.a[c]) r[row].sub_product(v, x[c]);
      Scalar rmax(prec_);
      for (const auto& v : r)
        if (mpfr_cmpabs(v.raw(), rmax.raw()) > 0) rmax = abs(v);
      if (it > 0) rep.refinements = std::max(rep.refinements, it);
      if (rmax <= target) break;
    }
    for (const auto& v : r)
      if (mpfr_cmpabs(v.raw(), worst.raw()) > 0) worst = abs(v);
    for (int c = 0; c < nc; ++c) out.emplace_back(blk.cols[c], x[c]);
  }
  rep.coefficient_residual = worst.to_double();
  if (report) *report = rep;
  return RealPoly::from_terms(ne + n, prec_, std::move(out));
}

RealPoly drop_norms(const RealPoly& q_ext, int n) {
  const int ne = num_edges(n);
  if (q_ext.nvars() != ne + n) throw std::invalid_argument("expected edge and norm variables");
  std::vector<RealPoly::Term> out;
  for (const auto& [m, c] : q_ext.terms()) {
    Monomial r(ne);
    for (int e = 0; e < ne; ++e) r.set(e, m[e]);
    out.emplace_back(r, c);
  }
  return RealPoly::from_terms(ne, q_ext.precision(), std::move(out));
}

Scalar eval_inner(const RealPoly& q, const std::vector<std::vector<Scalar>>& points) {
  const int n = static_cast<int>(points.size());
  if (q.nvars() != num_edges(n)) throw std::invalid_argument("variable count is not C(n,2)");
  std::vector<Scalar> u;
  for (auto [a, b] : edge_list(n)) u.push_back(dot3(points[a], points[b]));
  return q.eval(u);
}

RealPoly InnerProductRewriter::rewrite(const RealPoly& p, int n, int d, RewriteReport* report) {
  RewriteReport rep;
  RealPoly q = drop_norms(rewrite_extended(p, n, &rep), n);
  const Scalar scale = max(Scalar(1, prec_), p.max_abs_coeff());
  const double tol = (Scalar::pow2(-prec_ / 2, prec_) * scale).to_double();
  if (rep.coefficient_residual > tol) throw std::runtime_error("inner-product rewrite failed: polynomial not invariant");
  if (q.degree() > d) throw std::runtime_error("inner-product rewrite failed: degree exceeds d");

  std::mt19937_64 rng(opts_.seed);
  Scalar worst(prec_);
  for (int s = 0; s < opts_.verify_samples; ++s) {
    std::vector<std::vector<Scalar>> pts;
    std::vector<Scalar> flat;
    for (int a = 0; a < n; ++a) {
      pts.push_back(random_sphere_point(rng, prec_));
      flat.insert(flat.end(), pts.back().begin(), pts.back().end());
    }
    Scalar diff = abs(p.eval(flat) - eval_inner(q, pts));
    if (worst < diff) worst = diff;
  }
  rep.sampled_residual = worst.to_double();
  if (rep.sampled_residual > tol) throw std::runtime_error("inner-product rewrite failed: sampled identity check");
  if (report) *report = rep;
  return q;
}

RealPoly rewrite_in_inner_products(const RealPoly& p, int i, int d, const RewriteOptions& opts,
                                   RewriteReport* report) {
  InnerProductRewriter rw(p.precision(), opts);
  return rw.rewrite(p, i, d, report);
}

RealPoly map_edges(const RealPoly& q, int n_slots, const std::vector<int>& slot_to_point, int n_points) {
  if (q.nvars() != num_edges(n_slots)) throw std::invalid_argument("variable count is not C(n,2)");
  if (static_cast<int>(slot_to_point.size()) != n_slots) throw std::invalid_argument("slot map length mismatch");
  const auto edges = edge_list(n_slots);
  std::vector<int> target(edges.size());
  for (size_t e = 0; e < edges.size(); ++e) {
    int a = slot_to_point[edges[e].first], b = slot_to_point[edges[e].second];
    target[e] = a == b ? -1 : edge_index(n_points, a, b);
  }
  std::vector<RealPoly::Term> out;
  out.reserve(q.size());
  for (const auto& [m, c] : q.terms()) {
    Monomial r(num_edges(n_points));
    for (size_t e = 0; e < edges.size(); ++e) {
      if (m[e] == 0 || target[e] < 0) continue;
      r.set(target[e], r[target[e]] + m[e]);
    }
    out.emplace_back(r, c);
  }
  return RealPoly::from_terms(num_edges(n_points), q.precision(), std::move(out));
}

RealPoly apply_A2_inner(const RealPoly& q_slots, int card_row, int card_col, int n_points) {
  if (n_points > 4) throw std::invalid_argument("A2 needs |S| <= 4");
  RealPoly out(num_edges(n_points), q_slots.precision());
  const int full = (1 << n_points) - 1;
  for (int a = 0; a <= full; ++a) {
    if (__builtin_popcount(a) != card_row) continue;
    for (int b = 0; b <= full; ++b) {
      if (__builtin_popcount(b) != card_col || (a | b) != full) continue;
      std::vector<int> slots;
      for (int k = 0; k < n_points; ++k)
        if (a & (1 << k)) slots.push_back(k);
      for (int k = 0; k < n_points; ++k)
        if (b & (1 << k)) slots.push_back(k);
      out += map_edges(q_slots, card_row + card_col, slots, n_points);
    }
  }
  return out;
}

}  // namespace riesz
