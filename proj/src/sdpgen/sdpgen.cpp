#include "riesz/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <tuple>

#include "riesz/subsetspace.hpp"

namespace riesz {

void SdpProblem::validate() const {
  auto check = [&](const SdpEntry& e, const std::string& where) {
    if (e.block < 0 || e.block >= static_cast<int>(blocks.size()))
      throw std::invalid_argument(where + ": block index out of range");
    const SdpBlock& b = blocks[e.block];
    if (e.i < 0 || e.j < e.i || e.j >= b.size) throw std::invalid_argument(where + ": entry outside block " + b.name);
    if (b.kind == BlockKind::kDiagonal && e.i != e.j)
      throw std::invalid_argument(where + ": off-diagonal entry in diagonal block " + b.name);
  };
  for (const auto& e : objective) check(e, "objective");
  for (const auto& c : constraints)
    for (const auto& e : c.entries) check(e, "constraint " + c.label);
}

namespace {

void canonical_entries(std::vector<SdpEntry>& es) {
  std::stable_sort(es.begin(), es.end(), [](const SdpEntry& a, const SdpEntry& b) {
    return std::tie(a.block, a.i, a.j) < std::tie(b.block, b.i, b.j);
  });
  std::vector<SdpEntry> out;
  for (auto& e : es) {
    if (!out.empty() && std::tie(out.back().block, out.back().i, out.back().j) == std::tie(e.block, e.i, e.j)) {
      out.back().value += e.value;
    } else {
      out.push_back(std::move(e));
    }
  }
  std::erase_if(out, [](const SdpEntry& e) { return e.value.is_zero(); });
  es = std::move(out);
}

}  // namespace

void SdpProblem::canonicalize() {
  canonical_entries(objective);
  for (auto& c : constraints) canonical_entries(c.entries);
}

Scalar derive_threshold_U(int s, const Scalar& B) {
  if (s < 1) throw std::invalid_argument("s must be positive");
  if (B.sign() <= 0) throw std::invalid_argument("energy bound must be positive");
  const long prec = B.precision();
  Scalar U = Scalar(1, prec) - pow(B, Scalar(-2, prec) / s) / 2;
  if (!(U > Scalar(-1, prec) && U < Scalar(1, prec)))
    throw std::invalid_argument("threshold U = " + U.to_string(12) + " lies outside (-1, 1)");
  return U;
}

// ---------------------------------------------------------------------------
// E*_{2,d,δ}

namespace {

std::string label_name(const IrrepLabel& l) {
  return "F/" + std::to_string(l.ell) + (l.parity > 0 ? "+" : "-");
}

Scalar constant_part(const RealPoly& p) {
  Scalar c(p.precision());
  for (const auto& [m, v] : p.terms())
    if (m.degree() == 0) c += v;
  return c;
}

}  // namespace

E2Program assemble_E2(const E2Params& params) {
  const long prec = params.U.precision();
  InnerProductRewriter rw(prec);
  return assemble_E2(params, rw);
}

E2Program assemble_E2(const E2Params& params, InnerProductRewriter& rw) {
  const long prec = rw.precision();
  if (params.U.precision() != prec) throw std::invalid_argument("U precision differs from the rewriter's");
  if (params.d < 0 || params.delta < 0 || params.s < 1 || params.N < 1)
    throw std::invalid_argument("assemble_E2: N, s must be positive and d, δ nonnegative");
  if (!(params.U > Scalar(-1, prec) && params.U < Scalar(1, prec)))
    throw std::invalid_argument("assemble_E2: U must lie in (-1, 1)");
  const Scalar M = params.M_bound.is_zero() ? Scalar(1000, prec) : params.M_bound;
  const Scalar one(1, prec);

  std::vector<SdpBlock> blocks;
  std::vector<AffinePoly> q;
  for (int i = 0; i <= 4; ++i) q.emplace_back(num_edges(i), prec);

  // p_i = a_i + A₂K on i points, rewritten slot-wise and pushed through A₂.
  for (const auto& z : zonal_blocks(params.d, prec)) {
    const int b = static_cast<int>(blocks.size());
    blocks.push_back({label_name(z.label), static_cast<int>(z.rows.size()), BlockKind::kPsd});
    for (const auto& e : z.entries) {
      if (e.poly.is_zero()) continue;
      const int slots = e.card_row + e.card_col;
      RealPoly qs = rw.rewrite(e.poly, slots, params.d);
      for (int i = std::max(e.card_row, e.card_col); i <= std::min(slots, 4); ++i) {
        RealPoly P = apply_A2_inner(qs, e.card_row, e.card_col, i);
        if (i >= 2) P = symmetrize_q(P, i);
        P.prune();
        if (!P.is_zero()) q[i].terms.push_back({VarRef{b, e.row, e.col}, std::move(P)});
      }
    }
  }
  const int a_block = static_cast<int>(blocks.size());
  blocks.push_back({"a", 10, BlockKind::kDiagonal});
  for (int i = 0; i <= 4; ++i) {
    const int nv = num_edges(i);
    q[i].terms.push_back({VarRef{a_block, 2 * i, 2 * i}, RealPoly::constant(nv, one)});
    q[i].terms.push_back({VarRef{a_block, 2 * i + 1, 2 * i + 1}, RealPoly::constant(nv, -one)});
  }
  const int slack_block = static_cast<int>(blocks.size());
  blocks.push_back({"slack", 2, BlockKind::kDiagonal});

  std::vector<LinearRow> rows;
  // q_0 <= 0 and q_1 <= 0 as q_i + slack = 0.
  for (int i = 0; i <= 1; ++i) {
    LinearRow r{{}, -constant_part(q[i].constant), "q" + std::to_string(i)};
    for (const auto& [v, p] : q[i].terms) {
      Scalar c = constant_part(p);
      auto [it, fresh] = r.coeffs.emplace(v, c);
      if (!fresh) it->second += c;
    }
    r.coeffs.emplace(VarRef{slack_block, i, i}, one);
    rows.push_back(std::move(r));
  }

  std::vector<VarRef> split_vars;
  for (int k = 0; k < 10; ++k) split_vars.push_back({a_block, k, k});
  auto add_identity = [&](const SosIdentity& id) {
    const int first = static_cast<int>(blocks.size());
    for (const auto& b : id.blocks) {
      blocks.push_back({b.name, b.size, b.diagonal ? BlockKind::kDiagonal : BlockKind::kPsd});
      if (b.split)
        for (int k = 0; k < b.size; ++k) split_vars.push_back({static_cast<int>(blocks.size()) - 1, k, k});
    }
    auto r = assemble_identity_rows(id, first);
    rows.insert(rows.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  };
  add_identity(lukacs_pair_constraint(params.s, params.d, params.U, q[2]));
  add_identity(putinar_identity(3, q[3], params.delta, params.symmetry, params.U));
  add_identity(putinar_identity(4, q[4], params.delta, params.symmetry, params.U));

  // Split free variables satisfy x^± <= M.
  const int bound_block = static_cast<int>(blocks.size());
  blocks.push_back({"bound", static_cast<int>(split_vars.size()), BlockKind::kDiagonal});
  for (size_t k = 0; k < split_vars.size(); ++k) {
    LinearRow r{{}, M, "bound:" + std::to_string(k)};
    r.coeffs.emplace(split_vars[k], one);
    r.coeffs.emplace(VarRef{bound_block, static_cast<int>(k), static_cast<int>(k)}, one);
    rows.push_back(std::move(r));
  }

  // Final order: PSD blocks as created (F, then SOS by constraint), then
  // diagonal blocks.
  std::vector<int> order(blocks.size());
  for (size_t b = 0; b < blocks.size(); ++b) order[b] = static_cast<int>(b);
  std::stable_partition(order.begin(), order.end(), [&](int b) { return blocks[b].kind == BlockKind::kPsd; });
  std::vector<int> where(blocks.size());
  for (size_t k = 0; k < order.size(); ++k) where[order[k]] = static_cast<int>(k);

  E2Program out;
  SdpProblem& sdp = out.sdp;
  sdp.precision = prec;
  for (int b : order) sdp.blocks.push_back(blocks[b]);
  for (auto& r : rows) {
    SdpConstraint c{std::move(r.label), std::move(r.rhs), {}};
    for (auto& [v, x] : r.coeffs) c.entries.push_back({where[v.block], v.i, v.j, x});
    sdp.constraints.push_back(std::move(c));
  }
  for (int i = 0; i <= 4; ++i) {
    Scalar w(binomial(params.N, i), prec);
    sdp.objective.push_back({where[a_block], 2 * i, 2 * i, w});
    sdp.objective.push_back({where[a_block], 2 * i + 1, 2 * i + 1, -w});
  }
  sdp.canonicalize();
  sdp.validate();
  for (auto& qi : q)
    for (auto& [v, p] : qi.terms) v.block = where[v.block];
  out.q = std::move(q);
  out.a_block = where[a_block];
  for (const auto& b : sdp.blocks) ++out.block_counts[b.name.substr(0, b.name.find('/'))];
  return out;
}

// ---------------------------------------------------------------------------
// Pruning

namespace {

using Key = std::tuple<int, int, int>;

Key key_of(const SdpEntry& e) { return {e.block, e.i, e.j}; }

Scalar row_max(const SdpConstraint& c, long prec) {
  Scalar m(prec);
  for (const auto& e : c.entries) m = max(m, abs(e.value));
  return m;
}

// Greedy pivoted Cholesky on a Gram matrix; returns the accepted pivots.
template <class T>
std::vector<int> gram_pivots(const std::vector<std::vector<T>>& g, const T& tol) {
  using std::sqrt;
  const int n = static_cast<int>(g.size());
  std::vector<int> accepted;
  std::vector<bool> used(n, false);
  std::vector<std::vector<T>> L;  // columns of the factor, full length n
  std::vector<T> diag(n);
  for (int k = 0; k < n; ++k) diag[k] = g[k][k];
  while (true) {
    int p = -1;
    for (int k = 0; k < n; ++k)
      if (!used[k] && (p < 0 || diag[p] < diag[k])) p = k;
    if (p < 0 || !(tol < diag[p])) break;
    used[p] = true;
    accepted.push_back(p);
    T zero = diag[p];
    zero *= 0;
    std::vector<T> col(n, zero);
    T piv = diag[p];
    for (int k = 0; k < n; ++k) {
      if (used[k] && k != p) continue;
      T v = g[k][p];
      for (const auto& c : L) v -= c[k] * c[p];
      col[k] = v;
    }
    T root = sqrt(piv);
    for (int k = 0; k < n; ++k) {
      if (used[k] && k != p) continue;
      col[k] /= root;
      if (k != p) diag[k] -= col[k] * col[k];
    }
    L.push_back(std::move(col));
  }
  return accepted;
}

}  // namespace

SdpProblem prune_constraints(const SdpProblem& problem, PruneReport* report) {
  SdpProblem P = problem;
  P.canonicalize();
  const long prec = P.precision;
  const Scalar dup_tol = Scalar::pow2(-prec / 2, prec);
  const Scalar sig_tol = Scalar::pow2(-prec / 4, prec);
  PruneReport rep;
  const int m = static_cast<int>(P.constraints.size());

  // Duplicates: same significant support, values equal to within tolerance.
  std::vector<Scalar> scale;
  for (const auto& c : P.constraints) scale.push_back(row_max(c, prec));
  std::map<std::vector<Key>, std::vector<int>> by_support;
  std::vector<bool> keep(m, true);
  for (int r = 0; r < m; ++r) {
    const auto& c = P.constraints[r];
    std::vector<Key> support;
    for (const auto& e : c.entries)
      if (abs(e.value) > scale[r] * dup_tol) support.push_back(key_of(e));
    auto& reps = by_support[support];
    for (int o : reps) {
      const auto& d = P.constraints[o];
      Scalar tol = max(scale[r], scale[o]) * dup_tol;
      std::map<Key, Scalar> diff;
      for (const auto& e : c.entries) diff.emplace(key_of(e), e.value);
      for (const auto& e : d.entries) {
        auto [it, fresh] = diff.emplace(key_of(e), -e.value);
        if (!fresh) it->second -= e.value;
      }
      bool same = std::all_of(diff.begin(), diff.end(), [&](const auto& kv) { return abs(kv.second) <= tol; });
      if (!same) continue;
      if (abs(c.rhs - d.rhs) > max(tol, max(abs(c.rhs), abs(d.rhs)) * dup_tol))
        throw std::runtime_error("inconsistent duplicate rows " + d.label + " and " + c.label);
      keep[r] = false;
      ++rep.duplicates;
      break;
    }
    if (keep[r]) reps.push_back(r);
  }

  // Peel rows owning a column no other remaining row touches: such a row is
  // independent of the rest.
  std::vector<int> alive;
  for (int r = 0; r < m; ++r)
    if (keep[r]) alive.push_back(r);
  std::map<Key, int> col_id;
  std::vector<std::vector<int>> row_cols(m), col_rows;
  for (int r : alive)
    for (const auto& e : P.constraints[r].entries) {
      if (!(abs(e.value) > scale[r] * sig_tol)) continue;
      auto [it, fresh] = col_id.emplace(key_of(e), static_cast<int>(col_rows.size()));
      if (fresh) col_rows.emplace_back();
      col_rows[it->second].push_back(r);
      row_cols[r].push_back(it->second);
    }
  std::vector<int> count(col_rows.size());
  std::deque<int> work;
  for (size_t c = 0; c < col_rows.size(); ++c) {
    count[c] = static_cast<int>(col_rows[c].size());
    if (count[c] == 1) work.push_back(static_cast<int>(c));
  }
  std::vector<bool> in_core(m, false);
  for (int r : alive) in_core[r] = true;
  while (!work.empty()) {
    int c = work.front();
    work.pop_front();
    if (count[c] != 1) continue;
    int owner = -1;
    for (int r : col_rows[c])
      if (in_core[r]) owner = r;
    if (owner < 0) continue;
    in_core[owner] = false;
    for (int c2 : row_cols[owner])
      if (--count[c2] == 1) work.push_back(c2);
  }
  std::vector<int> core;
  for (int r : alive)
    if (in_core[r]) core.push_back(r);
  rep.core_rows = static_cast<int>(core.size());

  // Numerical rank of the core on unit-normalized rows.
  if (!core.empty()) {
    const int n = static_cast<int>(core.size());
    std::map<Key, std::vector<std::pair<int, int>>> cols;  // key -> (core idx, entry idx)
    double work_estimate = 0;
    for (int k = 0; k < n; ++k) {
      const auto& es = P.constraints[core[k]].entries;
      for (size_t t = 0; t < es.size(); ++t) cols[key_of(es[t])].push_back({k, static_cast<int>(t)});
    }
    for (const auto& [key, list] : cols) work_estimate += static_cast<double>(list.size()) * list.size();
    std::vector<int> accepted;
    if (work_estimate <= 2e7) {
      std::vector<Scalar> inv_norm(n, Scalar(prec));
      for (int k = 0; k < n; ++k) {
        Scalar s2(prec);
        for (const auto& e : P.constraints[core[k]].entries) s2.add_product(e.value, e.value);
        inv_norm[k] = Scalar(1, prec) / sqrt(s2);
      }
      std::vector<std::vector<Scalar>> g(n, std::vector<Scalar>(n, Scalar(prec)));
      for (const auto& [key, list] : cols)
        for (const auto& [a, ea] : list)
          for (const auto& [b, eb] : list)
            g[a][b].add_product(P.constraints[core[a]].entries[ea].value, P.constraints[core[b]].entries[eb].value);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g[a][b] *= inv_norm[a] * inv_norm[b];
      accepted = gram_pivots(g, Scalar::pow2(-prec / 2, prec));
    } else {
      rep.double_shadow = true;
      std::vector<double> inv_norm(n);
      for (int k = 0; k < n; ++k) {
        double s2 = 0;
        for (const auto& e : P.constraints[core[k]].entries) s2 += e.value.to_double() * e.value.to_double();
        inv_norm[k] = 1 / std::sqrt(s2);
      }
      std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
      for (const auto& [key, list] : cols)
        for (const auto& [a, ea] : list) {
          double va = P.constraints[core[a]].entries[ea].value.to_double() * inv_norm[a];
          for (const auto& [b, eb] : list)
            g[a][b] += va * P.constraints[core[b]].entries[eb].value.to_double() * inv_norm[b];
        }
      accepted = gram_pivots(g, 1e-12);
    }
    std::vector<bool> ok(n, false);
    for (int k : accepted) ok[k] = true;
    for (int k = 0; k < n; ++k)
      if (!ok[k]) {
        keep[core[k]] = false;
        ++rep.dependent;
      }
  }

  SdpProblem out;
  out.precision = prec;
  out.blocks = P.blocks;
  out.objective = P.objective;
  for (int r = 0; r < m; ++r)
    if (keep[r]) out.constraints.push_back(std::move(P.constraints[r]));
  if (report) *report = rep;
  return out;
}

}  // namespace riesz
