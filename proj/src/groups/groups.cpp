#include "riesz/groups.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "riesz/invariants.hpp"

namespace riesz {

Scalar OrthoIrrep::trace(int g) const {
  Scalar t(matrices[g].precision());
  for (int k = 0; k < dim; ++k) t += matrices[g](k, k);
  return t;
}

std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left, int cap) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(left, cap); k >= 1; --k) {
      cur.push_back(k);
      self(self, left - k, k);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

namespace {

using Tableau = std::vector<std::pair<int, int>>;  // (row, col) of each entry

std::vector<Tableau> standard_tableaux(const std::vector<int>& shape) {
  int n = 0;
  for (int r : shape) n += r;
  std::vector<Tableau> out;
  Tableau cur(n);
  std::vector<int> len(shape.size(), 0);
  auto rec = [&](auto&& self, int k) -> void {
    if (k == n) {
      out.push_back(cur);
      return;
    }
    for (size_t r = 0; r < shape.size(); ++r) {
      if (len[r] >= shape[r] || (r > 0 && len[r] >= len[r - 1])) continue;
      cur[k] = {static_cast<int>(r), len[r]};
      ++len[r];
      self(self, k + 1);
      --len[r];
    }
  };
  rec(rec, 0);
  return out;
}

// ρ(s_i) for the adjacent transposition (i, i+1).
Matrix adjacent_matrix(const std::vector<Tableau>& tabs, int i, long prec) {
  const int dim = static_cast<int>(tabs.size());
  std::map<Tableau, int> index;
  for (int t = 0; t < dim; ++t) index[tabs[t]] = t;
  Matrix m(dim, dim, prec);
  for (int t = 0; t < dim; ++t) {
    auto [ra, ca] = tabs[t][i];
    auto [rb, cb] = tabs[t][i + 1];
    if (ra == rb) {
      m(t, t) = Scalar(1, prec);
    } else if (ca == cb) {
      m(t, t) = Scalar(-1, prec);
    } else {
      long r = (cb - rb) - (ca - ra);  // axial distance
      m(t, t) = Scalar::rational(1, r, prec);
      Tableau sw = tabs[t];
      std::swap(sw[i], sw[i + 1]);
      m(index.at(sw), t) = sqrt(Scalar::rational(r * r - 1, r * r, prec));
    }
  }
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() * b.rows(), a.cols() * b.cols(), a.precision());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

std::string partition_name(const std::vector<int>& p) {
  std::string s = "[";
  for (size_t k = 0; k < p.size(); ++k) s += (k ? "," : "") + std::to_string(p[k]);
  return s + "]";
}

}  // namespace

Matrix young_matrix(const std::vector<int>& partition, const Perm& sigma, long prec) {
  auto tabs = standard_tableaux(partition);
  const int n = static_cast<int>(sigma.size());
  const int dim = static_cast<int>(tabs.size());
  // Bubble sort: σ∘s_{j1}∘...∘s_{jk} = id, hence σ = s_{jk}∘...∘s_{j1}.
  Perm w = sigma;
  std::vector<int> swaps;
  for (int pass = 0; pass < n; ++pass)
    for (int j = 0; j + 1 < n; ++j)
      if (w[j] > w[j + 1]) {
        std::swap(w[j], w[j + 1]);
        swaps.push_back(j);
      }
  std::vector<Matrix> gens;
  for (int j = 0; j + 1 < n; ++j) gens.push_back(adjacent_matrix(tabs, j, prec));
  Matrix r = Matrix::identity(dim, prec);
  for (int j : swaps) r = gens[j] * r;
  return r;
}

RepGroup young_irreps(int n, long prec) {
  if (n < 1 || n > 4) throw std::invalid_argument("Young irreps supported for 1 <= n <= 4");
  std::vector<Perm> gens;
  for (int j = 0; j + 1 < n; ++j) {
    Perm s = perm_identity(n);
    std::swap(s[j], s[j + 1]);
    gens.push_back(s);
  }
  RepGroup out{PermGroup(n, gens), {}};
  for (const auto& part : partitions(n)) {
    OrthoIrrep irr;
    irr.name = partition_name(part);
    for (const auto& g : out.group.elements()) irr.matrices.push_back(young_matrix(part, g, prec));
    irr.dim = irr.matrices[0].rows();
    out.irreps.push_back(std::move(irr));
  }
  return out;
}

RepGroup trivial_group(int nvars, long prec) {
  RepGroup out{PermGroup(nvars, {}), {}};
  out.irreps.push_back(OrthoIrrep{"trivial", 1, {Matrix::identity(1, prec)}});
  return out;
}

PermGroup stabilizer(const PermGroup& group, const RealPoly& poly) {
  if (poly.nvars() != group.degree()) throw std::invalid_argument("polynomial variable count differs from group degree");
  std::vector<Perm> keep;
  for (const auto& g : group.elements())
    if (act(g, poly) == poly) keep.push_back(g);
  return PermGroup::from_elements(group.degree(), std::move(keep));
}

RepGroup edge_group_irreps(const PermGroup& edge_group, int n, long prec) {
  if (edge_group.degree() != num_edges(n)) throw std::invalid_argument("edge group degree is not C(n,2)");
  if (n <= 2) {
    if (edge_group.order() != 1) throw std::invalid_argument("edge group on one edge must be trivial");
    RepGroup out{edge_group, {}};
    out.irreps.push_back(OrthoIrrep{"trivial", 1, {Matrix::identity(1, prec)}});
    return out;
  }
  std::map<Perm, Perm> preimage;
  Perm s = perm_identity(n);
  do {
    preimage.emplace(vertex_to_edge_perm(s), s);
  } while (std::next_permutation(s.begin(), s.end()));
  std::vector<Perm> vert;
  for (const auto& g : edge_group.elements()) {
    auto it = preimage.find(g);
    if (it == preimage.end()) throw std::invalid_argument("edge permutation not induced by a vertex permutation");
    vert.push_back(it->second);
  }
  // Vertex orbits.
  std::vector<int> orbit_of(n, -1);
  std::vector<std::vector<int>> orbits;
  for (int v = 0; v < n; ++v) {
    if (orbit_of[v] >= 0) continue;
    std::vector<int> orb;
    for (const auto& p : vert)
      if (std::find(orb.begin(), orb.end(), p[v]) == orb.end()) orb.push_back(p[v]);
    std::sort(orb.begin(), orb.end());
    for (int x : orb) orbit_of[x] = static_cast<int>(orbits.size());
    orbits.push_back(orb);
  }
  long expected = 1;
  for (const auto& o : orbits)
    for (size_t k = 2; k <= o.size(); ++k) expected *= static_cast<long>(k);
  if (expected != edge_group.order()) throw std::invalid_argument("edge group is not the image of a Young subgroup");

  RepGroup out{edge_group, {}};
  std::vector<std::vector<std::vector<int>>> parts;
  for (const auto& o : orbits) parts.push_back(partitions(static_cast<int>(o.size())));
  std::vector<size_t> pick(orbits.size(), 0);
  while (true) {
    OrthoIrrep irr;
    for (size_t o = 0; o < orbits.size(); ++o) irr.name += (o ? "x" : "") + partition_name(parts[o][pick[o]]);
    for (const auto& p : vert) {
      Matrix m = Matrix::identity(1, prec);
      for (size_t o = 0; o < orbits.size(); ++o) {
        const auto& orb = orbits[o];
        Perm local(orb.size());
        for (size_t t = 0; t < orb.size(); ++t)
          local[t] = static_cast<int>(std::find(orb.begin(), orb.end(), p[orb[t]]) - orb.begin());
        m = kron(m, young_matrix(parts[o][pick[o]], local, prec));
      }
      irr.matrices.push_back(std::move(m));
    }
    irr.dim = irr.matrices[0].rows();
    out.irreps.push_back(std::move(irr));
    size_t o = orbits.size();
    while (o > 0) {
      --o;
      if (++pick[o] < parts[o].size()) break;
      pick[o] = 0;
      if (o == 0) return out;
    }
    if (orbits.empty()) return out;
  }
}

long MolienTable::cumulative(int pi, int h) const {
  long s = 0;
  for (int k = 0; k <= h && k < static_cast<int>(mult[pi].size()); ++k) s += mult[pi][k];
  return s;
}

long MolienTable::largest_block(int h) const {
  long best = 0;
  for (size_t pi = 0; pi < mult.size(); ++pi) best = std::max(best, cumulative(static_cast<int>(pi), h));
  return best;
}

MolienTable molien(const RepGroup& g, int max_degree) {
  const int order = g.group.order();
  // [t^k] Π_cycles 1/(1 - t^c) per group element.
  std::vector<std::vector<long>> series;
  for (const auto& p : g.group.elements()) {
    std::vector<long> c(max_degree + 1, 0);
    c[0] = 1;
    for (int len : cycle_lengths(p))
      for (int k = len; k <= max_degree; ++k) c[k] += c[k - len];
    series.push_back(std::move(c));
  }
  MolienTable t;
  for (const auto& irr : g.irreps) {
    t.names.push_back(irr.name);
    t.dims.push_back(irr.dim);
    std::vector<long> m(max_degree + 1);
    for (int k = 0; k <= max_degree; ++k) {
      const long prec = irr.matrices[0].precision();
      Scalar acc(prec);
      for (int e = 0; e < order; ++e) acc.add_product(irr.trace(e), Scalar(series[e][k], prec));
      acc /= Scalar(order, prec);
      double v = acc.to_double();
      double r = std::nearbyint(v);
      if (std::abs(v - r) > 1e-20 || r < 0) throw std::runtime_error("non-integer Molien multiplicity");
      m[k] = static_cast<long>(r);
    }
    t.mult.push_back(std::move(m));
  }
  return t;
}

AdaptedBasis projection_basis(const RepGroup& g, int h, long prec) {
  const int nv = g.group.degree();
  AdaptedBasis out;
  out.nvars = nv;
  out.max_degree = h;
  for (const auto& irr : g.irreps) out.dims.push_back(irr.dim);
  out.elems.resize(g.irreps.size());
  if (h < 0) return out;

  const auto mons = monomials_up_to(nv, h);
  std::unordered_map<Monomial, int, MonomialHash> index;
  for (size_t k = 0; k < mons.size(); ++k) index[mons[k]] = static_cast<int>(k);
  const auto& elems = g.group.elements();
  const int order = g.group.order();
  // image[e][k]: index of L(γ_e) applied to monomial k.
  std::vector<std::vector<int>> image(order, std::vector<int>(mons.size()));
  for (int e = 0; e < order; ++e)
    for (size_t k = 0; k < mons.size(); ++k) {
      Monomial m(nv);
      for (int j = 0; j < nv; ++j) m.set(elems[e][j], mons[k][j]);
      image[e][k] = index.at(m);
    }

  const Scalar tiny = Scalar::pow2(-prec / 2, prec);
  std::vector<bool> seen(mons.size(), false);
  for (size_t start = 0; start < mons.size(); ++start) {
    if (seen[start]) continue;
    std::vector<int> orbit;
    for (int e = 0; e < order; ++e) {
      int k = image[e][start];
      if (!seen[k]) {
        seen[k] = true;
        orbit.push_back(k);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    const int sz = static_cast<int>(orbit.size());
    std::map<int, int> local;
    for (int t = 0; t < sz; ++t) local[orbit[t]] = t;

    for (size_t pi = 0; pi < g.irreps.size(); ++pi) {
      const auto& irr = g.irreps[pi];
      const int d = irr.dim;
      const Scalar scale = Scalar::rational(d, order, prec);
      // p_{j,1} = (d/|Γ|) Σ π(γ)_{j,1} L(γ) on this orbit, so that
      // L(γ) e_j = Σ_j' π(γ)_{j',j} e_j'.
      std::vector<Matrix> pj(d, Matrix(sz, sz, prec));
      for (int e = 0; e < order; ++e)
        for (int j = 0; j < d; ++j) {
          Scalar c = irr.matrices[e](j, 0) * scale;
          if (c.is_zero()) continue;
          for (int t = 0; t < sz; ++t) pj[j](local.at(image[e][orbit[t]]), t) += c;
        }
      // Orthonormal basis of Im p_{1,1} by Gram–Schmidt on its columns.
      std::vector<std::vector<Scalar>> basis;
      for (int t = 0; t < sz; ++t) {
        std::vector<Scalar> v(sz, Scalar(prec));
        for (int r = 0; r < sz; ++r) v[r] = pj[0](r, t);
        for (int pass = 0; pass < 2; ++pass)
          for (const auto& b : basis) {
            Scalar dot(prec);
            for (int r = 0; r < sz; ++r) dot.add_product(b[r], v[r]);
            for (int r = 0; r < sz; ++r) v[r].sub_product(dot, b[r]);
          }
        Scalar n2(prec);
        for (const auto& x : v) n2.add_product(x, x);
        if (n2 <= tiny) continue;
        Scalar nrm = sqrt(n2);
        for (auto& x : v) x /= nrm;
        basis.push_back(std::move(v));
      }
      for (const auto& b : basis) {
        std::vector<RealPoly> row;
        for (int j = 0; j < d; ++j) {
          std::vector<RealPoly::Term> terms;
          for (int r = 0; r < sz; ++r) {
            Scalar c(prec);
            for (int t = 0; t < sz; ++t) c.add_product(pj[j](r, t), b[t]);
            terms.emplace_back(mons[orbit[r]], c);
          }
          row.push_back(RealPoly::from_terms(nv, prec, std::move(terms)));
        }
        out.elems[pi].push_back(std::move(row));
      }
    }
  }
  MolienTable table = molien(g, h);
  for (size_t pi = 0; pi < g.irreps.size(); ++pi)
    if (table.cumulative(static_cast<int>(pi), h) != out.multiplicity(static_cast<int>(pi)))
      throw std::runtime_error("projection rank disagrees with Molien multiplicity");
  return out;
}

std::vector<PolyMatrix> modified_zonal(const AdaptedBasis& basis) {
  std::vector<PolyMatrix> out;
  for (size_t pi = 0; pi < basis.elems.size(); ++pi) {
    const auto& e = basis.elems[pi];
    const int m = static_cast<int>(e.size());
    PolyMatrix z(m, std::vector<RealPoly>(m));
    for (int i = 0; i < m; ++i)
      for (int k = i; k < m; ++k) {
        RealPoly s(basis.nvars, e[i][0].precision());
        for (size_t j = 0; j < e[i].size(); ++j) s += e[i][j] * e[k][j];
        z[i][k] = s;
        z[k][i] = s;
      }
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace riesz
