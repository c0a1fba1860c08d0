#include "riesz/subsetspace.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace riesz {

std::string TauIndex::str() const {
  switch (kind) {
    case TauKind::kEmpty: return "empty";
    case TauKind::kSingle: return "single(" + std::to_string(l1) + ")";
    default: return "pair(" + std::to_string(l1) + "," + std::to_string(l2) + ")";
  }
}

std::vector<TauIndex> build_index_set(const IrrepLabel& label, int d) {
  if (d < 0) throw std::invalid_argument("negative truncation degree");
  const int ell = label.ell;
  const int p = label.parity;
  std::vector<TauIndex> out;
  if (ell == 0 && p == 1) out.push_back(TauIndex::empty());
  if (ell <= d && p == ((ell % 2) ? -1 : 1)) out.push_back(TauIndex::single(ell));
  const int min_gap = ell % 2;  // odd ell needs l1 != l2
  for (int l1 = 0; l1 <= d; ++l1) {
    for (int l2 = l1; l1 + l2 <= d; ++l2) {
      if (l2 - l1 < min_gap) continue;
      if (ell < l2 - l1 || ell > l1 + l2) continue;
      if (((l1 + l2) % 2 ? -1 : 1) != p) continue;
      out.push_back(TauIndex::pair(l1, l2));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const TauIndex& a, const TauIndex& b) {
    if (a.weight() != b.weight()) return a.weight() < b.weight();
    if (a.cardinality() != b.cardinality()) return a.cardinality() < b.cardinality();
    return a.l1 < b.l1;
  });
  return out;
}

std::vector<IrrepLabel> labels_for_degree(int d, int ell_max) {
  if (ell_max < 0) ell_max = 2 * d;
  std::vector<IrrepLabel> out;
  for (int ell = 0; ell <= ell_max; ++ell) {
    for (int p : {1, -1}) {
      IrrepLabel label{ell, p};
      if (!build_index_set(label, d).empty()) out.push_back(label);
    }
  }
  return out;
}

ComplexPoly BasisElement::component(int i) const {
  if (i == cardinality()) return poly;
  return ComplexPoly(3 * i, poly.precision());
}

namespace {

bool admissible(const IrrepLabel& label, const TauIndex& tau) {
  auto r = build_index_set(label, tau.weight());
  return std::find(r.begin(), r.end(), tau) != r.end();
}

}  // namespace

BasisElement basis_element(const IrrepLabel& label, const TauIndex& tau, int m, HarmonicsCache& cache) {
  if (std::abs(m) > label.ell) throw std::invalid_argument("|m| > ell");
  if (!admissible(label, tau)) throw std::invalid_argument("tau not admissible for label");
  const long prec = cache.precision();
  BasisElement e{label, tau, m, ComplexPoly(3 * tau.cardinality(), prec)};
  switch (tau.kind) {
    case TauKind::kEmpty:
      e.poly = ComplexPoly::constant(0, CScalar(Scalar(1, prec)));
      break;
    case TauKind::kSingle:
      e.poly = cache.Y(label.ell, m);
      break;
    case TauKind::kPair: {
      // Φ^{-1}(Y_ell^m) = Σ C Y_{l1}^{m1}(x1) Y_{l2}^{m2}(x2)
      const std::vector<int> first = {0, 1, 2}, second = {3, 4, 5};
      ComplexPoly w(6, prec);
      for (const auto& t : cache.expansion(tau.l1, tau.l2, label.ell, m)) {
        ComplexPoly a = cache.Y(tau.l1, t.m1).remap(first, 6);
        ComplexPoly b = cache.Y(tau.l2, t.m2).remap(second, 6);
        w += a * b * CScalar(t.coeff);
      }
      if (tau.l1 != tau.l2) {
        // Average over the two orderings, scaled by 1/sqrt|B_tau| to stay unit-norm.
        ComplexPoly swapped = w.remap({3, 4, 5, 0, 1, 2}, 6);
        w = (w + swapped) * CScalar(sqrt(Scalar::rational(1, 2, prec)));
      }
      e.poly = std::move(w);
      break;
    }
  }
  return e;
}

const ZonalEntry& ZonalBlockSet::entry(int a, int b) const {
  if (a > b) std::swap(a, b);
  const int n = static_cast<int>(rows.size());
  if (a < 0 || b >= n) throw std::out_of_range("zonal entry index");
  // Row-major upper triangle offset.
  int idx = a * n - a * (a - 1) / 2 + (b - a);
  return entries.at(idx);
}

ZonalBlockSet zonal_block(const IrrepLabel& label, int d, HarmonicsCache& cache) {
  const long prec = cache.precision();
  ZonalBlockSet z{label, d, build_index_set(label, d), {}};
  const int n = static_cast<int>(z.rows.size());
  std::vector<std::vector<BasisElement>> elems(n);
  for (int a = 0; a < n; ++a)
    for (int m = -label.ell; m <= label.ell; ++m) elems[a].push_back(basis_element(label, z.rows[a], m, cache));

  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      const int ca = z.rows[a].cardinality(), cb = z.rows[b].cardinality();
      const int nv = 3 * (ca + cb);
      std::vector<int> left(3 * ca), right(3 * cb);
      for (int k = 0; k < 3 * ca; ++k) left[k] = k;
      for (int k = 0; k < 3 * cb; ++k) right[k] = 3 * ca + k;
      ComplexPoly sum(nv, prec);
      for (int k = 0; k < label.dim(); ++k) {
        sum += elems[a][k].poly.remap(left, nv) * conj(elems[b][k].poly).remap(right, nv);
      }
      RealPoly real;
      try {
        real = to_real_checked(sum);
      } catch (const std::runtime_error&) {
        throw std::runtime_error("zonal entry is not real: label (" + std::to_string(label.ell) + "," +
                                 std::to_string(label.parity) + ") " + z.rows[a].str() + "," + z.rows[b].str());
      }
      z.entries.push_back({a, b, ca, cb, std::move(real)});
    }
  }
  return z;
}

std::vector<ZonalBlockSet> zonal_blocks(int d, long prec, int ell_max) {
  HarmonicsCache cache(prec);
  std::vector<ZonalBlockSet> out;
  for (const auto& label : labels_for_degree(d, ell_max)) out.push_back(zonal_block(label, d, cache));
  return out;
}

std::vector<SubsetPair> subset_pairs(int n) {
  if (n < 0 || n > 4) throw std::invalid_argument("A2 needs |S| <= 4");
  std::vector<SubsetPair> out;
  const int full = (1 << n) - 1;
  auto members = [n](int mask) {
    std::vector<int> v;
    for (int k = 0; k < n; ++k)
      if (mask & (1 << k)) v.push_back(k);
    return v;
  };
  for (int a = 0; a <= full; ++a) {
    if (__builtin_popcount(a) > 2) continue;
    for (int b = 0; b <= full; ++b) {
      if (__builtin_popcount(b) > 2 || (a | b) != full) continue;
      out.push_back({members(a), members(b)});
    }
  }
  return out;
}

RealPoly apply_A2(const ZonalEntry& entry, int n) {
  RealPoly out(3 * n, entry.poly.precision());
  for (const auto& sp : subset_pairs(n)) {
    if (static_cast<int>(sp.J.size()) != entry.card_row || static_cast<int>(sp.Jp.size()) != entry.card_col) continue;
    std::vector<int> map;
    for (int p : sp.J)
      for (int k = 0; k < 3; ++k) map.push_back(3 * p + k);
    for (int p : sp.Jp)
      for (int k = 0; k < 3; ++k) map.push_back(3 * p + k);
    out += entry.poly.remap(map, 3 * n);
  }
  return out;
}

}  // namespace riesz
