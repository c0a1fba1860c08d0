#include "riesz/sosmodel.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "riesz/groups.hpp"
#include "riesz/invariants.hpp"

namespace riesz {

int AffinePoly::degree() const {
  int d = constant.degree();
  for (const auto& [v, p] : terms) d = std::max(d, p.degree());
  return d;
}

namespace {

int floor_div2(int v) { return v >= 0 ? v / 2 : -((1 - v) / 2); }

RealPoly determinant(const std::vector<std::vector<RealPoly>>& m) {
  const int n = static_cast<int>(m.size());
  if (n == 1) return m[0][0];
  RealPoly det(m[0][0].nvars(), m[0][0].precision());
  for (int c = 0; c < n; ++c) {
    std::vector<std::vector<RealPoly>> sub;
    for (int r = 1; r < n; ++r) {
      std::vector<RealPoly> row;
      for (int k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      sub.push_back(std::move(row));
    }
    RealPoly t = m[0][c] * determinant(sub);
    if (c % 2) {
      det -= t;
    } else {
      det += t;
    }
  }
  return det;
}

AffinePoly transform(const AffinePoly& a, const std::function<RealPoly(const RealPoly&)>& f) {
  AffinePoly out;
  out.constant = f(a.constant);
  for (const auto& [v, p] : a.terms) out.terms.emplace_back(v, f(p));
  return out;
}

// Plain Gram block: multiplier · v_h v_hᵀ over all monomials of degree <= h.
SosBlock plain_block(const std::string& name, const RealPoly& multiplier, int h) {
  const int nv = multiplier.nvars();
  const long prec = multiplier.precision();
  auto mons = monomials_up_to(nv, h);
  SosBlock b{name, static_cast<int>(mons.size()), false, false, {}};
  for (size_t a = 0; a < mons.size(); ++a)
    for (size_t c = a; c < mons.size(); ++c)
      b.entries.push_back({static_cast<int>(a), static_cast<int>(c),
                           multiplier * RealPoly::term(mons[a] * mons[c], Scalar(1, prec))});
  return b;
}

}  // namespace

RealPoly gram_principal_minor(int i, const std::vector<int>& points, long prec) {
  const int nv = num_edges(i);
  std::vector<std::vector<RealPoly>> m;
  for (int a : points) {
    std::vector<RealPoly> row;
    for (int b : points)
      row.push_back(a == b ? RealPoly::constant(nv, Scalar(1, prec)) : RealPoly::variable(nv, edge_index(i, a, b), prec));
    m.push_back(std::move(row));
  }
  return determinant(m);
}

SemialgebraicSet build_P(int i, const Scalar& U) {
  if (i < 3 || i > 4) throw std::invalid_argument("build_P needs 3 <= i <= 4");
  const long prec = U.precision();
  const int nv = num_edges(i);
  SemialgebraicSet set;
  set.i = i;
  set.U = U;
  auto edges = edge_list(i);
  for (int e = 0; e < nv; ++e) {
    set.inequalities.push_back(RealPoly::constant(nv, U) - RealPoly::variable(nv, e, prec));
    set.names.push_back("bound" + std::to_string(edges[e].first) + std::to_string(edges[e].second));
  }
  for (int order = 2; order <= std::min(i, 3); ++order) {
    std::vector<int> pts;
    auto rec = [&](auto&& self, int from) -> void {
      if (static_cast<int>(pts.size()) == order) {
        set.inequalities.push_back(gram_principal_minor(i, pts, prec));
        std::string n = "minor";
        for (int p : pts) n += std::to_string(p);
        set.names.push_back(n);
        return;
      }
      for (int p = from; p < i; ++p) {
        pts.push_back(p);
        self(self, p + 1);
        pts.pop_back();
      }
    };
    rec(rec, 0);
  }
  if (i == 4) set.equalities.push_back(gram_principal_minor(4, {0, 1, 2, 3}, prec));
  return set;
}

SosIdentity lukacs_pair_constraint(int s, int d, const Scalar& U, const AffinePoly& q2) {
  if (s < 1) throw std::invalid_argument("s must be a positive integer");
  if (q2.nvars() != 1) throw std::invalid_argument("q2 must be univariate");
  const long prec = U.precision();
  const RealPoly one = RealPoly::constant(1, Scalar(1, prec));
  const RealPoly x = RealPoly::variable(1, 0, prec);
  SosIdentity id;
  id.name = "pair";
  id.rhs = one;
  if (s % 2) {
    // 1 - w^s q2(1 - w²/2) = (w - c) σ1 + (2 - w) σ2 on [c, 2], c = √(2-2U).
    const Scalar c = sqrt(Scalar(2, prec) - U * Scalar(2, prec));
    const RealPoly sub = one - x.pow(2) * Scalar::rational(1, 2, prec);
    const RealPoly ws = x.pow(s);
    id.target = transform(q2, [&](const RealPoly& p) { return ws * p.substitute(0, sub); });
    const int h = (2 * d + s - 1) / 2;
    id.blocks.push_back(plain_block("pair/low", x - RealPoly::constant(1, c), h));
    id.blocks.push_back(plain_block("pair/high", RealPoly::constant(1, Scalar(2, prec)) - x, h));
  } else {
    // 1 - (2-2u)^{s/2} q2(u) as a Lukács form on [-1, U].
    const RealPoly base = (one - x) * Scalar(2, prec);
    const RealPoly fac = base.pow(s / 2);
    id.target = transform(q2, [&](const RealPoly& p) { return fac * p; });
    const int D = s / 2 + d;
    const RealPoly lower = x + one;                        // u + 1 >= 0
    const RealPoly upper = RealPoly::constant(1, U) - x;  // U - u >= 0
    if (D % 2 == 0) {
      id.blocks.push_back(plain_block("pair/sq", one, D / 2));
      if (D / 2 - 1 >= 0) id.blocks.push_back(plain_block("pair/interval", lower * upper, D / 2 - 1));
    } else {
      id.blocks.push_back(plain_block("pair/low", lower, (D - 1) / 2));
      id.blocks.push_back(plain_block("pair/high", upper, (D - 1) / 2));
    }
  }
  return id;
}

SosIdentity putinar_identity(int i, const AffinePoly& qi, int delta, bool symmetry, const Scalar& U) {
  const long prec = U.precision();
  const int nv = num_edges(i);
  if (qi.nvars() != nv) throw std::invalid_argument("q_i has the wrong variable count");
  SemialgebraicSet P = build_P(i, U);
  std::vector<RealPoly> gens = {RealPoly::constant(nv, Scalar(1, prec))};
  std::vector<std::string> names = {"sos"};
  gens.insert(gens.end(), P.inequalities.begin(), P.inequalities.end());
  names.insert(names.end(), P.names.begin(), P.names.end());

  SosIdentity id;
  id.name = "P" + std::to_string(i);
  id.target = qi;
  id.rhs = RealPoly(nv, prec);
  const std::string prefix = "P" + std::to_string(i) + "/";

  if (!symmetry) {
    for (size_t g = 0; g < gens.size(); ++g) {
      int h = floor_div2(delta - std::max(0, gens[g].degree()));
      if (h >= 0) id.blocks.push_back(plain_block(prefix + names[g], gens[g], h));
    }
  } else {
    const PermGroup gamma = edge_action_image(i);
    std::vector<bool> done(gens.size(), false);
    for (size_t g = 0; g < gens.size(); ++g) {
      if (done[g]) continue;
      // Orbit of the generator and one coset representative per image.
      std::vector<Perm> reps;
      std::vector<RealPoly> images;
      for (const auto& x : gamma.elements()) {
        RealPoly img = act(x, gens[g]);
        if (std::find(images.begin(), images.end(), img) != images.end()) continue;
        auto it = std::find(gens.begin(), gens.end(), img);
        if (it == gens.end()) throw std::logic_error("generator set is not invariant under the edge group");
        done[it - gens.begin()] = true;
        images.push_back(img);
        reps.push_back(x);
      }
      int h = floor_div2(delta - std::max(0, gens[g].degree()));
      if (h < 0) continue;
      RepGroup stab = edge_group_irreps(stabilizer(gamma, gens[g]), i, prec);
      auto zonal = modified_zonal(projection_basis(stab, h, prec));
      for (size_t pi = 0; pi < zonal.size(); ++pi) {
        const int m = static_cast<int>(zonal[pi].size());
        if (m == 0) continue;
        SosBlock b{prefix + names[g] + "/" + stab.irreps[pi].name, m, false, false, {}};
        for (int a = 0; a < m; ++a)
          for (int c = a; c < m; ++c) {
            RealPoly base = gens[g] * zonal[pi][a][c];
            RealPoly sum(nv, prec);
            for (const auto& x : reps) sum += act(x, base);
            b.entries.push_back({a, c, std::move(sum)});
          }
        id.blocks.push_back(std::move(b));
      }
    }
  }

  // det E(u) · Σ (q_{α,+} - q_{α,-}) u^α with |α| <= δ - 6.
  if (i == 4 && delta - 6 >= 0) {
    const RealPoly& det = P.equalities[0];
    std::vector<RealPoly> mults;
    auto mons = monomials_up_to(nv, delta - 6);
    if (symmetry) {
      const PermGroup gamma = edge_action_image(4);
      std::vector<bool> seen(mons.size(), false);
      for (size_t k = 0; k < mons.size(); ++k) {
        if (seen[k]) continue;
        RealPoly orbit(nv, prec);
        for (const auto& x : gamma.elements()) {
          RealPoly img = act(x, RealPoly::term(mons[k], Scalar(1, prec)));
          const Monomial& m = img.terms()[0].first;
          size_t idx = std::find(mons.begin(), mons.end(), m) - mons.begin();
          if (!seen[idx]) {
            seen[idx] = true;
            orbit += img;
          }
        }
        mults.push_back(orbit);
      }
    } else {
      for (const auto& m : mons) mults.push_back(RealPoly::term(m, Scalar(1, prec)));
    }
    SosBlock b{prefix + "det", 2 * static_cast<int>(mults.size()), true, true, {}};
    for (size_t k = 0; k < mults.size(); ++k) {
      RealPoly t = det * mults[k];
      b.entries.push_back({static_cast<int>(2 * k), static_cast<int>(2 * k), t});
      b.entries.push_back({static_cast<int>(2 * k + 1), static_cast<int>(2 * k + 1), -t});
    }
    id.blocks.push_back(std::move(b));
  }
  return id;
}

std::vector<LinearRow> assemble_identity_rows(const SosIdentity& id, int first_block) {
  const long prec = id.rhs.precision();
  std::map<Monomial, LinearRow, decltype(&grlex_less)> rows(&grlex_less);
  auto row = [&](const Monomial& m) -> LinearRow& {
    auto it = rows.find(m);
    if (it == rows.end()) it = rows.emplace(m, LinearRow{{}, Scalar(prec), {}}).first;
    return it->second;
  };
  auto add = [&](const VarRef& v, const RealPoly& p) {
    for (const auto& [m, c] : p.terms()) {
      auto& r = row(m);
      auto it = r.coeffs.find(v);
      if (it == r.coeffs.end()) {
        r.coeffs.emplace(v, c);
      } else {
        it->second += c;
      }
    }
  };
  for (const auto& [v, p] : id.target.terms) add(v, p);
  for (size_t b = 0; b < id.blocks.size(); ++b)
    for (const auto& e : id.blocks[b].entries) add(VarRef{first_block + static_cast<int>(b), e.i, e.j}, e.poly);
  for (const auto& [m, c] : id.rhs.terms()) row(m).rhs += c;
  for (const auto& [m, c] : id.target.constant.terms()) row(m).rhs -= c;

  std::vector<LinearRow> out;
  for (auto& [m, r] : rows) {
    for (auto it = r.coeffs.begin(); it != r.coeffs.end();)
      it = detail::negligible(it->second) ? r.coeffs.erase(it) : std::next(it);
    if (r.coeffs.empty()) {
      if (!detail::negligible(r.rhs)) throw std::runtime_error("identity " + id.name + " has an unsatisfiable row");
      continue;
    }
    r.label = id.name + ":";
    for (int k = 0; k < m.nvars; ++k) r.label += (k ? "," : "") + std::to_string(m[k]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace riesz
