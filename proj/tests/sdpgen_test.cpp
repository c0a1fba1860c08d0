#include <gtest/gtest.h>

#include <bit>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "riesz/invariants.hpp"
#include "riesz/sdp.hpp"
#include "riesz/sphere.hpp"
#include "riesz/subsetspace.hpp"

namespace riesz {
namespace {

constexpr long kPrec = 256;
const std::string kTools = RIESZ_TOOLS_DIR;
const std::string kData = RIESZ_TEST_DATA_DIR;
const std::string kClarabel = "python3 " + kTools + "/clarabel_sdpa.py --tol 1e-10 {input} {output}";

Scalar S(long v) { return Scalar(v, kPrec); }

std::string tmp_path(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "riesz_sdpgen_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

Scalar bipyramid_energy(int s) {
  auto term = [&](long c, long base) { return Scalar(c, kPrec) / pow(Scalar(base, kPrec), Scalar(s, kPrec) / 2); };
  return term(6, 2) + term(3, 3) + term(1, 4);
}

// Row value <F_k, Y> for a dense assignment (weight 2 off the diagonal).
Scalar row_value(const SdpConstraint& c, const std::vector<Matrix>& y) {
  Scalar v(kPrec);
  for (const auto& e : c.entries) {
    Scalar t = e.value * y[e.block](e.i, e.j);
    v += e.i == e.j ? t : t * 2;
  }
  return v;
}

TEST(ThresholdTest, Examples) {
  EXPECT_NEAR(derive_threshold_U(1, Scalar::from_string("6.4746914947", kPrec)).to_double(), 0.98807, 1e-5);
  EXPECT_EQ(derive_threshold_U(2, S(4)), Scalar::from_string("0.875", kPrec));
  EXPECT_LE(abs(derive_threshold_U(3, pow(S(2), Scalar::rational(-3, 2, kPrec)))).to_double(), 1e-70);
  // A larger energy bound excludes fewer pairs: U grows with B.
  EXPECT_GT(derive_threshold_U(1, S(20)), derive_threshold_U(1, S(10)));
  EXPECT_THROW(derive_threshold_U(1, Scalar::from_string("0.1", kPrec)), std::invalid_argument);
  EXPECT_THROW(derive_threshold_U(1, S(-1)), std::invalid_argument);
}

E2Params params(int d, int delta, bool symmetry = true, int s = 1) {
  E2Params p;
  p.N = 5;
  p.s = s;
  p.d = d;
  p.delta = delta;
  p.U = derive_threshold_U(s, bipyramid_energy(s));
  p.symmetry = symmetry;
  return p;
}

TEST(AssembleTest, DegreeZeroStructure) {
  auto prog = assemble_E2(params(0, 0));
  const auto& sdp = prog.sdp;
  EXPECT_EQ(prog.block_counts.at("F"), 1);
  EXPECT_EQ(sdp.blocks[0].name, "F/0+");
  // Weight-zero indices: empty, single 0, pair (0,0).
  EXPECT_EQ(sdp.blocks[0].size, 3);
  EXPECT_EQ(sdp.blocks[prog.a_block].kind, BlockKind::kDiagonal);
  // Objective Σ C(5,i) (a_i^+ - a_i^-).
  const long binom[] = {1, 5, 10, 10, 5};
  ASSERT_EQ(sdp.objective.size(), 10u);
  for (int i = 0; i <= 4; ++i) {
    EXPECT_EQ(sdp.objective[2 * i].value, S(binom[i]));
    EXPECT_EQ(sdp.objective[2 * i + 1].value, S(-binom[i]));
  }
  // Diagonal blocks come last.
  bool seen_diag = false;
  for (const auto& b : sdp.blocks) {
    if (b.kind == BlockKind::kDiagonal) seen_diag = true;
    else EXPECT_FALSE(seen_diag) << b.name;
  }
  // Every split variable has its bound row x + t = 1000.
  int bounds = 0;
  for (const auto& c : sdp.constraints)
    if (c.label.rfind("bound:", 0) == 0) {
      ++bounds;
      EXPECT_EQ(c.rhs, S(1000));
    }
  EXPECT_EQ(bounds, 10);
}

TEST(AssembleTest, DetMultiplierOnlyFromDegreeSix) {
  EXPECT_EQ(assemble_E2(params(1, 4)).block_counts.count("P4/det"), 0u);
  auto p6 = assemble_E2(params(1, 6));
  bool det = false;
  for (const auto& b : p6.sdp.blocks) det |= b.name == "P4/det";
  EXPECT_TRUE(det);
}

// q_i evaluated at inner products equals a_i + A₂K evaluated from the
// cartesian zonal entries, for random values of the variables.
TEST(AssembleTest, QMatchesCartesianA2) {
  const int d = 2;
  auto prog = assemble_E2(params(d, 4));
  auto zonal = zonal_blocks(d, kPrec);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(-1, 1);
  std::map<VarRef, Scalar> val;
  auto value = [&](const VarRef& v) -> const Scalar& {
    auto it = val.find(v);
    if (it == val.end()) it = val.emplace(v, Scalar::from_double(unif(rng), kPrec)).first;
    return it->second;
  };
  for (int i = 0; i <= 4; ++i) {
    std::vector<std::vector<Scalar>> pts;
    std::vector<Scalar> flat;
    for (int k = 0; k < i; ++k) {
      pts.push_back(random_sphere_point(rng, kPrec));
      flat.insert(flat.end(), pts.back().begin(), pts.back().end());
    }
    Scalar lhs(kPrec);
    for (const auto& [v, p] : prog.q[i].terms) {
      Scalar t = value(v) * (i >= 2 ? eval_inner(p, pts) : p.eval({}));
      lhs += v.i == v.j ? t : t * 2;
    }
    Scalar rhs = value({prog.a_block, 2 * i, 2 * i}) - value({prog.a_block, 2 * i + 1, 2 * i + 1});
    for (size_t b = 0; b < zonal.size(); ++b)
      for (const auto& e : zonal[b].entries) {
        if (e.poly.is_zero() || i < std::max(e.card_row, e.card_col) || i > e.card_row + e.card_col) continue;
        Scalar t = value({static_cast<int>(b), e.row, e.col}) * apply_A2(e, i).eval(flat);
        rhs += e.row == e.col ? t : t * 2;
      }
    EXPECT_LE(abs(lhs - rhs).to_double(), 1e-60) << "i = " << i;
  }
}

SdpProblem toy(const std::vector<std::vector<long>>& rows, const std::vector<long>& rhs) {
  SdpProblem p;
  p.precision = kPrec;
  p.blocks.push_back({"x", static_cast<int>(rows[0].size()), BlockKind::kDiagonal});
  for (size_t r = 0; r < rows.size(); ++r) {
    SdpConstraint c{"r" + std::to_string(r), S(rhs[r]), {}};
    for (size_t k = 0; k < rows[r].size(); ++k)
      if (rows[r][k]) c.entries.push_back({0, static_cast<int>(k), static_cast<int>(k), S(rows[r][k])});
    p.constraints.push_back(std::move(c));
  }
  return p;
}

TEST(PruneTest, DuplicateRow) {
  PruneReport rep;
  auto out = prune_constraints(toy({{1, 2, 0}, {1, 2, 0}, {0, 1, 1}}, {3, 3, 1}), &rep);
  EXPECT_EQ(out.constraints.size(), 2u);
  EXPECT_EQ(rep.duplicates, 1);
  EXPECT_THROW(prune_constraints(toy({{1, 2, 0}, {1, 2, 0}}, {3, 4})), std::runtime_error);
}

TEST(PruneTest, SumOfRowsRemoved) {
  PruneReport rep;
  auto out = prune_constraints(toy({{1, 1, 0, 0}, {0, 1, 1, 0}, {1, 2, 1, 0}, {0, 0, 0, 1}}, {1, 1, 2, 5}), &rep);
  EXPECT_EQ(out.constraints.size(), 3u);
  EXPECT_EQ(rep.dependent, 1);
  EXPECT_EQ(rep.core_rows, 3);  // the row with a private column is peeled
  // Independent rows survive untouched.
  auto same = prune_constraints(toy({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}, {1, 1, 1}), &rep);
  EXPECT_EQ(same.constraints.size(), 3u);
  EXPECT_EQ(rep.dependent, 0);
}

TEST(PruneTest, SymmetricQuarticAssemblyHasDependentRows) {
  PruneReport rep;
  auto prog = assemble_E2(params(2, 6));
  auto out = prune_constraints(prog.sdp, &rep);
  EXPECT_GT(rep.duplicates + rep.dependent, 0);
  EXPECT_EQ(rep.duplicates, 913);  // regression value
  EXPECT_EQ(out.constraints.size() + rep.duplicates + rep.dependent, prog.sdp.constraints.size());
}

TEST(SdpaTest, EmptyProblem) {
  SdpProblem p;
  EXPECT_EQ(format_sdpa_sparse(p), "0\n0\n\n\n");
}

TEST(SdpaTest, GoldenTiny) {
  SdpProblem p;
  p.precision = kPrec;
  p.blocks.push_back({"x", 1, BlockKind::kPsd});
  p.constraints.push_back({"x>=1", S(1), {{0, 0, 0, S(1)}}});
  p.objective.push_back({0, 0, 0, S(1)});
  std::ifstream f(kData + "/tiny.dat-s");
  std::stringstream golden;
  golden << f.rdbuf();
  EXPECT_EQ(format_sdpa_sparse(p), golden.str());
}

TEST(SdpaTest, RoundTripRandom) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> small(1, 5);
  std::uniform_real_distribution<double> unif(-10, 10);
  for (int trial = 0; trial < 20; ++trial) {
    SdpProblem p;
    p.precision = kPrec;
    const int nb = small(rng);
    for (int b = 0; b < nb; ++b)
      p.blocks.push_back({"b", small(rng), small(rng) % 2 ? BlockKind::kPsd : BlockKind::kDiagonal});
    auto random_entries = [&]() {
      std::vector<SdpEntry> es;
      for (int k = small(rng); k > 0; --k) {
        int b = std::uniform_int_distribution<int>(0, nb - 1)(rng);
        int n = p.blocks[b].size;
        int i = std::uniform_int_distribution<int>(0, n - 1)(rng);
        int j = p.blocks[b].kind == BlockKind::kDiagonal ? i : std::uniform_int_distribution<int>(i, n - 1)(rng);
        es.push_back({b, i, j, Scalar::from_double(unif(rng), kPrec) / 3});
      }
      return es;
    };
    for (int k = small(rng); k > 0; --k)
      p.constraints.push_back({"c", Scalar::from_double(unif(rng), kPrec), random_entries()});
    p.objective = random_entries();
    p.canonicalize();
    SdpProblem q = parse_sdpa_sparse(format_sdpa_sparse(p, 60), kPrec);
    ASSERT_EQ(q.blocks.size(), p.blocks.size());
    for (size_t b = 0; b < p.blocks.size(); ++b) {
      EXPECT_EQ(q.blocks[b].size, p.blocks[b].size);
      EXPECT_EQ(q.blocks[b].kind, p.blocks[b].kind);
    }
    ASSERT_EQ(q.constraints.size(), p.constraints.size());
    auto same = [&](const std::vector<SdpEntry>& a, const std::vector<SdpEntry>& b) {
      ASSERT_EQ(a.size(), b.size());
      for (size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(std::tie(a[k].block, a[k].i, a[k].j), std::tie(b[k].block, b[k].i, b[k].j));
        EXPECT_LE(abs(a[k].value - b[k].value).to_double(), 1e-57);
      }
    };
    for (size_t k = 0; k < p.constraints.size(); ++k) {
      same(p.constraints[k].entries, q.constraints[k].entries);
      EXPECT_LE(abs(p.constraints[k].rhs - q.constraints[k].rhs).to_double(), 1e-57);
    }
    same(p.objective, q.objective);
    // Emission is deterministic.
    EXPECT_EQ(format_sdpa_sparse(q, 60), format_sdpa_sparse(parse_sdpa_sparse(format_sdpa_sparse(q, 60)), 60));
  }
}

TEST(SdpaTest, RejectsEntriesOutsideBlocks) {
  EXPECT_THROW(parse_sdpa_sparse("1\n1\n2\n1\n1 1 1 3 1.0\n"), std::invalid_argument);
  EXPECT_THROW(parse_sdpa_sparse("1\n1\n-2\n1\n1 1 1 2 1.0\n"), std::invalid_argument);
  EXPECT_THROW(parse_sdpa_sparse("1\n1\n2\n1\n1 1 1\n"), std::runtime_error);
}

std::vector<std::vector<Scalar>> seeded_points(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Scalar>> pts;
  for (int k = 0; k < n; ++k) pts.push_back(random_sphere_point(rng, kPrec));
  return pts;
}

// χ_T for an N-subset T gives y_S = [S ⊆ T]; it satisfies every row.
TEST(FiniteTest, IndicatorIsFeasible) {
  auto f = riesz_potentials(seeded_points(6, 3), 1);
  for (int t = 1; t <= 3; ++t) {
    auto fp = assemble_finite_Lt(f, 3, t);
    const std::uint32_t T = 0b010110;
    std::vector<Matrix> y = {Matrix(fp.moment.size(), fp.moment.size(), kPrec),
                             Matrix(fp.subsets.size(), fp.subsets.size(), kPrec)};
    for (size_t a = 0; a < fp.moment.size(); ++a)
      for (size_t b = 0; b < fp.moment.size(); ++b)
        y[0](a, b) = S(((fp.moment[a] | fp.moment[b]) & ~T) == 0 ? 1 : 0);
    for (size_t k = 0; k < fp.subsets.size(); ++k) y[1](k, k) = S((fp.subsets[k] & ~T) == 0 ? 1 : 0);
    for (const auto& c : fp.sdp.constraints) EXPECT_EQ(row_value(c, y), c.rhs) << c.label;
    // Objective is minus the energy of T.
    Scalar obj(kPrec), energy(kPrec);
    for (const auto& e : fp.sdp.objective) obj += e.value * y[e.block](e.i, e.j);
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b)
        if ((T >> a & 1) && (T >> b & 1)) energy += f(a, b);
    EXPECT_LE(abs(obj + energy).to_double(), 1e-70);
  }
}

TEST(FiniteTest, Limits) {
  auto f = riesz_potentials(seeded_points(4, 1), 1);
  EXPECT_THROW(assemble_finite_Lt(f, 5, 1), std::invalid_argument);
  EXPECT_THROW(assemble_finite_Lt(f, 2, 3), std::invalid_argument);
  EXPECT_THROW(assemble_finite_Lt(riesz_potentials(seeded_points(13, 1), 1), 2, 1), std::invalid_argument);
  EXPECT_EQ(brute_force_min_energy(f, 1), S(0));
}

TEST(SolverTest, GoldenTiny) {
  auto r = solve_external(kData + "/tiny.dat-s", kClarabel, tmp_path("tiny.out"));
  EXPECT_EQ(r.status, "OPTIMAL");
  EXPECT_NEAR(r.bound(), 1.0, 1e-8);
  EXPECT_NEAR(r.primal_objective, 1.0, 1e-8);
}

TEST(SolverTest, ErrorKinds) {
  const std::string in = kData + "/tiny.dat-s", out = tmp_path("err.out");
  auto kind_of = [&](const std::string& cmd) {
    try {
      solve_external(in, cmd, out);
    } catch (const SolverError& e) {
      return static_cast<int>(e.kind);
    }
    return -1;
  };
  EXPECT_EQ(kind_of("riesz-no-such-solver {input} {output}"), static_cast<int>(SolverError::Kind::kNotFound));
  EXPECT_EQ(kind_of("echo hello"), static_cast<int>(SolverError::Kind::kUnparsable));
  EXPECT_EQ(kind_of("printf 'status: NONCONVERGENCE\\nprimal_objective: 1\\ndual_objective: 0\\n' > {output}"),
            static_cast<int>(SolverError::Kind::kNonConvergence));
  auto sdpa = parse_solver_output("phase.value = pdOPT\nIteration = 12\nobjValPrimal = +1.5\nobjValDual = +1.25\n");
  EXPECT_EQ(sdpa.status, "OPTIMAL");
  EXPECT_EQ(sdpa.iterations, 12);
  EXPECT_DOUBLE_EQ(sdpa.bound(), 1.25);
}

TEST(SolverTest, FiniteOracleSmall) {
  // |V| = 2, N = 1: no pair can be chosen.
  {
    auto fp = assemble_finite_Lt(riesz_potentials(seeded_points(2, 2), 1), 1, 1);
    emit_sdpa_sparse(fp.sdp, tmp_path("l1.dat-s"));
    auto r = solve_external(tmp_path("l1.dat-s"), kClarabel, tmp_path("l1.out"));
    EXPECT_NEAR(-r.bound(), 0.0, 1e-6);
  }
  // |V| = 4, N = 2, t = 2: the closest pair.
  auto f = riesz_potentials(seeded_points(4, 9), 1);
  auto fp = assemble_finite_Lt(f, 2, 2);
  emit_sdpa_sparse(fp.sdp, tmp_path("l2.dat-s"));
  auto r = solve_external(tmp_path("l2.dat-s"), kClarabel, tmp_path("l2.out"));
  Scalar best = brute_force_min_energy(f, 2);
  Scalar direct = f(0, 1);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) direct = min(direct, f(a, b));
  EXPECT_EQ(best, direct);
  EXPECT_NEAR(-r.bound(), best.to_double(), 1e-6);
}

TEST(SolverTest, DegreeZeroBoundIsFiniteAndSafe) {
  auto prog = assemble_E2(params(0, 2));
  auto pr = prune_constraints(prog.sdp);
  emit_sdpa_sparse(pr, tmp_path("e2.dat-s"));
  auto r = solve_external(tmp_path("e2.dat-s"), kClarabel, tmp_path("e2.out"));
  EXPECT_EQ(r.status, "OPTIMAL");
  EXPECT_TRUE(std::isfinite(r.bound()));
  EXPECT_LE(r.bound(), bipyramid_energy(1).to_double() + 1e-6);
  // Kernels constant per stratum add Σ_{J,J'} K(J,J') >= 0 to the left-hand
  // sides summed with weights C(5,i), so K = 0 is optimal: C(5,2)·min f = 5.
  EXPECT_NEAR(r.bound(), 5.0, 1e-6);
}

}  // namespace
}  // namespace riesz
