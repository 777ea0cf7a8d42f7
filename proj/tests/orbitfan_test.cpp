#include "flagbott/orbitfan.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "flagbott/fancheck.hpp"
#include "flagbott/permfan.hpp"
#include "support/towers.hpp"

namespace flagbott {
namespace {

using testing::ThreeStageParams;

IntVector ray(const Fan& f, int stage, std::initializer_list<int> s) {
  const int ground = f.dims()[stage - 1] + 1;
  const auto idx = f.find_ray({stage, Subset::of(ground, s)});
  EXPECT_TRUE(idx.has_value());
  return idx ? f.ray(*idx).vector : IntVector{};
}

using LabelSet = std::set<std::pair<int, std::uint64_t>>;

LabelSet labels(const Fan& f, std::size_t cone) {
  LabelSet out;
  for (RayIndex r : f.cone(cone)) out.emplace(f.ray(r).label.stage, f.ray(r).label.set.bits());
  return out;
}

std::uint64_t bits(int ground, std::initializer_list<int> s) { return Subset::of(ground, s).bits(); }

TEST(TwoStage, RaysMatchClosedForms) {
  for (auto [c1, c2] : {std::pair{1L, 2L}, {0L, 0L}, {-3L, 5L}, {7L, -4L}}) {
    const Fan f = build_fan(testing::two_stage(c1, c2));
    ASSERT_EQ(f.rays().size(), 8u);
    EXPECT_EQ(ray(f, 1, {1}), (IntVector{1, 0, 0}));
    EXPECT_EQ(ray(f, 1, {2}), (IntVector{0, 1, 0}));
    EXPECT_EQ(ray(f, 1, {3}), (IntVector{-1, -1, c1 + c2}));
    EXPECT_EQ(ray(f, 1, {1, 2}), (IntVector{1, 1, -c2}));
    EXPECT_EQ(ray(f, 1, {2, 3}), (IntVector{-1, 0, c1}));
    EXPECT_EQ(ray(f, 1, {1, 3}), (IntVector{0, -1, c1}));
    EXPECT_EQ(ray(f, 2, {1}), (IntVector{0, 0, 1}));
    EXPECT_EQ(ray(f, 2, {2}), (IntVector{0, 0, -1}));
  }
}

TEST(TwoStage, TwelveCones) {
  const Fan f = build_fan(testing::two_stage());
  std::set<LabelSet> got;
  for (std::size_t i = 0; i < f.num_cones(); ++i) got.insert(labels(f, i));
  std::set<LabelSet> expected;
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> chains = {
      {bits(3, {1}), bits(3, {1, 2})}, {bits(3, {1}), bits(3, {1, 3})},
      {bits(3, {2}), bits(3, {1, 2})}, {bits(3, {2}), bits(3, {2, 3})},
      {bits(3, {3}), bits(3, {1, 3})}, {bits(3, {3}), bits(3, {2, 3})}};
  for (int top : {1, 2})
    for (const auto& [a, b] : chains) expected.insert({{1, a}, {1, b}, {2, bits(2, {top})}});
  EXPECT_EQ(f.num_cones(), 12u);
  EXPECT_EQ(got, expected);
}

TEST(ThreeStage, RaysMatchClosedForms) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-9, 9);
  std::vector<ThreeStageParams> params{{}, {0, 0, 0, 0, 0, 0, 0, 0}};
  for (int i = 0; i < 5; ++i)
    params.push_back({d(rng), d(rng), d(rng), d(rng), d(rng), d(rng), d(rng), d(rng)});
  for (const auto& p : params) {
    const Fan f = build_fan(testing::three_stage(p));
    ASSERT_EQ(f.rays().size(), 14u);
    EXPECT_EQ(ray(f, 1, {1}), (IntVector{1, 0, 0, 0, 0}));
    EXPECT_EQ(ray(f, 1, {2}), (IntVector{0, 1, 0, 0, 0}));
    EXPECT_EQ(ray(f, 1, {3}), (IntVector{-1, -1, p.x11 + p.x12, p.x21 + p.x22, p.y1 + p.y2}));
    EXPECT_EQ(ray(f, 1, {1, 2}), (IntVector{1, 1, -p.x12, -p.x22, -p.y2}));
    EXPECT_EQ(ray(f, 1, {2, 3}), (IntVector{-1, 0, p.x11, p.x21, p.y1}));
    EXPECT_EQ(ray(f, 1, {1, 3}), (IntVector{0, -1, p.x11, p.x21, p.y1}));
    EXPECT_EQ(ray(f, 2, {1}), (IntVector{0, 0, 1, 0, 0}));
    EXPECT_EQ(ray(f, 2, {2}), (IntVector{0, 0, 0, 1, 0}));
    EXPECT_EQ(ray(f, 2, {3}), (IntVector{0, 0, -1, -1, p.z1 + p.z2}));
    EXPECT_EQ(ray(f, 2, {1, 2}), (IntVector{0, 0, 1, 1, -p.z2}));
    EXPECT_EQ(ray(f, 2, {2, 3}), (IntVector{0, 0, -1, 0, p.z1}));
    EXPECT_EQ(ray(f, 2, {1, 3}), (IntVector{0, 0, 0, -1, p.z1}));
    EXPECT_EQ(ray(f, 3, {1}), (IntVector{0, 0, 0, 0, 1}));
    EXPECT_EQ(ray(f, 3, {2}), (IntVector{0, 0, 0, 0, -1}));
  }
}

TEST(ThreeStage, DeterminantExample) {
  const FlagBottTower t = testing::three_stage();
  const ChainTuple c{{2, {Subset::of(3, {2}), Subset::of(3, {2, 3})}},
                     {2, {Subset::of(3, {2}), Subset::of(3, {1, 2})}},
                     {1, {Subset::of(2, {2})}}};
  const auto cone = maximal_cone(t, c);
  ASSERT_EQ(cone.size(), 5u);
  IntMatrix m(5, 5);
  for (std::size_t col = 0; col < 5; ++col) {
    const IntVector u = ray_generator(t, cone[col].stage, cone[col].set);
    for (std::size_t r = 0; r < 5; ++r) m(r, col) = u[r];
  }
  EXPECT_EQ(m, (IntMatrix{{0, -1, 0, 0, 0},
                          {1, 0, 0, 0, 0},
                          {0, 1, 0, 1, 0},
                          {0, 3, 1, 1, 0},
                          {0, 5, 0, -8, -1}}));
  EXPECT_EQ(det(m), 1);
}

// The block formula with the last coordinate of every block deleted.
IntVector literal_formula(const FlagBottTower& t, int l, const Subset& s) {
  const int nl = t.dim(l);
  const int d = nl + 1 - s.size();
  std::vector<std::vector<Integer>> blocks;
  for (int p = 1; p <= t.stages(); ++p) blocks.emplace_back(t.dim(p) + 1, 0);
  const bool has_last = s.contains(nl + 1);
  for (int e = 1; e <= nl + 1; ++e) {
    if (!has_last && s.contains(e)) blocks[l - 1][e - 1] = 1;
    if (has_last && !s.contains(e)) blocks[l - 1][e - 1] = -1;
  }
  for (int p = l + 1; p <= t.stages(); ++p) {
    const IntMatrix& a = t.a(p, l);
    for (int k = 1; k <= t.dim(p) + 1; ++k) {
      Integer sum = 0;
      if (!has_last)
        for (int c = d + 1; c <= nl + 1; ++c) sum -= a(k - 1, c - 1);
      else
        for (int c = 1; c <= d; ++c) sum += a(k - 1, c - 1);
      blocks[p - 1][k - 1] += sum;
    }
  }
  IntVector out;
  for (int p = 1; p <= t.stages(); ++p)
    out.insert(out.end(), blocks[p - 1].begin(), blocks[p - 1].end() - 1);
  return out;
}

// Random tower whose matrices all have a zero last row.
FlagBottTower normalized(FlagBottTower t) {
  for (int j = 2; j <= t.stages(); ++j)
    for (int l = 1; l < j; ++l) {
      IntMatrix a = t.a(j, l);
      for (auto& e : a.row(a.rows() - 1)) e = 0;
      t.set_a(j, l, std::move(a));
    }
  return t;
}

TEST(RayGenerator, MatchesLiteralFormulaOnNormalizedTowers) {
  for (const auto& raw : testing::standard_population()) {
    const FlagBottTower t = normalized(raw);
    ASSERT_TRUE(has_zero_last_rows(t));
    for (const auto& r : all_rays(t))
      EXPECT_EQ(r.vector, literal_formula(t, r.label.stage, r.label.set))
          << testing::describe(t) << " " << r.label.to_string();
  }
}

TEST(RayGenerator, LiteralDeletionBreaksPairingOffNormalForm) {
  // dims (1,1), A^(2)_1 with a nonzero last row.
  FlagBottTower t({1, 1});
  t.set_a(2, 1, IntMatrix{{0, 0}, {1, 0}});
  ASSERT_FALSE(has_zero_last_rows(t));
  const Subset s = Subset::of(2, {2});
  PermTuple v{special_permutation(s), Permutation::identity(2)};
  const WeightSystem ws = weights_at(t, v);
  const IntVector literal = literal_formula(t, 1, s);
  EXPECT_EQ(literal, delete_last_coordinates(t, ambient_ray_generator(t, 1, s)));
  EXPECT_NE(dot(ws.weight(2, 1), literal), 0);
  EXPECT_EQ(dot(ws.weight(2, 1), ray_generator(t, 1, s)), 0);
  EXPECT_TRUE(verify_pairing_identity(t).ok());
}

TEST(RayGenerator, ReductionStaysInTheKernelCoset) {
  for (const auto& t : testing::standard_population()) {
    for (const auto& r : all_rays(t)) {
      const IntVector amb = ambient_ray_generator(t, r.label.stage, r.label.set);
      // u_amb minus the lift of the reduced ray is a combination of kappas;
      // each kappa_p is identified by its (p, n_p+1) coordinate.
      IntVector diff = amb;
      std::size_t k = 0;
      for (int p = 1; p <= t.stages(); ++p) {
        const std::size_t off = t.ambient_block_offset(p);
        for (int e = 0; e < t.dim(p); ++e) diff[off + e] -= r.vector[k++];
      }
      for (int p = 1; p <= t.stages(); ++p) {
        const Integer c = diff[t.ambient_block_offset(p) + t.dim(p)];
        const IntVector kappa = action_kernel_generator(t, p);
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= c * kappa[i];
      }
      EXPECT_TRUE(std::all_of(diff.begin(), diff.end(), [](const Integer& x) { return x == 0; }))
          << testing::describe(t) << " " << r.label.to_string();
    }
  }
}

TEST(Weights, AnnihilateTheActionKernel) {
  std::mt19937_64 rng(8);
  for (const auto& t : testing::standard_population()) {
    PermTuple v;
    for (int p = 1; p <= t.stages(); ++p) {
      auto perms = all_permutations(t.dim(p) + 1);
      v.push_back(perms[std::uniform_int_distribution<std::size_t>(0, perms.size() - 1)(rng)]);
    }
    const WeightSystem ws = weights_at(t, v);
    for (int l = 1; l <= t.stages(); ++l) {
      const IntVector kappa = action_kernel_generator(t, l);
      for (const auto& rows : ws.ambient_rows)
        for (std::size_t i = 0; i + 1 < rows.rows(); ++i) {
          IntVector w(rows.cols());
          for (std::size_t c = 0; c < rows.cols(); ++c) w[c] = rows(i + 1, c) - rows(i, c);
          EXPECT_EQ(dot(w, kappa), 0) << testing::describe(t);
        }
    }
  }
}

// X^(j)_l as a sum over descending stage paths j > q_1 > ... > l:
// B_j A^(j)_{q_1} B_{q_1} A^(q_1)_{q_2} ... A^(q_r)_l B_l.
IntMatrix x_by_paths(const FlagBottTower& t, const PermTuple& v, int j, int l) {
  IntMatrix total(t.dim(j) + 1, t.dim(l) + 1);
  const int between = j - l - 1;
  for (std::uint32_t mask = 0; mask < (1u << between); ++mask) {
    std::vector<int> path{j};
    for (int q = j - 1; q > l; --q)
      if (mask >> (q - l - 1) & 1u) path.push_back(q);
    path.push_back(l);
    IntMatrix prod = row_permutation_matrix(v[j - 1]);
    for (std::size_t s = 1; s < path.size(); ++s)
      prod = prod * t.a(path[s - 1], path[s]) * row_permutation_matrix(v[path[s] - 1]);
    total = total + prod;
  }
  return total;
}

TEST(XMatrices, RecurrenceMatchesPathExpansion) {
  std::mt19937_64 rng(9);
  auto towers = testing::random_population(30, 4, 2, 4, 31);
  for (const auto& t : towers) {
    PermTuple v;
    for (int p = 1; p <= t.stages(); ++p) {
      auto perms = all_permutations(t.dim(p) + 1);
      v.push_back(perms[std::uniform_int_distribution<std::size_t>(0, perms.size() - 1)(rng)]);
    }
    for (int j = 2; j <= t.stages(); ++j)
      for (int l = 1; l < j; ++l) EXPECT_EQ(x_matrix(t, v, j, l), x_by_paths(t, v, j, l));
  }
  const FlagBottTower t = testing::three_stage();
  PermTuple v{Permutation::identity(3), Permutation::identity(3), Permutation::identity(2)};
  EXPECT_THROW(x_matrix(t, v, 2, 2), Error);
  EXPECT_THROW(x_matrix(t, v, 4, 1), Error);
}

TEST(PermTuples, IndexIsLexicographicRank) {
  const std::vector<int> dims{2, 1, 2};
  std::vector<PermTuple> all;
  for (const auto& a : all_permutations(3))
    for (const auto& b : all_permutations(2))
      for (const auto& c : all_permutations(3)) all.push_back({a, b, c});
  ASSERT_EQ(cone_count(dims), static_cast<long>(all.size()));
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(perm_tuple_index(all[i]), i);
    EXPECT_EQ(perm_tuple_at(dims, i), all[i]);
  }
}

TEST(PermTuples, ChainRoundTrip) {
  const std::vector<int> dims{3, 2};
  for (std::uint64_t i = 0; i < 144; ++i) {
    const PermTuple v = perm_tuple_at(dims, i);
    EXPECT_EQ(perm_tuple_of_chain_tuple(chain_tuple_of_perm_tuple(v)), v);
  }
}

TEST(BuildFan, CountsOrderAndLabels) {
  for (const auto& t : testing::standard_population()) {
    const Fan f = build_fan(t);
    std::size_t rays = 0;
    for (int d : t.dims()) rays += (std::size_t{1} << (d + 1)) - 2;
    EXPECT_EQ(f.rays().size(), rays);
    EXPECT_EQ(Integer(f.num_cones()), cone_count(t.dims()));
    EXPECT_TRUE(std::is_sorted(f.rays().begin(), f.rays().end(),
                               [](const Ray& a, const Ray& b) { return a.label < b.label; }));
    std::set<std::vector<RayIndex>> distinct;
    for (std::size_t i = 0; i < f.num_cones(); ++i) {
      EXPECT_EQ(f.tuple_index(i), i);
      const auto chains = chain_tuple_of_perm_tuple(perm_tuple_at(t.dims(), i));
      std::vector<RayIndex> idx;
      for (const auto& label : maximal_cone(t, chains)) idx.push_back(*f.find_ray(label));
      std::sort(idx.begin(), idx.end());
      EXPECT_TRUE(std::equal(idx.begin(), idx.end(), f.cone(i).begin(), f.cone(i).end()));
      distinct.insert(idx);
    }
    EXPECT_EQ(distinct.size(), f.num_cones());
  }
}

TEST(BuildFan, ConeCap) {
  const FlagBottTower t({3, 3});
  EXPECT_EQ(build_fan(t, 576).num_cones(), 576u);
  try {
    build_fan(t, 575);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEnumerationTooLarge);
  }
}

TEST(BuildFan, RejectsInvalidTowers) {
  FlagBottTower t({2, 1});
  std::map<FlagBottTower::Key, IntMatrix> none;
  EXPECT_THROW(build_fan(FlagBottTower({2, 1}, none)), Error);
  EXPECT_THROW(ray_generator(t, 1, Subset::full(3)), Error);
  EXPECT_THROW(ray_generator(t, 3, Subset::of(2, {1})), Error);
}

TEST(Reductions, OneStageIsPermutohedral) {
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(build_fan(FlagBottTower({n})), perm_fan(n));
}

TEST(Reductions, ZeroMatricesGiveAProduct) {
  for (const std::vector<int>& dims : {std::vector<int>{1, 2}, {2, 2}, {3, 1}, {1, 2, 1}}) {
    const Fan f = build_fan(FlagBottTower(dims));
    std::vector<Fan> factors;
    for (int d : dims) factors.push_back(perm_fan(d));
    for (const auto& r : f.rays()) {
      const Fan& factor = factors[r.label.stage - 1];
      IntVector expected(f.rank(), 0);
      const IntVector& local = factor.ray(*factor.find_ray({1, r.label.set})).vector;
      std::copy(local.begin(), local.end(), expected.begin() + f.block_offset(r.label.stage));
      EXPECT_EQ(r.vector, expected);
    }
    // Cones are all combinations of factor cones, in order.
    std::size_t i = 0;
    std::vector<std::size_t> odometer(dims.size(), 0);
    for (; i < f.num_cones(); ++i) {
      LabelSet want;
      for (std::size_t s = 0; s < dims.size(); ++s)
        for (RayIndex r : factors[s].cone(odometer[s]))
          want.emplace(static_cast<int>(s) + 1, factors[s].ray(r).label.set.bits());
      EXPECT_EQ(labels(f, i), want);
      for (std::size_t s = dims.size(); s-- > 0;) {
        if (++odometer[s] < factors[s].num_cones()) break;
        odometer[s] = 0;
      }
    }
    EXPECT_EQ(i, static_cast<std::size_t>(cone_count(dims)));
  }
}

TEST(SpecialPermutation, ComplementThenSet) {
  EXPECT_EQ(special_permutation(Subset::of(4, {2, 4})).images, (std::vector<int>{1, 3, 2, 4}));
  EXPECT_EQ(special_permutation(Subset::of(3, {1})).images, (std::vector<int>{2, 3, 1}));
}

TEST(SpecialPermutation, ItsConeContainsTheLabel) {
  for (int n = 1; n <= 4; ++n)
    for (std::uint64_t b = 1; b + 1 < (std::uint64_t{1} << (n + 1)); ++b) {
      const Subset s(n + 1, b);
      const Chain c = chain_of_permutation(special_permutation(s));
      EXPECT_EQ(c.sets[static_cast<std::size_t>(s.size() - 1)], s);
    }
}

TEST(Pairing, GoldenTowers) {
  for (const auto& t : {testing::two_stage(), testing::three_stage()}) {
    const auto rep = verify_pairing_identity(t);
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.labels_checked, all_rays(t).size());
  }
}

TEST(Pairing, HoldsOffNormalForm) {
  FlagBottTower t({1, 1});
  t.set_a(2, 1, IntMatrix{{2, -1}, {3, 5}});
  const auto rep = verify_pairing_identity(t);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.pairings_checked, rep.labels_checked * 2);
}

TEST(Oracle, GoldenTowers) {
  for (const auto& t : {testing::two_stage(), testing::three_stage()}) {
    const Fan f = build_fan(t);
    const auto rep = verify_oracle(t, f);
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.cones_checked, f.num_cones());
  }
}

TEST(Oracle, DetectsTamperedRays) {
  const FlagBottTower t = testing::two_stage();
  Fan f = build_fan(t);
  f.mutable_ray(*f.find_ray({1, Subset::of(3, {3})})).vector = IntVector{-1, -1, 4};
  const auto rep = verify_oracle(t, f);
  EXPECT_FALSE(rep.ok());
  EXPECT_EQ(rep.mismatches.size(), 4u);  // cones containing u^1_{3}
}

TEST(Oracle, IndexMatching) {
  // The rays derived at fixed point v are exactly the rays of the cone
  // indexed by the chain tuple of v, on random towers.
  for (const auto& t : testing::oracle_population()) {
    const Fan f = build_fan(t);
    for (std::size_t i = 0; i < f.num_cones(); i += 7) {
      const PermTuple v = perm_tuple_at(t.dims(), f.tuple_index(i));
      std::vector<IntVector> expected;
      for (const auto& label : maximal_cone(t, chain_tuple_of_perm_tuple(v)))
        expected.push_back(ray_generator(t, label.stage, label.set));
      std::sort(expected.begin(), expected.end());
      EXPECT_EQ(derive_rays_from_weights(t, v), expected) << testing::describe(t);
    }
  }
}

}  // namespace
}  // namespace flagbott
