#include "flagbott/fancheck.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "flagbott/orbitfan.hpp"
#include "flagbott/permfan.hpp"

namespace flagbott {

const char* to_string(WallDefectKind kind) {
  switch (kind) {
    case WallDefectKind::kDegenerateCone: return "degenerate cone";
    case WallDefectKind::kDangling: return "dangling wall";
    case WallDefectKind::kOverfull: return "overfull wall";
    case WallDefectKind::kSameSide: return "opposite rays on the same side";
    case WallDefectKind::kDisconnected: return "disconnected";
  }
  return "unknown";
}

SmoothnessReport is_smooth(const Fan& f) {
  SmoothnessReport report;
  for (std::size_t i = 0; i < f.num_cones(); ++i) {
    if (f.cone(i).size() != f.rank())
      throw Error(ErrorCode::kNotSimplicial,
                  "cone " + std::to_string(i) + " has " + std::to_string(f.cone(i).size()) +
                      " rays, expected " + std::to_string(f.rank()));
    Integer d = det(f.cone_matrix(i));
    ++report.cones_checked;
    if (abs(d) != 1) report.failures.push_back({i, std::move(d)});
  }
  return report;
}

namespace {

struct WallEntry {
  std::size_t first_cone = 0;
  IntVector normal;      // positive on the first cone's opposite ray
  std::vector<std::size_t> cones;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

CompletenessReport is_complete_simplicial(const Fan& f) {
  CompletenessReport report;
  const std::size_t n = f.rank();
  std::map<std::vector<RayIndex>, WallEntry> walls;
  std::vector<bool> usable(f.num_cones(), false);

  for (std::size_t i = 0; i < f.num_cones(); ++i) {
    ++report.cones_checked;
    const auto cone = f.cone(i);
    if (cone.size() != n) {
      report.defects.push_back({WallDefectKind::kDegenerateCone, {cone.begin(), cone.end()}, {i}});
      continue;
    }
    // Row k of adj(M) is the integer kernel of every column but k, and
    // pairs with column k to det(M).
    const Adjugate a = adjugate(f.cone_matrix(i));
    if (a.det == 0) {
      report.defects.push_back({WallDefectKind::kDegenerateCone, {cone.begin(), cone.end()}, {i}});
      continue;
    }
    usable[i] = true;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<RayIndex> wall;
      wall.reserve(n - 1);
      for (std::size_t q = 0; q < n; ++q)
        if (q != k) wall.push_back(cone[q]);
      auto [it, inserted] = walls.try_emplace(std::move(wall));
      WallEntry& entry = it->second;
      if (inserted) {
        entry.first_cone = i;
        entry.normal.resize(n);
        for (std::size_t c = 0; c < n; ++c)
          entry.normal[c] = a.det > 0 ? a.adj(k, c) : Integer(-a.adj(k, c));
      } else if (entry.cones.size() == 1) {
        const Integer side = dot(entry.normal, f.ray(cone[k]).vector);
        if (side >= 0)
          report.defects.push_back({WallDefectKind::kSameSide, it->first, {entry.first_cone, i}});
      }
      entry.cones.push_back(i);
    }
  }

  std::vector<std::size_t> parent(f.num_cones());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (const auto& [wall, entry] : walls) {
    ++report.walls_checked;
    if (entry.cones.size() == 1) {
      report.defects.push_back({WallDefectKind::kDangling, wall, entry.cones});
    } else if (entry.cones.size() > 2) {
      report.defects.push_back({WallDefectKind::kOverfull, wall, entry.cones});
    } else {
      const std::size_t a = find_root(parent, entry.cones[0]);
      const std::size_t b = find_root(parent, entry.cones[1]);
      if (a != b) parent[a] = b;
    }
  }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < f.num_cones(); ++i)
    if (usable[i]) roots.insert(find_root(parent, i));
  report.components = roots.size();
  if (roots.size() > 1) {
    std::vector<std::size_t> reps(roots.begin(), roots.end());
    report.defects.push_back({WallDefectKind::kDisconnected, {}, std::move(reps)});
  }
  if (f.num_cones() == 0)
    report.defects.push_back({WallDefectKind::kDisconnected, {}, {}});
  return report;
}

Fan project_fan(const Fan& f, int t) {
  if (t < 1 || t > f.stages())
    throw Error(ErrorCode::kInvalidArgument,
                "cannot project a " + std::to_string(f.stages()) + "-stage fan to " +
                    std::to_string(t) + " stages");
  const std::size_t keep = f.block_offset(t + 1);
  std::vector<int> dims(f.dims().begin(), f.dims().begin() + t);

  std::vector<Ray> rays;
  std::vector<std::int64_t> remap(f.rays().size(), -1);
  for (std::size_t i = 0; i < f.rays().size(); ++i) {
    const Ray& r = f.rays()[i];
    if (r.label.stage > t) continue;
    remap[i] = static_cast<std::int64_t>(rays.size());
    rays.push_back({r.label, IntVector(r.vector.begin(), r.vector.begin() + keep)});
  }
  Fan out(std::move(dims), std::move(rays));

  std::uint64_t divisor = 1;
  for (int p = t + 1; p <= f.stages(); ++p)
    divisor *= static_cast<std::uint64_t>(cone_count(std::span(&f.dims()[p - 1], 1)));

  std::map<std::pair<std::uint64_t, std::vector<RayIndex>>, bool> seen;
  for (std::size_t i = 0; i < f.num_cones(); ++i) {
    std::vector<RayIndex> cone;
    for (RayIndex r : f.cone(i))
      if (remap[r] >= 0) cone.push_back(static_cast<RayIndex>(remap[r]));
    std::sort(cone.begin(), cone.end());
    seen.try_emplace({f.tuple_index(i) / divisor, std::move(cone)}, true);
  }
  out.reserve_cones(seen.size(), keep);
  for (const auto& [key, unused] : seen) out.add_cone(key.second, key.first);
  return out;
}

namespace {

using VectorSet = std::vector<IntVector>;  // sorted

VectorSet sorted(VectorSet v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool zero_prefix(const IntVector& v, std::size_t k) {
  return std::all_of(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k),
                     [](const Integer& x) { return x == 0; });
}

SplitReport check_split(const Fan& total, const Fan& base, const Fan& expected, int s) {
  SplitReport rep;
  rep.stage = s;
  const std::size_t k = base.rank();
  const int fiber_dim = total.dims()[s - 1];

  rep.truncation_matches = total == expected;
  if (!rep.truncation_matches)
    rep.problems.push_back("projected fan differs from the fan of the truncated tower");

  // Rays in the kernel of the projection.
  std::vector<bool> in_fiber(total.rays().size());
  for (std::size_t i = 0; i < total.rays().size(); ++i)
    in_fiber[i] = zero_prefix(total.rays()[i].vector, k);

  // Base cones by their vector sets.
  std::map<VectorSet, std::size_t> base_cones;
  for (std::size_t i = 0; i < base.num_cones(); ++i) {
    VectorSet vs;
    for (RayIndex r : base.cone(i)) vs.push_back(base.ray(r).vector);
    base_cones.emplace(sorted(std::move(vs)), i);
  }
  rep.base_cones = base_cones.size();

  std::map<std::vector<RayIndex>, std::size_t> fiber_cones;  // index into fiber list
  std::map<std::size_t, std::vector<RayIndex>> lift_of_base;
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  bool fiber_sizes_ok = true;
  bool lifts_ok = true;
  bool join_ok = true;

  for (std::size_t i = 0; i < total.num_cones(); ++i) {
    std::vector<RayIndex> lift, fiber;
    for (RayIndex r : total.cone(i)) (in_fiber[r] ? fiber : lift).push_back(r);
    if (fiber.size() != static_cast<std::size_t>(fiber_dim) || lift.size() != k) {
      fiber_sizes_ok = false;
      join_ok = false;
      rep.problems.push_back("cone " + std::to_string(i) + " splits as " +
                             std::to_string(lift.size()) + " + " + std::to_string(fiber.size()));
      continue;
    }
    const std::size_t fiber_id = fiber_cones.try_emplace(fiber, fiber_cones.size()).first->second;

    VectorSet image;
    for (RayIndex r : lift) {
      const auto& v = total.ray(r).vector;
      image.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
    }
    image = sorted(std::move(image));
    if (std::adjacent_find(image.begin(), image.end()) != image.end()) {
      lifts_ok = false;
      rep.problems.push_back("lift in cone " + std::to_string(i) + " is not injective");
      continue;
    }
    auto it = base_cones.find(image);
    if (it == base_cones.end()) {
      lifts_ok = false;
      rep.problems.push_back("lift in cone " + std::to_string(i) + " projects onto no base cone");
      continue;
    }
    auto [lit, fresh] = lift_of_base.try_emplace(it->second, lift);
    if (!fresh && lit->second != lift) {
      lifts_ok = false;
      rep.problems.push_back("base cone " + std::to_string(it->second) + " has two lifts");
    }
    if (!pairs.emplace(it->second, fiber_id).second) {
      join_ok = false;
      rep.problems.push_back("cone " + std::to_string(i) + " repeats a (lift, fiber) pair");
    }
  }
  if (lift_of_base.size() != base_cones.size()) {
    lifts_ok = false;
    rep.problems.push_back(std::to_string(base_cones.size() - lift_of_base.size()) +
                           " base cones have no lift");
  }

  // Fiber cones against the permutohedral fan in the last block.
  std::set<VectorSet> found;
  for (const auto& [cone, id] : fiber_cones) {
    VectorSet vs;
    for (RayIndex r : cone) {
      const auto& v = total.ray(r).vector;
      vs.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    }
    found.insert(sorted(std::move(vs)));
  }
  const Fan model = perm_fan(fiber_dim);
  std::set<VectorSet> wanted;
  for (std::size_t i = 0; i < model.num_cones(); ++i) {
    VectorSet vs;
    for (RayIndex r : model.cone(i)) vs.push_back(model.ray(r).vector);
    wanted.insert(sorted(std::move(vs)));
  }
  rep.fiber_cones = found.size();
  rep.fiber_matches = fiber_sizes_ok && found == wanted;
  if (fiber_sizes_ok && found != wanted)
    rep.problems.push_back("fiber cones differ from the permutohedral fan of dimension " +
                           std::to_string(fiber_dim));

  if (pairs.size() != base_cones.size() * found.size()) join_ok = false;
  if (join_ok && total.num_cones() != base_cones.size() * found.size()) join_ok = false;
  if (!join_ok && rep.problems.empty())
    rep.problems.push_back("maximal cones are not all lift + fiber combinations");
  rep.lifts_unique = lifts_ok;
  rep.join_matches = join_ok;
  return rep;
}

}  // namespace

BundleReport verify_bundle_join(const Fan& f, const FlagBottTower& t) {
  require_valid(t);
  if (f.dims() != t.dims())
    throw Error(ErrorCode::kInvalidArgument, "fan and tower have different dimensions");
  BundleReport report;
  Fan total = f;
  for (int s = t.stages(); s >= 2; --s) {
    Fan base = project_fan(total, s - 1);
    const FlagBottTower truncated = t.truncated(s);
    Fan expected = build_fan(truncated, static_cast<std::uint64_t>(cone_count(truncated.dims())));
    report.splits.push_back(check_split(total, base, expected, s));
    total = std::move(base);
  }
  return report;
}

}  // namespace flagbott
