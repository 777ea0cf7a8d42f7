#pragma once

// Structural checks on simplicial fans. Every check returns a report listing
// each violation; none of them stops at the first problem.

#include <cstdint>
#include <string>
#include <vector>

#include "flagbott/fan.hpp"
#include "flagbott/tower.hpp"

namespace flagbott {

struct SmoothnessFailure {
  std::size_t cone = 0;
  Integer det;
};

struct SmoothnessReport {
  std::size_t cones_checked = 0;
  std::vector<SmoothnessFailure> failures;

  bool ok() const { return failures.empty(); }
};

// |det| = 1 for the ray matrix of every maximal cone. Throws NotSimplicial
// when a cone does not have exactly rank() rays.
SmoothnessReport is_smooth(const Fan& f);

enum class WallDefectKind {
  kDegenerateCone,  // cone does not span R^n
  kDangling,        // wall belongs to one maximal cone only
  kOverfull,        // wall belongs to more than two maximal cones
  kSameSide,        // the two opposite rays are not strictly separated
  kDisconnected,    // wall-adjacency graph has several components
};

const char* to_string(WallDefectKind kind);

struct WallDefect {
  WallDefectKind kind;
  std::vector<RayIndex> wall;
  std::vector<std::size_t> cones;
};

struct CompletenessReport {
  std::size_t cones_checked = 0;
  std::size_t walls_checked = 0;
  std::size_t components = 0;
  std::vector<WallDefect> defects;

  bool ok() const { return defects.empty(); }
};

// Wall test for full-dimensional simplicial fans: every facet of a maximal
// cone lies in exactly two maximal cones whose opposite rays sit strictly on
// opposite sides of the facet's hyperplane, and the adjacency graph is
// connected. Passing implies the fan covers R^n.
CompletenessReport is_complete_simplicial(const Fan& f);

// Image of f under the projection onto the first n_1 + ... + n_t coordinates:
// rays of stages <= t and the truncated cones, deduplicated. Throws
// InvalidArgument unless 1 <= t <= stages().
Fan project_fan(const Fan& f, int t);

struct SplitReport {
  int stage = 0;                     // fiber stage; the base is stages < stage
  std::size_t base_cones = 0;
  std::size_t fiber_cones = 0;
  bool fiber_matches = false;        // cones inside the fiber = permutohedral fan
  bool lifts_unique = false;         // each base cone has exactly one lift
  bool join_matches = false;         // cones = lifts + fiber cones, bijectively
  bool truncation_matches = false;   // projected fan = fan of truncated tower
  std::vector<std::string> problems;

  bool ok() const {
    return fiber_matches && lifts_unique && join_matches && truncation_matches;
  }
};

struct BundleReport {
  std::vector<SplitReport> splits;  // one per stage split, top stage first

  bool ok() const {
    for (const auto& s : splits)
      if (!s.ok()) return false;
    return true;
  }
};

// Fiber-bundle structure at every split F_s -> F_{s-1}, s = m .. 2. For m = 1
// there is nothing to split and the report is empty.
BundleReport verify_bundle_join(const Fan& f, const FlagBottTower& t);

}  // namespace flagbott
