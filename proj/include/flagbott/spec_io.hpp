#pragma once

// Tower specs (JSON) and the FANBOTT fan interchange format.
//
// Spec:
//   { "dims": [n_1, ..., n_m],
//     "A": { "j,l": [[row], ...], ... } }
// Stage keys are 1-based; every (j, l) with l < j is required. Entries are
// JSON integers, or decimal strings for values outside 64 bits.
//
// FANBOTT, version 1 (newline-terminated lines, decimal integers only):
//   FANBOTT 1
//   dims n_1 ... n_m
//   RAYS k
//   l {s_1,s_2,...} : c_1 ... c_n        (k lines)
//   MAXCONES q
//   i_1 i_2 ... i_n                      (q lines, 0-based, ascending)
// Cones appear in lexicographic order of their permutation tuples.

#include <iosfwd>
#include <string>
#include <string_view>

#include "flagbott/fan.hpp"
#include "flagbott/tower.hpp"

namespace flagbott {

// Throws ErrorCode::kParse with a location ("line 3, column 7" for syntax,
// a JSON pointer such as "/A/2,1/0" for schema problems). Does not validate
// the tower; call validate() for that.
FlagBottTower parse_tower_json(std::string_view text);
FlagBottTower load_tower_json(const std::string& path);

std::string tower_to_json(const FlagBottTower& t);

std::string export_fanbott(const Fan& f);
void write_fanbott(const Fan& f, const std::string& path);
// Cone i of the result gets tuple index i.
Fan parse_fanbott(std::string_view text);

// "index stage {S} : coordinates", one ray per line.
std::string format_ray_table(const Fan& f);

}  // namespace flagbott
