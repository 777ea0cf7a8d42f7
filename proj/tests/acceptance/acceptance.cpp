// Acceptance suite: one line per criterion, exact comparisons, wall-clock
// limits. Exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include "flagbott/fancheck.hpp"
#include "flagbott/orbitfan.hpp"
#include "flagbott/permfan.hpp"
#include "flagbott/spec_io.hpp"
#include "support/towers.hpp"

namespace fb = flagbott;
using fb::Integer;
using fb::IntVector;
using fb::Subset;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects the first failure message; later checks still run.
class Check {
 public:
  void expect(bool cond, const std::string& what) {
    if (!cond && out_.ok) {
      out_.ok = false;
      out_.detail = what;
    }
  }
  void note(std::string s) {
    if (out_.ok) out_.detail = std::move(s);
  }
  Outcome result() const { return out_; }

 private:
  Outcome out_;
};

int failures = 0;

void run(int number, double limit_s, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < limit_s;
  const bool pass = out.ok && in_time;
  if (!pass) ++failures;
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.3f s / %.1f s", secs, limit_s);
  std::cout << "criterion " << number << ": " << (pass ? "PASS" : "FAIL") << "  " << title << "  ["
            << timing << "]";
  if (!in_time) std::cout << "  time limit exceeded";
  if (!out.detail.empty()) std::cout << "  " << out.detail;
  std::cout << std::endl;
}

IntVector ray_of(const fb::Fan& f, int stage, std::initializer_list<int> s) {
  const auto idx = f.find_ray({stage, Subset::of(f.dims()[stage - 1] + 1, s)});
  if (!idx) throw std::runtime_error("missing ray");
  return f.ray(*idx).vector;
}

using Label = std::pair<int, std::uint64_t>;

std::set<std::set<Label>> cone_label_sets(const fb::Fan& f) {
  std::set<std::set<Label>> out;
  for (std::size_t i = 0; i < f.num_cones(); ++i) {
    std::set<Label> c;
    for (auto r : f.cone(i)) c.emplace(f.ray(r).label.stage, f.ray(r).label.set.bits());
    out.insert(c);
  }
  return out;
}

std::vector<fb::FlagBottTower> goldens() {
  return {fb::testing::two_stage(), fb::testing::three_stage()};
}

std::vector<fb::FlagBottTower> goldens_and_population() {
  auto towers = goldens();
  for (auto& t : fb::testing::standard_population()) towers.push_back(std::move(t));
  return towers;
}

Outcome criterion1() {
  Check c;
  const fb::Fan f = fb::build_fan(fb::testing::two_stage(1, 2));
  c.expect(f.rays().size() == 8, "ray count " + std::to_string(f.rays().size()));
  const std::map<std::pair<int, std::vector<int>>, IntVector> want = {
      {{1, {1}}, {1, 0, 0}},     {{1, {2}}, {0, 1, 0}},     {{1, {3}}, {-1, -1, 3}},
      {{1, {1, 2}}, {1, 1, -2}}, {{1, {2, 3}}, {-1, 0, 1}}, {{1, {1, 3}}, {0, -1, 1}},
      {{2, {1}}, {0, 0, 1}},     {{2, {2}}, {0, 0, -1}}};
  for (const auto& [label, vec] : want) {
    std::uint64_t bits = 0;
    for (int e : label.second) bits |= std::uint64_t{1} << (e - 1);
    const auto idx = f.find_ray({label.first, Subset(f.dims()[label.first - 1] + 1, bits)});
    c.expect(idx && f.ray(*idx).vector == vec, "ray mismatch");
  }
  auto b = [](std::initializer_list<int> s, int g) { return Subset::of(g, s).bits(); };
  std::set<std::set<Label>> cones;
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> chains = {
      {b({1}, 3), b({1, 2}, 3)}, {b({1}, 3), b({1, 3}, 3)}, {b({2}, 3), b({1, 2}, 3)},
      {b({2}, 3), b({2, 3}, 3)}, {b({3}, 3), b({1, 3}, 3)}, {b({3}, 3), b({2, 3}, 3)}};
  for (int top : {1, 2})
    for (const auto& [s1, s2] : chains) cones.insert({{1, s1}, {1, s2}, {2, b({top}, 2)}});
  c.expect(f.num_cones() == 12, "cone count " + std::to_string(f.num_cones()));
  c.expect(cone_label_sets(f) == cones, "cone label sets differ");
  c.note("8 rays, 12 cones");
  return c.result();
}

Outcome criterion2() {
  Check c;
  const fb::FlagBottTower t = fb::testing::three_stage();
  const fb::Fan f = fb::build_fan(t);
  c.expect(fb::all_rays(t).size() == 14, "ray count");
  const std::vector<std::tuple<int, std::vector<int>, IntVector>> want = {
      {1, {1}, {1, 0, 0, 0, 0}},      {1, {2}, {0, 1, 0, 0, 0}},
      {1, {3}, {-1, -1, 3, 7, 11}},   {1, {1, 2}, {1, 1, -2, -4, -6}},
      {1, {2, 3}, {-1, 0, 1, 3, 5}},  {1, {1, 3}, {0, -1, 1, 3, 5}},
      {2, {1}, {0, 0, 1, 0, 0}},      {2, {2}, {0, 0, 0, 1, 0}},
      {2, {3}, {0, 0, -1, -1, 15}},   {2, {1, 2}, {0, 0, 1, 1, -8}},
      {2, {2, 3}, {0, 0, -1, 0, 7}},  {2, {1, 3}, {0, 0, 0, -1, 7}},
      {3, {1}, {0, 0, 0, 0, 1}},      {3, {2}, {0, 0, 0, 0, -1}}};
  for (const auto& [stage, set, vec] : want) {
    std::uint64_t bits = 0;
    for (int e : set) bits |= std::uint64_t{1} << (e - 1);
    c.expect(fb::ray_generator(t, stage, Subset(t.dim(stage) + 1, bits)) == vec,
             "ray u^" + std::to_string(stage) + " mismatch");
  }
  // Cone ({2} c {2,3}, {2} c {1,2}, {2}).
  fb::IntMatrix m(5, 5);
  const IntVector cols[] = {ray_of(f, 1, {2}), ray_of(f, 1, {2, 3}), ray_of(f, 2, {2}),
                            ray_of(f, 2, {1, 2}), ray_of(f, 3, {2})};
  for (std::size_t k = 0; k < 5; ++k) {
    const IntVector& u = cols[k];
    for (std::size_t r = 0; r < 5; ++r) m(r, k) = u[r];
  }
  const fb::IntMatrix printed{{0, -1, 0, 0, 0}, {1, 0, 0, 0, 0}, {0, 1, 0, 1, 0},
                              {0, 3, 1, 1, 0},  {0, 5, 0, -8, -1}};
  c.expect(m == printed, "5x5 matrix differs");
  c.expect(fb::det(m) == 1, "det = " + fb::det(m).str());
  c.note("14 rays, det 1");
  return c.result();
}

Outcome criterion3() {
  Check c;
  std::size_t fact = 1;
  for (int n = 1; n <= 4; ++n) {
    fact *= static_cast<std::size_t>(n + 1);
    const fb::Fan f = fb::perm_fan(n);
    c.expect(f.rays().size() == (std::size_t{1} << (n + 1)) - 2, "ray count n=" + std::to_string(n));
    c.expect(f.num_cones() == fact, "cone count n=" + std::to_string(n));
  }
  const fb::Fan f2 = fb::perm_fan(2);
  c.expect(ray_of(f2, 1, {1}) == IntVector{1, 0} && ray_of(f2, 1, {2}) == IntVector{0, 1} &&
               ray_of(f2, 1, {1, 2}) == IntVector{1, 1} && ray_of(f2, 1, {2, 3}) == IntVector{-1, 0} &&
               ray_of(f2, 1, {1, 3}) == IntVector{0, -1} && ray_of(f2, 1, {3}) == IntVector{-1, -1},
           "n=2 rays differ from the hexagonal fan");
  auto b = [](std::initializer_list<int> s) { return Subset::of(3, s).bits(); };
  const std::set<std::set<Label>> figure = {
      {{1, b({2})}, {1, b({1, 2})}}, {{1, b({1})}, {1, b({1, 2})}}, {{1, b({1})}, {1, b({1, 3})}},
      {{1, b({3})}, {1, b({1, 3})}}, {{1, b({3})}, {1, b({2, 3})}}, {{1, b({2})}, {1, b({2, 3})}}};
  c.expect(cone_label_sets(f2) == figure, "n=2 cones differ from the hexagonal fan");
  c.note("n = 1..4");
  return c.result();
}

Outcome criterion4() {
  Check c;
  std::size_t pairings = 0, towers = 0;
  for (const auto& t : goldens_and_population()) {
    const auto rep = fb::verify_pairing_identity(t);
    c.expect(rep.ok(), "violation on " + fb::testing::describe(t));
    pairings += rep.pairings_checked;
    ++towers;
  }
  c.note(std::to_string(towers) + " towers, " + std::to_string(pairings) + " pairings");
  return c.result();
}

Outcome criterion5() {
  Check c;
  auto towers = goldens();
  for (auto& t : fb::testing::oracle_population()) {
    c.expect(t.stages() <= 2 && t.dim(1) <= 3 && (t.stages() < 2 || t.dim(2) <= 3),
             "oracle population out of range");
    towers.push_back(std::move(t));
  }
  std::size_t cones = 0;
  for (const auto& t : towers) {
    const auto rep = fb::verify_oracle(t, fb::build_fan(t));
    c.expect(rep.ok(), "mismatch on " + fb::testing::describe(t));
    cones += rep.cones_checked;
  }
  c.note(std::to_string(towers.size()) + " towers, " + std::to_string(cones) + " cones");
  return c.result();
}

Outcome criterion6() {
  Check c;
  std::size_t cones = 0, walls = 0;
  for (const auto& t : goldens_and_population()) {
    const fb::Fan f = fb::build_fan(t);
    c.expect(fb::is_smooth(f).ok(), "not smooth: " + fb::testing::describe(t));
    const auto rep = fb::is_complete_simplicial(f);
    c.expect(rep.ok(), "not complete: " + fb::testing::describe(t));
    cones += rep.cones_checked;
    walls += rep.walls_checked;
  }
  c.note(std::to_string(cones) + " cones, " + std::to_string(walls) + " walls");
  return c.result();
}

Outcome criterion7() {
  Check c;
  std::size_t splits = 0;
  for (const auto& t : goldens_and_population()) {
    const fb::Fan f = fb::build_fan(t);
    const auto rep = fb::verify_bundle_join(f, t);
    c.expect(rep.ok(), "bundle structure fails on " + fb::testing::describe(t));
    c.expect(rep.splits.size() == static_cast<std::size_t>(t.stages() - 1), "split count");
    splits += rep.splits.size();
    for (int s = 1; s <= t.stages(); ++s)
      c.expect(fb::project_fan(f, s) == fb::build_fan(t.truncated(s)),
               "projection to " + std::to_string(s) + " stages differs on " + fb::testing::describe(t));
  }
  c.note(std::to_string(splits) + " splits");
  return c.result();
}

Outcome criterion8() {
  Check c;
  for (int n = 1; n <= 4; ++n)
    c.expect(fb::build_fan(fb::FlagBottTower({n})) == fb::perm_fan(n), "m=1 differs, n=" + std::to_string(n));
  for (const std::vector<int>& dims : {std::vector<int>{2, 1}, {1, 2, 2}, {3, 2}}) {
    const fb::Fan f = fb::build_fan(fb::FlagBottTower(dims));
    std::vector<fb::Fan> factors;
    for (int d : dims) factors.push_back(fb::perm_fan(d));
    for (const auto& r : f.rays()) {
      const fb::Fan& g = factors[r.label.stage - 1];
      IntVector expect(f.rank(), 0);
      const IntVector& local = g.ray(*g.find_ray({1, r.label.set})).vector;
      std::copy(local.begin(), local.end(), expect.begin() + static_cast<std::ptrdiff_t>(f.block_offset(r.label.stage)));
      c.expect(r.vector == expect, "product ray differs");
    }
    std::set<std::set<Label>> product{{}};
    for (std::size_t s = 0; s < dims.size(); ++s) {
      std::set<std::set<Label>> next;
      for (const auto& partial : product)
        for (const auto& cone : cone_label_sets(factors[s])) {
          auto joined = partial;
          for (const auto& [stage, bits] : cone) joined.emplace(static_cast<int>(s) + 1, bits);
          next.insert(joined);
        }
      product = std::move(next);
    }
    c.expect(cone_label_sets(f) == product, "product cones differ");
  }
  c.note("m = 1 and zero matrices");
  return c.result();
}

Outcome criterion9() {
  Check c;
  std::size_t rejected = 0;
  for (int size = 2; size <= 4; ++size)
    for (const auto& v : fb::all_permutations(size)) {
      fb::RationalMatrix g(size, size);
      for (int i = 1; i <= size; ++i) g(i - 1, v(i) - 1) = 1;
      c.expect(!fb::is_generic_matrix(g).generic, "permutation matrix accepted");
      ++rejected;
    }
  c.expect(fb::is_generic_matrix(fb::to_rational(fb::IntMatrix{{1, 1, 1}, {1, 2, 4}, {1, 3, 9}})).generic,
           "Vandermonde rejected");
  std::size_t sampled = 0;
  for (int n = 1; n <= 4; ++n)
    for (std::uint64_t seed = 0; seed < 20; ++seed, ++sampled)
      c.expect(fb::is_generic_matrix(fb::sample_generic(n, 2 + static_cast<int>(seed % 4), seed)).generic,
               "sample_generic returned a non-generic matrix");
  c.note(std::to_string(rejected) + " permutation matrices, " + std::to_string(sampled) + " samples");
  return c.result();
}

Outcome criterion10() {
  Check c;
  std::mt19937_64 rng(333);
  const fb::FlagBottTower t = fb::testing::random_tower(rng, {3, 3, 3}, 5);
  const fb::Fan f = fb::build_fan(t);
  c.expect(f.rays().size() == 42, "ray count " + std::to_string(f.rays().size()));
  c.expect(f.num_cones() == 13824, "cone count " + std::to_string(f.num_cones()));
  c.expect(fb::is_smooth(f).ok(), "not smooth");
  c.note("42 rays, 13824 cones");
  return c.result();
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion11(const std::string& cli, const std::string& data) {
  Check c;
  const auto dir = std::filesystem::temp_directory_path() / "flagbott_acceptance";
  std::filesystem::create_directories(dir);
  for (const char* spec : {"two_stage.json", "three_stage.json"}) {
    std::string first;
    for (int run = 0; run < 2; ++run) {
      const auto out = dir / ("run" + std::to_string(run) + ".fan");
      std::filesystem::remove(out);
      const std::string cmd = "\"" + cli + "\" export \"" + data + "/" + spec + "\" --out \"" +
                              out.string() + "\"";
      c.expect(std::system(cmd.c_str()) == 0, std::string("export failed for ") + spec);
      const std::string text = read_file(out);
      c.expect(!text.empty(), "empty export");
      if (run == 0)
        first = text;
      else
        c.expect(text == first, std::string("exports differ for ") + spec);
    }
    c.expect(first == fb::export_fanbott(fb::build_fan(fb::load_tower_json(data + "/" + spec))),
             "CLI export differs from the library export");
  }
  std::filesystem::remove_all(dir);
  c.note("two specs, two runs each");
  return c.result();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: flagbott_acceptance <flagbott cli> <test data dir>\n";
    return 2;
  }
  const std::string cli = argv[1], data = argv[2];
  run(1, 0.1, "two-stage golden fan", criterion1);
  run(2, 0.1, "three-stage golden rays and determinant", criterion2);
  run(3, 1.0, "permutohedral counts and the n=2 fan", criterion3);
  run(4, 10.0, "pairing identity, goldens + 100 random towers", criterion4);
  run(5, 10.0, "weight oracle, goldens + 25 random towers", criterion5);
  run(6, 30.0, "smooth and complete on the population", criterion6);
  run(7, 30.0, "bundle/join structure and projections", criterion7);
  run(8, 1.0, "reductions to permutohedral fans", criterion8);
  run(9, 1.0, "genericity", criterion9);
  run(10, 5.0, "scale: dims (3,3,3)", criterion10);
  run(11, 10.0, "byte-identical exports", [&] { return criterion11(cli, data); });
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
