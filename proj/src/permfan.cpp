#include "flagbott/permfan.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace flagbott {

Subset::Subset(int ground, std::uint64_t bits) : ground_(ground), bits_(bits) {
  if (ground < 0 || ground > kMaxGround)
    throw Error(ErrorCode::kInvalidDimension,
                "ground set size " + std::to_string(ground) + " unsupported");
  if (ground < 64 && (bits >> ground) != 0)
    throw Error(ErrorCode::kInvalidArgument, "subset has elements outside ground set");
}

Subset Subset::of(int ground, std::initializer_list<int> members) {
  std::uint64_t bits = 0;
  for (int s : members) {
    if (s < 1 || s > ground)
      throw Error(ErrorCode::kInvalidArgument,
                  "element " + std::to_string(s) + " outside [" +
                      std::to_string(ground) + "]");
    bits |= std::uint64_t{1} << (s - 1);
  }
  return Subset(ground, bits);
}

Subset Subset::full(int ground) {
  return Subset(ground, ground == 0 ? 0 : (~std::uint64_t{0} >> (64 - ground)));
}

int Subset::size() const { return std::popcount(bits_); }

bool Subset::is_proper_nonempty() const {
  return bits_ != 0 && bits_ != full(ground_).bits_;
}

Subset Subset::complement() const {
  return Subset(ground_, full(ground_).bits_ & ~bits_);
}

std::vector<int> Subset::members() const {
  std::vector<int> out;
  for (int s = 1; s <= ground_; ++s)
    if (contains(s)) out.push_back(s);
  return out;
}

bool Subset::is_strict_subset_of(const Subset& other) const {
  return (bits_ & ~other.bits_) == 0 && bits_ != other.bits_;
}

std::string Subset::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int s : members()) {
    if (!first) out += ',';
    out += std::to_string(s);
    first = false;
  }
  return out + "}";
}

Permutation Permutation::identity(int size) {
  Permutation p;
  p.images.resize(size);
  std::iota(p.images.begin(), p.images.end(), 1);
  return p;
}

bool Permutation::valid() const {
  std::vector<bool> seen(images.size() + 1, false);
  for (int x : images) {
    if (x < 1 || x > size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

Permutation Permutation::times_adjacent(int i) const {
  if (i < 1 || i >= size())
    throw Error(ErrorCode::kInvalidArgument,
                "transposition s_" + std::to_string(i) + " out of range");
  Permutation p = *this;
  std::swap(p.images[i - 1], p.images[i]);
  return p;
}

std::string Permutation::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(images[i]);
  }
  return out + ")";
}

bool Chain::valid() const {
  if (n < 1 || sets.size() != static_cast<std::size_t>(n)) return false;
  const Subset ground = Subset::full(n + 1);
  for (int p = 1; p <= n; ++p) {
    const Subset& s = sets[p - 1];
    if (s.ground() != n + 1 || s.size() != p) return false;
    if (p > 1 && !sets[p - 2].is_strict_subset_of(s)) return false;
  }
  return sets.back().is_strict_subset_of(ground);
}

std::string Chain::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (i) out += ',';
    out += sets[i].to_string();
  }
  return out + ")";
}

IntVector perm_ray_vector(int n, const Subset& s) {
  if (s.ground() != n + 1 || !s.is_proper_nonempty())
    throw Error(ErrorCode::kInvalidRayLabel,
                "ray label " + s.to_string() + " is not a nonempty proper subset of [" +
                    std::to_string(n + 1) + "]");
  IntVector u(n, 0);
  if (!s.contains(n + 1)) {
    for (int e = 1; e <= n; ++e)
      if (s.contains(e)) u[e - 1] = 1;
  } else {
    for (int e = 1; e <= n; ++e)
      if (!s.contains(e)) u[e - 1] = -1;
  }
  return u;
}

Chain chain_of_permutation(const Permutation& v) {
  const int n = v.size() - 1;
  Chain c{n, {}};
  c.sets.reserve(n);
  std::uint64_t bits = 0;
  for (int p = 1; p <= n; ++p) {
    bits |= std::uint64_t{1} << (v(n + 2 - p) - 1);
    c.sets.emplace_back(n + 1, bits);
  }
  return c;
}

Permutation permutation_of_chain(const Chain& c) {
  if (!c.valid()) throw Error(ErrorCode::kInvalidChain, "malformed chain " + c.to_string());
  const int n = c.n;
  Permutation v;
  v.images.resize(n + 1);
  std::uint64_t prev = 0;
  for (int p = 1; p <= n; ++p) {
    const std::uint64_t added = c.sets[p - 1].bits() & ~prev;
    v.images[n + 1 - p] = std::countr_zero(added) + 1;
    prev = c.sets[p - 1].bits();
  }
  const std::uint64_t rest = Subset::full(n + 1).bits() & ~prev;
  v.images[0] = std::countr_zero(rest) + 1;
  return v;
}

std::vector<Permutation> all_permutations(int size) {
  std::vector<Permutation> out;
  Permutation p = Permutation::identity(size);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.images.begin(), p.images.end()));
  return out;
}

Fan perm_fan(int n) {
  if (n < 1)
    throw Error(ErrorCode::kInvalidDimension,
                "permutohedral fan needs n >= 1, got " + std::to_string(n));
  if (n + 1 > Subset::kMaxGround)
    throw Error(ErrorCode::kInvalidDimension, "n too large for subset masks");

  const std::uint64_t last = Subset::full(n + 1).bits();
  std::vector<Ray> rays;
  rays.reserve(last - 1);
  for (std::uint64_t bits = 1; bits < last; ++bits) {
    Subset s(n + 1, bits);
    rays.push_back({{1, s}, perm_ray_vector(n, s)});
  }
  Fan fan({n}, std::move(rays));

  // Ray index of mask b is b - 1.
  const auto perms = all_permutations(n + 1);
  fan.reserve_cones(perms.size(), n);
  std::uint64_t index = 0;
  for (const auto& v : perms) {
    std::vector<RayIndex> cone;
    cone.reserve(n);
    for (const auto& s : chain_of_permutation(v).sets)
      cone.push_back(static_cast<RayIndex>(s.bits() - 1));
    fan.add_cone(std::move(cone), index++);
  }
  return fan;
}

}  // namespace flagbott
