#include "flagbott/orbitfan.hpp"

#include <algorithm>

#include "flagbott/permfan.hpp"

namespace flagbott {

namespace {

void check_label(const FlagBottTower& t, int stage, const Subset& s) {
  if (stage < 1 || stage > t.stages())
    throw Error(ErrorCode::kInvalidRayLabel,
                "ray stage " + std::to_string(stage) + " out of range");
  if (s.ground() != t.dim(stage) + 1 || !s.is_proper_nonempty())
    throw Error(ErrorCode::kInvalidRayLabel,
                "ray label " + RayLabel{stage, s}.to_string() +
                    " is not a nonempty proper subset of [" +
                    std::to_string(t.dim(stage) + 1) + "]");
}

std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// Lexicographic rank of a permutation of [size] (Lehmer code).
std::uint64_t perm_rank(const Permutation& v) {
  const int size = v.size();
  std::uint64_t rank = 0;
  std::uint64_t used = 0;
  for (int i = 0; i < size; ++i) {
    const int x = v.images[i];
    int smaller = 0;
    for (int y = 1; y < x; ++y)
      if (!((used >> y) & 1u)) ++smaller;
    used |= std::uint64_t{1} << x;
    rank += static_cast<std::uint64_t>(smaller) * factorial(size - 1 - i);
  }
  return rank;
}

Permutation perm_unrank(int size, std::uint64_t rank) {
  std::vector<int> pool(size);
  for (int i = 0; i < size; ++i) pool[i] = i + 1;
  Permutation v;
  v.images.reserve(size);
  for (int i = 0; i < size; ++i) {
    const std::uint64_t f = factorial(size - 1 - i);
    const auto pick = static_cast<std::size_t>(rank / f);
    rank %= f;
    v.images.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return v;
}

void check_perm_tuple(const FlagBottTower& t, const PermTuple& v) {
  if (v.size() != static_cast<std::size_t>(t.stages()))
    throw Error(ErrorCode::kInvalidArgument, "permutation tuple has wrong length");
  for (int p = 1; p <= t.stages(); ++p)
    if (v[p - 1].size() != t.dim(p) + 1 || !v[p - 1].valid())
      throw Error(ErrorCode::kInvalidArgument,
                  "entry " + std::to_string(p) + " is not a permutation of [" +
                      std::to_string(t.dim(p) + 1) + "]");
}

std::string tuple_string(const PermTuple& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].to_string();
  return out + ")";
}

}  // namespace

IntVector ambient_ray_generator(const FlagBottTower& t, int stage, const Subset& s) {
  require_valid(t);
  check_label(t, stage, s);
  const int nl = t.dim(stage);
  const int d = nl + 1 - s.size();
  IntVector u(t.ambient_rank(), 0);
  const std::size_t own = t.ambient_block_offset(stage);

  // Columns (1-based) whose sums feed the later blocks.
  int first_col = 0;
  int last_col = 0;
  int sign = 0;
  if (!s.contains(nl + 1)) {
    for (int e : s.members()) u[own + e - 1] = 1;
    first_col = d + 1;
    last_col = nl + 1;
    sign = -1;
  } else {
    for (int e : s.complement().members()) u[own + e - 1] = -1;
    first_col = 1;
    last_col = d;
    sign = 1;
  }
  for (int p = stage + 1; p <= t.stages(); ++p) {
    const IntMatrix& a = t.a(p, stage);
    const std::size_t off = t.ambient_block_offset(p);
    for (std::size_t k = 0; k < a.rows(); ++k) {
      Integer sum = 0;
      for (int c = first_col; c <= last_col; ++c) sum += a(k, c - 1);
      u[off + k] += sign * sum;
    }
  }
  return u;
}

IntVector action_kernel_generator(const FlagBottTower& t, int stage) {
  require_valid(t);
  if (stage < 1 || stage > t.stages())
    throw Error(ErrorCode::kInvalidArgument, "stage " + std::to_string(stage) + " out of range");
  IntVector k(t.ambient_rank(), 0);
  const std::size_t own = t.ambient_block_offset(stage);
  for (int e = 0; e <= t.dim(stage); ++e) k[own + e] = 1;
  for (int p = stage + 1; p <= t.stages(); ++p) {
    const IntMatrix& a = t.a(p, stage);
    const std::size_t off = t.ambient_block_offset(p);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      Integer sum = 0;
      for (std::size_t c = 0; c < a.cols(); ++c) sum += a(r, c);
      k[off + r] = -sum;
    }
  }
  return k;
}

IntVector delete_last_coordinates(const FlagBottTower& t, std::span<const Integer> ambient) {
  if (ambient.size() != t.ambient_rank())
    throw Error(ErrorCode::kDimension, "expected a vector in Z^N");
  IntVector out;
  out.reserve(t.rank());
  for (int p = 1; p <= t.stages(); ++p) {
    const std::size_t off = t.ambient_block_offset(p);
    for (int e = 0; e < t.dim(p); ++e) out.push_back(ambient[off + e]);
  }
  return out;
}

IntVector reduce_to_effective(const FlagBottTower& t, IntVector ambient) {
  if (ambient.size() != t.ambient_rank())
    throw Error(ErrorCode::kDimension, "expected a vector in Z^N");
  // kappa_p is supported on blocks >= p and is 1 at (p, n_p+1), so clearing
  // the blocks in ascending order never disturbs an already cleared one.
  for (int p = 1; p <= t.stages(); ++p) {
    const Integer c = ambient[t.ambient_block_offset(p) + t.dim(p)];
    if (c == 0) continue;
    const IntVector k = action_kernel_generator(t, p);
    for (std::size_t i = 0; i < ambient.size(); ++i)
      if (k[i] != 0) ambient[i] -= c * k[i];
  }
  return delete_last_coordinates(t, ambient);
}

bool has_zero_last_rows(const FlagBottTower& t) {
  for (const auto& [key, a] : t.matrices()) {
    if (a.rows() == 0) continue;
    for (const auto& e : a.row(a.rows() - 1))
      if (e != 0) return false;
  }
  return true;
}

IntVector ray_generator(const FlagBottTower& t, int stage, const Subset& s) {
  return reduce_to_effective(t, ambient_ray_generator(t, stage, s));
}

std::vector<Ray> all_rays(const FlagBottTower& t) {
  require_valid(t);
  std::vector<Ray> rays;
  for (int l = 1; l <= t.stages(); ++l) {
    const int ground = t.dim(l) + 1;
    const std::uint64_t last = Subset::full(ground).bits();
    for (std::uint64_t bits = 1; bits < last; ++bits) {
      Subset s(ground, bits);
      rays.push_back({{l, s}, ray_generator(t, l, s)});
    }
  }
  return rays;
}

ChainTuple chain_tuple_of_perm_tuple(const PermTuple& v) {
  ChainTuple c;
  c.reserve(v.size());
  for (const auto& p : v) {
    if (!p.valid()) throw Error(ErrorCode::kInvalidArgument, "invalid permutation " + p.to_string());
    c.push_back(chain_of_permutation(p));
  }
  return c;
}

PermTuple perm_tuple_of_chain_tuple(const ChainTuple& c) {
  PermTuple v;
  v.reserve(c.size());
  for (const auto& chain : c) v.push_back(permutation_of_chain(chain));
  return v;
}

std::vector<RayLabel> maximal_cone(const FlagBottTower& t, const ChainTuple& c) {
  if (c.size() != static_cast<std::size_t>(t.stages()))
    throw Error(ErrorCode::kInvalidChain, "chain tuple has wrong length");
  std::vector<RayLabel> labels;
  labels.reserve(t.rank());
  for (int l = 1; l <= t.stages(); ++l) {
    const Chain& chain = c[l - 1];
    if (chain.n != t.dim(l) || !chain.valid())
      throw Error(ErrorCode::kInvalidChain,
                  "chain " + std::to_string(l) + " is not a proper chain in [" +
                      std::to_string(t.dim(l) + 1) + "]");
    for (const auto& s : chain.sets) labels.push_back({l, s});
  }
  std::sort(labels.begin(), labels.end());
  return labels;
}

Integer cone_count(std::span<const int> dims) {
  Integer count = 1;
  for (int n : dims)
    for (int i = 2; i <= n + 1; ++i) count *= i;
  return count;
}

std::uint64_t perm_tuple_index(const PermTuple& v) {
  std::uint64_t index = 0;
  for (const auto& p : v) index = index * factorial(p.size()) + perm_rank(p);
  return index;
}

PermTuple perm_tuple_at(std::span<const int> dims, std::uint64_t index) {
  PermTuple v(dims.size());
  for (std::size_t p = dims.size(); p-- > 0;) {
    const std::uint64_t radix = factorial(dims[p] + 1);
    v[p] = perm_unrank(dims[p] + 1, index % radix);
    index /= radix;
  }
  return v;
}

Fan build_fan(const FlagBottTower& t, std::uint64_t cone_cap) {
  require_valid(t);
  const Integer count = cone_count(t.dims());
  if (count > cone_cap) throw EnumerationTooLarge(count, cone_cap);
  const int m = t.stages();

  Fan fan(t.dims(), all_rays(t));

  // Per stage, the ray indices of each permutation's chain, in lex order.
  std::vector<std::vector<std::vector<RayIndex>>> stage_cones(m);
  RayIndex ray_offset = 0;
  for (int l = 1; l <= m; ++l) {
    for (const auto& v : all_permutations(t.dim(l) + 1)) {
      std::vector<RayIndex> idx;
      for (const auto& s : chain_of_permutation(v).sets)
        idx.push_back(ray_offset + static_cast<RayIndex>(s.bits() - 1));
      stage_cones[l - 1].push_back(std::move(idx));
    }
    ray_offset += static_cast<RayIndex>(Subset::full(t.dim(l) + 1).bits() - 1);
  }

  const auto total = static_cast<std::uint64_t>(count);
  fan.reserve_cones(total, t.rank());
  std::vector<std::size_t> digit(m, 0);
  for (std::uint64_t index = 0; index < total; ++index) {
    std::vector<RayIndex> cone;
    cone.reserve(t.rank());
    for (int l = 0; l < m; ++l) {
      const auto& part = stage_cones[l][digit[l]];
      cone.insert(cone.end(), part.begin(), part.end());
    }
    fan.add_cone(std::move(cone), index);
    // Odometer, last stage fastest: lexicographic on concatenated tuples.
    for (int l = m - 1; l >= 0; --l) {
      if (++digit[l] < stage_cones[l].size()) break;
      digit[l] = 0;
    }
  }
  return fan;
}

IntMatrix row_permutation_matrix(const Permutation& v) {
  const auto size = static_cast<std::size_t>(v.size());
  IntMatrix b(size, size);
  for (std::size_t i = 0; i < size; ++i) b(i, v.images[i] - 1) = 1;
  return b;
}

std::vector<IntMatrix> x_matrices(const FlagBottTower& t, const PermTuple& v, int j) {
  require_valid(t);
  check_perm_tuple(t, v);
  if (j < 1 || j > t.stages())
    throw Error(ErrorCode::kInvalidStagePair, "stage " + std::to_string(j) + " out of range");
  std::vector<IntMatrix> x(j > 1 ? j - 1 : 0);
  const IntMatrix bj = row_permutation_matrix(v[j - 1]);
  for (int l = j - 1; l >= 1; --l) {
    IntMatrix inner = bj * t.a(j, l);
    for (int p = l + 1; p < j; ++p) inner = inner + x[p - 1] * t.a(p, l);
    x[l - 1] = inner * row_permutation_matrix(v[l - 1]);
  }
  return x;
}

IntMatrix x_matrix(const FlagBottTower& t, const PermTuple& v, int j, int l) {
  if (l < 1 || l >= j || j > t.stages())
    throw Error(ErrorCode::kInvalidStagePair,
                "X^(" + std::to_string(j) + ")_" + std::to_string(l) + " needs 1 <= l < j <= m");
  return x_matrices(t, v, j)[l - 1];
}

const IntVector& WeightSystem::weight(int j, int i) const {
  std::size_t row = 0;
  for (int p = 1; p < j; ++p) row += dims[p - 1];
  return projected.at(row + i - 1);
}

IntMatrix WeightSystem::matrix() const {
  const std::size_t n = projected.size();
  IntMatrix w(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) w(r, c) = projected[r][c];
  return w;
}

WeightSystem weights_at(const FlagBottTower& t, const PermTuple& v) {
  require_valid(t);
  check_perm_tuple(t, v);
  WeightSystem ws;
  ws.at = v;
  ws.dims = t.dims();
  const int m = t.stages();
  for (int j = 1; j <= m; ++j) {
    std::vector<IntMatrix> blocks = x_matrices(t, v, j);
    blocks.push_back(row_permutation_matrix(v[j - 1]));
    for (int p = j + 1; p <= m; ++p) blocks.emplace_back(t.dim(j) + 1, t.dim(p) + 1);
    IntMatrix rows = hstack(blocks);
    for (std::size_t i = 0; i + 1 < rows.rows(); ++i) {
      IntVector w(rows.cols());
      for (std::size_t c = 0; c < rows.cols(); ++c) w[c] = rows(i + 1, c) - rows(i, c);
      ws.projected.push_back(delete_last_coordinates(t, w));
    }
    ws.ambient_rows.push_back(std::move(rows));
  }
  return ws;
}

std::vector<IntVector> derive_rays_from_weights(const FlagBottTower& t, const PermTuple& v) {
  const WeightSystem ws = weights_at(t, v);
  IntMatrix inv;
  try {
    inv = unimodular_inverse(ws.matrix());
  } catch (const NotUnimodular& e) {
    throw Error(ErrorCode::kOracleFailure,
                "weight matrix at " + tuple_string(v) + " has det " +
                    e.determinant().str());
  }
  std::vector<IntVector> rays(inv.cols(), IntVector(inv.rows()));
  for (std::size_t c = 0; c < inv.cols(); ++c)
    for (std::size_t r = 0; r < inv.rows(); ++r) rays[c][r] = inv(r, c);
  std::sort(rays.begin(), rays.end());
  return rays;
}

Permutation special_permutation(const Subset& s) {
  Permutation v;
  for (int e : s.complement().members()) v.images.push_back(e);
  for (int e : s.members()) v.images.push_back(e);
  return v;
}

PairingReport verify_pairing_identity(const FlagBottTower& t) {
  require_valid(t);
  PairingReport report;
  const int m = t.stages();
  for (int l = 1; l <= m; ++l) {
    const int ground = t.dim(l) + 1;
    const std::uint64_t last = Subset::full(ground).bits();
    for (std::uint64_t bits = 1; bits < last; ++bits) {
      const Subset s(ground, bits);
      const int d = ground - s.size();
      PermTuple v;
      for (int p = 1; p <= m; ++p) v.push_back(Permutation::identity(t.dim(p) + 1));
      v[l - 1] = special_permutation(s);
      const WeightSystem ws = weights_at(t, v);
      const IntVector u = ray_generator(t, l, s);
      ++report.labels_checked;
      for (int j = 1; j <= m; ++j) {
        for (int i = 1; i <= t.dim(j); ++i) {
          const Integer value = dot(ws.weight(j, i), u);
          const Integer expected = (j == l && i == d) ? 1 : 0;
          ++report.pairings_checked;
          if (value != expected) report.violations.push_back({{l, s}, j, i, value, expected});
        }
      }
    }
  }
  return report;
}

OracleReport verify_oracle(const FlagBottTower& t, const Fan& f) {
  require_valid(t);
  if (f.dims() != t.dims())
    throw Error(ErrorCode::kInvalidArgument, "fan and tower have different dimensions");
  OracleReport report;
  for (std::size_t i = 0; i < f.num_cones(); ++i) {
    ++report.cones_checked;
    const std::uint64_t index = f.tuple_index(i);
    std::vector<IntVector> formula;
    for (RayIndex r : f.cone(i)) formula.push_back(f.ray(r).vector);
    std::sort(formula.begin(), formula.end());
    try {
      auto oracle = derive_rays_from_weights(t, perm_tuple_at(t.dims(), index));
      if (oracle != formula) report.mismatches.push_back({index, std::move(oracle), formula, {}});
    } catch (const Error& e) {
      report.mismatches.push_back({index, {}, formula, e.what()});
    }
  }
  return report;
}

}  // namespace flagbott
