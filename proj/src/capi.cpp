#include "flagbott/flagbott.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "flagbott/fancheck.hpp"
#include "flagbott/orbitfan.hpp"
#include "flagbott/spec_io.hpp"

struct fb_tower {
  flagbott::FlagBottTower tower;
};

struct fb_fan {
  flagbott::Fan fan;
};

namespace {

using namespace flagbott;

thread_local std::string last_error;

constexpr std::size_t kMaxListed = 20;

fb_status status_of(ErrorCode code) { return static_cast<fb_status>(static_cast<int>(code) + 1); }

fb_status fail(fb_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <class F>
fb_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FB_ERR_INTERNAL, e.what());
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string vector_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + ")";
}

void list_more(std::ostream& os, std::size_t total) {
  if (total > kMaxListed) os << "  ... " << total - kMaxListed << " more\n";
}

bool report_smooth(std::ostream& os, const Fan& f) {
  const auto rep = is_smooth(f);
  os << "smooth: " << (rep.ok() ? "PASS" : "FAIL") << " (" << rep.cones_checked << " cones)\n";
  for (std::size_t i = 0; i < rep.failures.size() && i < kMaxListed; ++i)
    os << "  cone " << rep.failures[i].cone << ": det = " << rep.failures[i].det.str() << "\n";
  list_more(os, rep.failures.size());
  return rep.ok();
}

bool report_complete(std::ostream& os, const Fan& f) {
  const auto rep = is_complete_simplicial(f);
  os << "complete: " << (rep.ok() ? "PASS" : "FAIL") << " (" << rep.walls_checked << " walls, "
     << rep.components << " component" << (rep.components == 1 ? "" : "s") << ")\n";
  for (std::size_t i = 0; i < rep.defects.size() && i < kMaxListed; ++i) {
    const auto& d = rep.defects[i];
    os << "  " << to_string(d.kind);
    if (!d.wall.empty()) {
      os << " {";
      for (std::size_t k = 0; k < d.wall.size(); ++k) os << (k ? "," : "") << d.wall[k];
      os << "}";
    }
    os << " cones";
    for (auto c : d.cones) os << " " << c;
    os << "\n";
  }
  list_more(os, rep.defects.size());
  return rep.ok();
}

bool report_pairing(std::ostream& os, const FlagBottTower& t) {
  const auto rep = verify_pairing_identity(t);
  os << "pairing: " << (rep.ok() ? "PASS" : "FAIL") << " (" << rep.labels_checked << " labels, "
     << rep.pairings_checked << " pairings)\n";
  for (std::size_t i = 0; i < rep.violations.size() && i < kMaxListed; ++i) {
    const auto& v = rep.violations[i];
    os << "  u " << v.label.to_string() << " with w^" << v.weight_stage << "_" << v.weight_index
       << ": got " << v.value.str() << ", expected " << v.expected.str() << "\n";
  }
  list_more(os, rep.violations.size());
  return rep.ok();
}

bool report_bundle(std::ostream& os, const FlagBottTower& t, const Fan& f) {
  const auto rep = verify_bundle_join(f, t);
  os << "bundle: " << (rep.ok() ? "PASS" : "FAIL") << " (" << rep.splits.size() << " split"
     << (rep.splits.size() == 1 ? "" : "s") << ")\n";
  for (const auto& s : rep.splits) {
    if (s.ok()) continue;
    os << "  stage " << s.stage << ":\n";
    for (std::size_t i = 0; i < s.problems.size() && i < kMaxListed; ++i)
      os << "    " << s.problems[i] << "\n";
    list_more(os, s.problems.size());
  }
  return rep.ok();
}

bool report_oracle(std::ostream& os, const FlagBottTower& t, const Fan& f) {
  const auto rep = verify_oracle(t, f);
  os << "oracle: " << (rep.ok() ? "PASS" : "FAIL") << " (" << rep.cones_checked << " cones)\n";
  for (std::size_t i = 0; i < rep.mismatches.size() && i < kMaxListed; ++i) {
    const auto& m = rep.mismatches[i];
    os << "  cone tuple " << m.tuple_index << ": ";
    if (!m.error.empty()) {
      os << m.error << "\n";
      continue;
    }
    os << "weights give";
    for (const auto& v : m.from_weights) os << " " << vector_string(v);
    os << "; formula gives";
    for (const auto& v : m.from_formula) os << " " << vector_string(v);
    os << "\n";
  }
  list_more(os, rep.mismatches.size());
  return rep.ok();
}

}  // namespace

extern "C" {

const char* fb_version(void) { return "1.0.0"; }

const char* fb_status_name(fb_status status) {
  if (status == FB_OK) return "ok";
  if (status == FB_ERR_INTERNAL) return "internal error";
  if (status > FB_OK && status < FB_ERR_INTERNAL)
    return to_string(static_cast<ErrorCode>(static_cast<int>(status) - 1));
  return "unknown status";
}

const char* fb_last_error(void) { return last_error.c_str(); }

void fb_string_free(char* s) { std::free(s); }

fb_status fb_tower_parse_json(const char* text, size_t length, fb_tower** out) {
  return guarded([&] {
    if (!text || !out) return fail(FB_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    FlagBottTower t = parse_tower_json(std::string_view(text, length));
    require_valid(t);
    *out = new fb_tower{std::move(t)};
    return FB_OK;
  });
}

fb_status fb_tower_load_json(const char* path, fb_tower** out) {
  return guarded([&] {
    if (!path || !out) return fail(FB_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    FlagBottTower t = load_tower_json(path);
    try {
      require_valid(t);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(path) + ": " + e.what());
    }
    *out = new fb_tower{std::move(t)};
    return FB_OK;
  });
}

void fb_tower_free(fb_tower* t) { delete t; }

int fb_tower_stages(const fb_tower* t) { return t ? t->tower.stages() : 0; }

int fb_tower_rank(const fb_tower* t) { return t ? static_cast<int>(t->tower.rank()) : 0; }

fb_status fb_fan_build(const fb_tower* t, uint64_t cone_cap, fb_fan** out) {
  return guarded([&] {
    if (!t || !out) return fail(FB_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    Fan f = build_fan(t->tower, cone_cap == 0 ? kDefaultConeCap : cone_cap);
    *out = new fb_fan{std::move(f)};
    return FB_OK;
  });
}

void fb_fan_free(fb_fan* f) { delete f; }

fb_status fb_fan_counts(const fb_fan* f, uint64_t* rays, uint64_t* cones) {
  return guarded([&] {
    if (!f) return fail(FB_ERR_INVALID_ARGUMENT, "null argument");
    if (rays) *rays = f->fan.rays().size();
    if (cones) *cones = f->fan.num_cones();
    return FB_OK;
  });
}

fb_status fb_fan_export(const fb_fan* f, char** text) {
  return guarded([&] {
    if (!f || !text) return fail(FB_ERR_INVALID_ARGUMENT, "null argument");
    *text = duplicate(export_fanbott(f->fan));
    return FB_OK;
  });
}

fb_status fb_fan_write(const fb_fan* f, const char* path) {
  return guarded([&] {
    if (!f || !path) return fail(FB_ERR_INVALID_ARGUMENT, "null argument");
    write_fanbott(f->fan, path);
    return FB_OK;
  });
}

fb_status fb_fan_ray_table(const fb_fan* f, char** text) {
  return guarded([&] {
    if (!f || !text) return fail(FB_ERR_INVALID_ARGUMENT, "null argument");
    *text = duplicate(format_ray_table(f->fan));
    return FB_OK;
  });
}

fb_status fb_verify(const fb_tower* t, const fb_fan* f, unsigned checks, int* passed,
                    char** report) {
  return guarded([&] {
    if (!t || !f || !passed) return fail(FB_ERR_INVALID_ARGUMENT, "null argument");
    if (checks == 0 || (checks & ~static_cast<unsigned>(FB_CHECK_ALL)) != 0)
      return fail(FB_ERR_INVALID_ARGUMENT, "bad check mask " + std::to_string(checks));
    std::ostringstream os;
    bool ok = true;
    if (checks & FB_CHECK_SMOOTH) ok = report_smooth(os, f->fan) && ok;
    if (checks & FB_CHECK_COMPLETE) ok = report_complete(os, f->fan) && ok;
    if (checks & FB_CHECK_PAIRING) ok = report_pairing(os, t->tower) && ok;
    if (checks & FB_CHECK_BUNDLE) ok = report_bundle(os, t->tower, f->fan) && ok;
    if (checks & FB_CHECK_ORACLE) ok = report_oracle(os, t->tower, f->fan) && ok;
    *passed = ok ? 1 : 0;
    if (report) *report = duplicate(os.str());
    return FB_OK;
  });
}

fb_status fb_sample_generic(int n, int64_t bound, uint64_t seed, uint64_t retries, int64_t* out) {
  return guarded([&] {
    if (!out) return fail(FB_ERR_INVALID_ARGUMENT, "null argument");
    const RationalMatrix g =
        sample_generic(n, bound, seed, retries == 0 ? kDefaultSampleRetries : retries);
    std::size_t k = 0;
    for (const auto& e : g.entries())
      out[k++] = static_cast<int64_t>(boost::multiprecision::numerator(e));
    return FB_OK;
  });
}

}  // extern "C"
