// flagbott: build and check fans of generic torus orbit closures in flag Bott
// manifolds.
//
// Exit codes: 0 success, 1 a verification failed, 2 bad input or usage.

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "flagbott/flagbott.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;

struct TowerDeleter {
  void operator()(fb_tower* t) const { fb_tower_free(t); }
};
struct FanDeleter {
  void operator()(fb_fan* f) const { fb_fan_free(f); }
};
struct StringDeleter {
  void operator()(char* s) const { fb_string_free(s); }
};
using TowerPtr = std::unique_ptr<fb_tower, TowerDeleter>;
using FanPtr = std::unique_ptr<fb_fan, FanDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

class Failure {
 public:
  Failure(int exit_code, std::string message) : exit_code_(exit_code), message_(std::move(message)) {}
  int exit_code() const { return exit_code_; }
  const std::string& message() const { return message_; }

 private:
  int exit_code_;
  std::string message_;
};

void check(fb_status status) {
  if (status == FB_OK) return;
  const int code = status == FB_ERR_INTERNAL ? kExitVerifyFailed : kExitInput;
  throw Failure(code, std::string(fb_status_name(status)) + ": " + fb_last_error());
}

std::uint64_t cone_cap_from_env() {
  const char* raw = std::getenv("FLAGBOTT_CONE_CAP");
  if (!raw || !*raw) return 0;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (errno != 0 || *end != '\0' || v == 0 || raw[0] == '-')
    throw Failure(kExitInput, std::string("FLAGBOTT_CONE_CAP: not a positive integer: ") + raw);
  return v;
}

TowerPtr load(const std::string& path) {
  fb_tower* t = nullptr;
  check(fb_tower_load_json(path.c_str(), &t));
  return TowerPtr(t);
}

FanPtr build(const fb_tower* t) {
  fb_fan* f = nullptr;
  check(fb_fan_build(t, cone_cap_from_env(), &f));
  return FanPtr(f);
}

std::string default_fan_path(const std::string& spec) {
  return std::filesystem::path(spec).stem().string() + ".fan";
}

int cmd_build(const std::string& spec, const std::string& out) {
  auto t = load(spec);
  auto f = build(t.get());
  std::uint64_t rays = 0, cones = 0;
  check(fb_fan_counts(f.get(), &rays, &cones));
  const std::string path = out.empty() ? default_fan_path(spec) : out;
  check(fb_fan_write(f.get(), path.c_str()));
  std::cout << "rays: " << rays << ", maxcones: " << cones << "\n";
  return kExitOk;
}

int cmd_rays(const std::string& spec) {
  auto t = load(spec);
  auto f = build(t.get());
  char* text = nullptr;
  check(fb_fan_ray_table(f.get(), &text));
  StringPtr owned(text);
  std::cout << text;
  return kExitOk;
}

int cmd_verify(const std::string& spec, unsigned checks) {
  auto t = load(spec);
  auto f = build(t.get());
  int passed = 0;
  char* report = nullptr;
  check(fb_verify(t.get(), f.get(), checks == 0 ? FB_CHECK_ALL : checks, &passed, &report));
  StringPtr owned(report);
  std::cout << report;
  return passed ? kExitOk : kExitVerifyFailed;
}

int cmd_sample(int n, std::int64_t bound, std::uint64_t seed) {
  if (n < 1 || n > 12) throw Failure(kExitInput, "--n must be between 1 and 12");
  const std::size_t k = static_cast<std::size_t>(n) + 1;
  std::vector<std::int64_t> entries(k * k);
  check(fb_sample_generic(n, bound, seed, 0, entries.data()));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) std::cout << (c ? " " : "") << entries[r * k + c];
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_export(const std::string& spec, const std::string& out) {
  auto t = load(spec);
  auto f = build(t.get());
  if (out == "-") {
    char* text = nullptr;
    check(fb_fan_export(f.get(), &text));
    StringPtr owned(text);
    std::cout << text;
  } else {
    check(fb_fan_write(f.get(), out.c_str()));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fans of generic torus orbit closures in flag Bott manifolds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fb_version());

  std::string spec, out;

  auto* build_cmd = app.add_subcommand("build", "Construct the fan, print counts, write the fan file");
  build_cmd->add_option("spec", spec, "Tower spec (JSON)")->required();
  build_cmd->add_option("--out", out, "Fan file (default: <spec stem>.fan)");

  auto* rays_cmd = app.add_subcommand("rays", "Print the ray table");
  rays_cmd->add_option("spec", spec, "Tower spec (JSON)")->required();

  bool smooth = false, complete = false, pairing = false, bundle = false, oracle = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run checks; all of them when none is selected");
  verify_cmd->add_option("spec", spec, "Tower spec (JSON)")->required();
  verify_cmd->add_flag("--smooth", smooth, "Unimodular maximal cones");
  verify_cmd->add_flag("--complete", complete, "Wall test for completeness");
  verify_cmd->add_flag("--pairing", pairing, "Weight/ray pairing identity");
  verify_cmd->add_flag("--bundle", bundle, "Iterated fiber-bundle structure");
  verify_cmd->add_flag("--oracle", oracle, "Rays re-derived from fixed-point weights");

  int n = 0;
  std::int64_t bound = 10;
  std::uint64_t seed = 0;
  auto* sample_cmd = app.add_subcommand("sample-generic", "Print a generic (n+1)x(n+1) integer matrix");
  sample_cmd->add_option("--n", n, "Flag dimension")->required();
  sample_cmd->add_option("--bound", bound, "Entries lie in [-bound, bound]")->capture_default_str();
  sample_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();

  auto* export_cmd = app.add_subcommand("export", "Write the fan in FANBOTT format");
  export_cmd->add_option("spec", spec, "Tower spec (JSON)")->required();
  export_cmd->add_option("--out", out, "Output file, '-' for stdout")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*build_cmd) return cmd_build(spec, out);
    if (*rays_cmd) return cmd_rays(spec);
    if (*verify_cmd) {
      unsigned checks = 0;
      if (smooth) checks |= FB_CHECK_SMOOTH;
      if (complete) checks |= FB_CHECK_COMPLETE;
      if (pairing) checks |= FB_CHECK_PAIRING;
      if (bundle) checks |= FB_CHECK_BUNDLE;
      if (oracle) checks |= FB_CHECK_ORACLE;
      return cmd_verify(spec, checks);
    }
    if (*sample_cmd) return cmd_sample(n, bound, seed);
    if (*export_cmd) return cmd_export(spec, out);
  } catch (const Failure& f) {
    std::cerr << "flagbott: " << f.message() << "\n";
    return f.exit_code();
  }
  return kExitInput;
}
