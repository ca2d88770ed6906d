#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include "sparoof/models.hpp"
#include "sparoof/suitesparse.hpp"

namespace sparoof {

/// Harness settings stored next to the machine profile.
struct HarnessSettings {
  std::size_t stream_elements = 0;  // 0: size from the last-level cache
  int warmup_runs = 3;
  int timed_runs = 7;
  std::string suitesparse_url{kDefaultSuiteSparseUrl};
};

/// The machine profile file: a JSON object with keys beta_gbps, pi_gflops,
/// reuse_factor, traffic_a_bytes, hub_fraction, and optionally
/// stream_elements, warmup_runs, timed_runs, suitesparse_url.
struct ProfileFile {
  MachineProfile machine;
  HarnessSettings harness;
};

/// Missing keys keep their defaults. Throws std::runtime_error on IO or
/// parse failure and std::invalid_argument on invalid values.
ProfileFile load_profile(const std::filesystem::path& path);
/// Rewrites the file with every key; unknown keys already present are kept.
void save_profile(const std::filesystem::path& path, const ProfileFile& profile);

}  // namespace sparoof
