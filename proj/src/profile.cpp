#include "sparoof/profile.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace sparoof {

using nlohmann::json;

namespace {

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed profile " + path.string() + ": " + e.what());
  }
}

template <typename T>
void take(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) {
    try {
      out = it->get<T>();
    } catch (const json::exception&) {
      throw std::runtime_error(std::string("profile key '") + key + "' has the wrong type");
    }
  }
}

}  // namespace

ProfileFile load_profile(const std::filesystem::path& path) {
  const json j = read_json(path);
  if (!j.is_object()) throw std::runtime_error("profile must be a JSON object");
  ProfileFile p;
  take(j, "beta_gbps", p.machine.beta_gbps);
  take(j, "pi_gflops", p.machine.pi_gflops);
  take(j, "reuse_factor", p.machine.reuse_factor);
  take(j, "traffic_a_bytes", p.machine.traffic_a_bytes);
  take(j, "hub_fraction", p.machine.hub_fraction);
  take(j, "stream_elements", p.harness.stream_elements);
  take(j, "warmup_runs", p.harness.warmup_runs);
  take(j, "timed_runs", p.harness.timed_runs);
  take(j, "suitesparse_url", p.harness.suitesparse_url);
  p.machine.validate();
  return p;
}

void save_profile(const std::filesystem::path& path, const ProfileFile& profile) {
  json j = json::object();
  if (std::filesystem::exists(path)) {
    j = read_json(path);
    if (!j.is_object()) j = json::object();
  }
  j["beta_gbps"] = profile.machine.beta_gbps;
  j["pi_gflops"] = profile.machine.pi_gflops;
  j["reuse_factor"] = profile.machine.reuse_factor;
  j["traffic_a_bytes"] = profile.machine.traffic_a_bytes;
  j["hub_fraction"] = profile.machine.hub_fraction;
  j["stream_elements"] = profile.harness.stream_elements;
  j["warmup_runs"] = profile.harness.warmup_runs;
  j["timed_runs"] = profile.harness.timed_runs;
  j["suitesparse_url"] = profile.harness.suitesparse_url;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write profile " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace sparoof
