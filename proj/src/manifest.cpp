#include "obsdrop/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace obsdrop {

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void write_manifest(const std::string& path, const std::string& experiment,
                    const RunConfig& cfg,
                    const std::map<std::string, std::string>& derived) {
  nlohmann::json j;
  j["format"] = "obsdrop-manifest-v1";
  j["tool_version"] = kToolVersion;
  j["experiment"] = experiment;
  j["created_utc"] = utc_now();
  nlohmann::json config = nlohmann::json::object();
  for (const auto& [key, value] : config_items(cfg)) config[key] = value;
  j["config"] = config;
  j["derived"] = derived;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest: " + path);
  out << j.dump(2) << '\n';
}

Manifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read manifest: " + path);
  nlohmann::json j;
  in >> j;
  if (j.value("format", "") != "obsdrop-manifest-v1")
    throw std::runtime_error("not an obsdrop manifest: " + path);

  Manifest m;
  m.experiment = j.value("experiment", "");
  m.tool_version = j.value("tool_version", "");
  for (const auto& [key, value] : j.at("config").items())
    apply_override(m.config, key, value.get<std::string>());
  validate_config(m.config);
  if (j.contains("derived"))
    for (const auto& [key, value] : j.at("derived").items())
      m.derived[key] = value.get<std::string>();
  return m;
}

}  // namespace obsdrop
