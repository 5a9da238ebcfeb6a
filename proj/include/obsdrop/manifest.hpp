#pragma once

#include <map>
#include <string>

#include "obsdrop/config.hpp"

namespace obsdrop {

constexpr const char* kToolVersion = "0.1.0";

// manifest.json carries the experiment name, the full effective config, and
// derived facts (architecture descriptors, parameter counts). It is written
// before any compute starts and suffices to reproduce every artifact in the
// run directory bit-identically.
void write_manifest(const std::string& path, const std::string& experiment,
                    const RunConfig& cfg,
                    const std::map<std::string, std::string>& derived);

struct Manifest {
  std::string experiment;
  std::string tool_version;
  RunConfig config;
  std::map<std::string, std::string> derived;
};

Manifest read_manifest(const std::string& path);

}  // namespace obsdrop
