#pragma once

#include <string>
#include <vector>

namespace obsdrop {

// Versioned text checkpoint. Line 1 is "obsdrop-params-v1 <descriptor>"; the
// remaining lines hold the parameter values in decimal with enough digits to
// round-trip doubles bit-exactly.
void save_params(const std::string& path, const std::string& descriptor,
                 const std::vector<double>& values);

struct LoadedParams {
  std::string descriptor;
  std::vector<double> values;
};

LoadedParams load_params(const std::string& path);

// Formats one double with round-trip precision (shortest form of %.17g that
// parses back to the same bits).
std::string format_double(double v);

}  // namespace obsdrop
