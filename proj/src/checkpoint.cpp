#include "obsdrop/checkpoint.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace obsdrop {

namespace {
constexpr const char* kTag = "obsdrop-params-v1";
}

std::string format_double(double v) {
  char buf[40];
  // Try the short rounding first; fall back to 17 digits when it does not
  // reproduce the exact bits.
  for (int prec : {15, 16, 17}) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void save_params(const std::string& path, const std::string& descriptor,
                 const std::vector<double>& values) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
  out << kTag << ' ' << descriptor << '\n';
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << format_double(values[i]);
    out << ((i + 1) % 8 == 0 || i + 1 == values.size() ? '\n' : ' ');
  }
  if (!out) throw std::runtime_error("checkpoint write failed: " + path);
}

LoadedParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read checkpoint: " + path);
  std::string tag;
  LoadedParams loaded;
  if (!(in >> tag >> loaded.descriptor) || tag != kTag)
    throw std::runtime_error("not an obsdrop checkpoint: " + path);
  std::string tok;
  while (in >> tok) loaded.values.push_back(std::strtod(tok.c_str(), nullptr));
  return loaded;
}

}  // namespace obsdrop
