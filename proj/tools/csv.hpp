#pragma once

// Deterministic CSV output: values at 9 significant digits via the C
// locale, no timestamps, one trailing manifest comment. Reruns with the
// same flags must produce byte-identical files.

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "niqsim/version.hpp"

namespace niqsim::cli {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string manifest_line(const std::string& command,
                                 const std::string& flags,
                                 unsigned long long seed) {
  return "# niqsim " + std::string(kVersion) + ", command=" + command +
         ", flags=" + flags + ", seed=" + std::to_string(seed) + "\n";
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open output file: " + path);
  }
  out << content;
  out.flush();
  if (!out) {
    throw IoError("failed while writing: " + path);
  }
}

}  // namespace niqsim::cli
