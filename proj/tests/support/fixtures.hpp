#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coopsynt/spec_model.hpp"

#ifndef COOPSYNT_DATA_DIR
#error "COOPSYNT_DATA_DIR must be defined"
#endif
#ifndef COOPSYNT_GOLDEN_DIR
#error "COOPSYNT_GOLDEN_DIR must be defined"
#endif

namespace fixtures {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string data_path(const std::string& rel) { return std::string(COOPSYNT_DATA_DIR) + "/" + rel; }
inline std::string golden_path(const std::string& rel) { return std::string(COOPSYNT_GOLDEN_DIR) + "/" + rel; }

inline coopsynt::Dra load_dra(const std::string& rel) { return coopsynt::parse_dra(read_file(data_path(rel))); }
inline coopsynt::Mealy load_mealy(const std::string& rel) {
  return coopsynt::parse_mealy(read_file(data_path(rel)));
}

inline coopsynt::Dra example_a() { return load_dra("example17/A.dra"); }
inline coopsynt::Dra example_g() { return load_dra("example17/G.dra"); }
inline coopsynt::Mealy example_tau(int k) { return load_mealy("example17/tau" + std::to_string(k) + ".mealy"); }

// Non-empty, non-comment lines of a golden file.
inline std::vector<std::string> golden_lines(const std::string& rel) {
  std::istringstream in(read_file(golden_path(rel)));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(line);
  }
  return out;
}

// Letter index of (input, output) by name.
inline int letter(const coopsynt::Alphabet& a, const std::string& in, const std::string& out) {
  return a.letter(a.input_index(in), a.output_index(out));
}

}  // namespace fixtures
