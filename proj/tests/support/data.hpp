#pragma once

#include <fstream>
#include <sstream>
#include <string>

namespace ipsx::testdata {

inline std::string read(const std::string& name) {
  std::ifstream in(std::string(IPSX_TEST_DATA) + "/" + name, std::ios::binary);
  if (!in) throw std::runtime_error("missing test data " + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace ipsx::testdata
