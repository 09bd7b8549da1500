#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "mubra/textio.hpp"

namespace testutil {

inline std::string slurp(const std::string& name) {
  std::ifstream in(std::string(MUBRA_TEST_DATA_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline mubra::EquationSystem load_system(const std::string& name) {
  return mubra::parse_system(slurp(name));
}

inline mubra::LassoWord load_word(const std::string& name,
                                  const std::vector<std::string>& atoms) {
  return mubra::parse_lasso(slurp(name), atoms);
}

inline mubra::DataValue dv(std::int64_t n) {
  return mubra::DataValue::integer(n);
}

inline mubra::Assignment asg(std::initializer_list<mubra::DataValue> values) {
  return mubra::Assignment(std::vector<mubra::DataValue>(values));
}

}  // namespace testutil
