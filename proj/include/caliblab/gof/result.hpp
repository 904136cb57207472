#pragma once

#include <string>

namespace caliblab {

struct GofResult {
  std::string test_name;
  double statistic = 0.0;
  double p_value = 1.0;
  long sample_size = 0;
};

}  // namespace caliblab
