#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ccons/io.hpp"
#include "ccons/matrix.hpp"

namespace ccons::testing {

inline MatrixSet make_set(const std::vector<RawMatrix>& mats,
                          const std::vector<std::vector<int>>& clusters) {
  std::vector<StochasticMatrix> ms;
  for (const auto& m : mats) ms.push_back(validate_stochastic(m));
  const int n = static_cast<int>(mats.front().size());
  return MatrixSet(std::move(ms), validate_clustering(clusters, n));
}

inline std::string fixture_path(const std::string& name) {
  return std::string(CCONS_FIXTURE_DIR) + "/" + name;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline MatrixSet load_fixture(const std::string& name) {
  return io::parse_matrix_set(read_text(fixture_path(name)));
}

}  // namespace ccons::testing
