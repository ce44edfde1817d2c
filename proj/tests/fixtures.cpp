#include "fixtures.hpp"

#include "maxplus/io.hpp"

namespace fixtures {

std::string data_path(const std::string& name) { return std::string(MAXPLUS_TEST_DATA) + "/" + name; }

maxplus::TropicalMatrix example() { return maxplus::io::parse_matrix(maxplus::io::read_file(data_path("example.mpx"))); }

maxplus::TropicalMatrix dense(const std::vector<std::vector<std::optional<long>>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  maxplus::TropicalMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (rows[i].at(j)) m.set(i, j, maxplus::Scalar(*rows[i][j]));
  return m;
}

}  // namespace fixtures
