#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace maxplus {

// Dense maximum-weight perfect assignment with forbidden cells, by successive
// shortest augmenting paths with potentials (the O(n^3) Hungarian method).
// Cost is any exact ordered ring type: std::int64_t or mpz_class.
template <class Cost>
class AssignmentProblem {
 public:
  explicit AssignmentProblem(std::size_t n) : n_(n), weight_(n * n), allowed_(n * n, 0) {}

  [[nodiscard]] std::size_t size() const { return n_; }

  void set(std::size_t i, std::size_t j, Cost w) {
    weight_[i * n_ + j] = std::move(w);
    allowed_[i * n_ + j] = 1;
  }

  // col_of[i] for every row. Throws std::domain_error when no perfect
  // assignment exists.
  std::vector<std::size_t> solve_max() const {
    const std::size_t n = n_;
    // 1-based rows/columns; column 0 is the virtual root of each search.
    std::vector<Cost> u(n + 1), v(n + 1), minv(n + 1);
    std::vector<char> has_min(n + 1), used(n + 1);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    Cost cur{}, delta{};
    for (std::size_t row = 1; row <= n; ++row) {
      match[0] = row;
      std::size_t j0 = 0;
      std::fill(has_min.begin(), has_min.end(), 0);
      std::fill(used.begin(), used.end(), 0);
      do {
        used[j0] = 1;
        const std::size_t i0 = match[j0];
        bool have_delta = false;
        std::size_t j1 = 0;
        const std::size_t base = (i0 - 1) * n;
        for (std::size_t j = 1; j <= n; ++j) {
          if (used[j]) continue;
          if (allowed_[base + j - 1]) {
            // Minimisation of the negated weight.
            cur = -weight_[base + j - 1];
            cur -= u[i0];
            cur -= v[j];
            if (!has_min[j] || cur < minv[j]) {
              minv[j] = cur;
              has_min[j] = 1;
              way[j] = j0;
            }
          }
          if (has_min[j] && (!have_delta || minv[j] < delta)) {
            delta = minv[j];
            have_delta = true;
            j1 = j;
          }
        }
        if (!have_delta) throw std::domain_error("assignment: no perfect assignment exists");
        for (std::size_t j = 0; j <= n; ++j) {
          if (used[j]) {
            u[match[j]] += delta;
            v[j] -= delta;
          } else if (has_min[j]) {
            minv[j] -= delta;
          }
        }
        j0 = j1;
      } while (match[j0] != 0);
      do {
        const std::size_t j1 = way[j0];
        match[j0] = match[j1];
        j0 = j1;
      } while (j0 != 0);
    }
    std::vector<std::size_t> col_of(n);
    for (std::size_t j = 1; j <= n; ++j) col_of[match[j] - 1] = j - 1;
    return col_of;
  }

 private:
  std::size_t n_;
  std::vector<Cost> weight_;
  std::vector<char> allowed_;
};

}  // namespace maxplus
