// Times expand and a t = 10^18 evaluation on dense random integer matrices.
// Usage: bench_scaling [n ...]   (default 50 100 200 300)

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <random>
#include <vector>

#include "maxplus/csr.hpp"
#include "maxplus/oracle.hpp"

int main(int argc, char** argv) {
  using Clock = std::chrono::steady_clock;
  std::vector<std::size_t> sizes;
  for (int k = 1; k < argc; ++k) sizes.push_back(std::strtoull(argv[k], nullptr, 10));
  if (sizes.empty()) sizes = {50, 100, 200, 300};

  const maxplus::BigInt t("1000000000000000000");
  std::cout << std::setw(5) << "n" << std::setw(8) << "roots" << std::setw(7) << "terms" << std::setw(12)
            << "expand_s" << std::setw(10) << "eval_s" << '\n';
  for (std::size_t n : sizes) {
    std::mt19937_64 rng(20240 + n);
    const auto a = maxplus::oracle::random_matrix(rng, n, 1.0, -1000, 1000);
    const auto t0 = Clock::now();
    const auto p = maxplus::expand_with_artifacts(a);
    const auto t1 = Clock::now();
    const auto power = maxplus::evaluate_expansion(p.expansion, t);
    const auto t2 = Clock::now();
    std::cout << std::setw(5) << n << std::setw(8) << p.mmcs.p() << std::setw(7) << p.expansion.terms.size()
              << std::setw(12) << std::fixed << std::setprecision(3) << std::chrono::duration<double>(t1 - t0).count()
              << std::setw(10) << std::chrono::duration<double>(t2 - t1).count() << '\n';
    if (power.finite_count() != n * n) return 1;
  }
  return 0;
}
