// Float64 timing of det_recursive against det_full_product. The full
// product is skipped above n = 8.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "dlpq/dlpq.hpp"

using namespace dlpq;

namespace {

template <typename F> double seconds_per_call(F &&fn, double budget) {
  using clock = std::chrono::steady_clock;
  int calls = 0;
  const auto start = clock::now();
  double elapsed = 0.0;
  do {
    fn();
    ++calls;
    elapsed = std::chrono::duration<double>(clock::now() - start).count();
  } while (elapsed < budget);
  return elapsed / calls;
}

} // namespace

int main(int argc, char **argv) {
  const int max_n = argc > 1 ? std::atoi(argv[1]) : 10;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);

  std::printf("%3s %14s %14s %10s\n", "n", "recursive_s", "full_product_s", "ratio");
  for (int n = 1; n <= max_n; ++n) {
    const Signature sig(0, n);
    std::vector<double> c(sig.dim());
    for (auto &x : c)
      x = coeff(rng);
    const Element<double> u(sig, c);
    volatile double sink = 0.0;
    const double rec = seconds_per_call([&] { sink = det_recursive(u); }, 0.2);
    if (n <= 8) {
      const double full = seconds_per_call([&] { sink = det_full_product(u); }, 0.2);
      std::printf("%3d %14.3e %14.3e %10.1f\n", n, rec, full, full / rec);
    } else {
      std::printf("%3d %14.3e %14s %10s\n", n, rec, "skipped", "-");
    }
  }
}
