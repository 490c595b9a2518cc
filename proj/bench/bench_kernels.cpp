#include <phitilde/phitilde.hpp>
#include <phitilde/scan.hpp>
#include <phitilde/sieve.hpp>

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace phitilde;

using Clock = std::chrono::steady_clock;

template <typename Fn>
double timed(Fn&& fn) {
  const auto start = Clock::now();
  fn();
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-34s serial %8.3fs   parallel %8.3fs   speedup %.2fx\n",
              name, serial, parallel, serial / parallel);
}

} // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP with up to %d threads\n", omp_get_max_threads());
#else
  std::printf("OpenMP unavailable, parallel paths run serially\n");
#endif

  const auto tables = build_sieve(10'000'000);

  {
    // Preimage scan to the k = 100 threshold (398161).
    volatile uint64_t sink = 0;
    const double serial = timed([&] {
      sink = sink + scan_preimages_serial(398'161, 100, tables).by_k[1].size();
    });
    const double parallel = timed([&] {
      sink = sink + scan_preimages(398'161, 100, tables).by_k[1].size();
    });
    report("preimage scan, k <= 100", serial, parallel);
  }

  {
    // Preimage scan to the k = 500 threshold (14799409).
    volatile uint64_t sink = 0;
    const double serial = timed([&] {
      sink = sink + scan_preimages_serial(14'799'409, 500, tables).by_k[1].size();
    });
    const double parallel = timed([&] {
      sink = sink + scan_preimages(14'799'409, 500, tables).by_k[1].size();
    });
    report("preimage scan, k <= 500", serial, parallel);
  }

  {
    // Segmented prime counting over a 2e8 window.
    volatile uint64_t sink = 0;
    const double serial = timed([&] {
      sink = sink + count_primes_segmented_serial(200'000'000, tables);
    });
    const double parallel = timed([&] {
      sink = sink + count_primes_segmented(200'000'000, tables);
    });
    report("segmented pi(2e8)", serial, parallel);
  }

  {
    // Formula-versus-enumeration sweep; the oracle dominates the cost.
    volatile bool sink = false;
    const double serial = timed([&] {
      sink = sink | find_formula_mismatch_serial(1, 100'000, tables).has_value();
    });
    const double parallel = timed([&] {
      sink = sink | find_formula_mismatch(1, 100'000, tables).has_value();
    });
    report("formula sweep to 1e5", serial, parallel);
  }

  return 0;
}
