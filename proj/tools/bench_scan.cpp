// Compares the serial reference scan kernel with the OpenMP kernel and
// verifies they produce identical records.
//
//   bench-scan [max_abs_disc] [repeats]

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "picard/scan.hpp"

using namespace picard;

namespace {

double time_once(bool parallel, i64 max_disc,
                 std::vector<ScanRecord>* out) {
  auto t0 = std::chrono::steady_clock::now();
  *out = parallel ? scan_range_parallel(3, max_disc)
                  : scan_range_serial(3, max_disc);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  i64 max_disc = argc > 1 ? std::atol(argv[1]) : 30000;
  int repeats = argc > 2 ? std::atoi(argv[2]) : 3;

  std::cout << "scan kernel benchmark: fundamental |disc| <= " << max_disc
            << ", " << repeats << " repeat(s), " << omp_get_max_threads()
            << " thread(s)\n";

  std::vector<ScanRecord> serial, parallel;
  double best_serial = 0, best_parallel = 0;
  for (int i = 0; i < repeats; ++i) {
    double s = time_once(false, max_disc, &serial);
    if (best_serial == 0 || s < best_serial) best_serial = s;
  }
  for (int i = 0; i < repeats; ++i) {
    double s = time_once(true, max_disc, &parallel);
    if (best_parallel == 0 || s < best_parallel) best_parallel = s;
  }

  if (serial.size() != parallel.size()) {
    std::cerr << "kernel mismatch: record counts differ\n";
    return 1;
  }
  for (size_t i = 0; i < serial.size(); ++i) {
    if (!(serial[i] == parallel[i])) {
      std::cerr << "kernel mismatch at |disc|=" << serial[i].abs_disc << "\n";
      return 1;
    }
  }

  std::cout << "records:  " << serial.size() << "\n";
  std::cout << "serial:   " << best_serial << " s\n";
  std::cout << "parallel: " << best_parallel << " s\n";
  std::cout << "speedup:  " << best_serial / best_parallel << "x\n";
  std::cout << "outputs identical\n";
  return 0;
}
