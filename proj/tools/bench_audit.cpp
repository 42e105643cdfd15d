// Times the audit grid sweeps with the serial kernel and the OpenMP kernel on
// the bundled fixtures and reports the speedup. Both runs must produce the
// same verdicts; the comparison aborts otherwise.

#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "iivcg/audit.hpp"
#include "iivcg/io.hpp"

using namespace iivcg;
namespace chrono = std::chrono;

namespace {

double run_once(const Setting& s, ContractKind kind, const AuditOptions& opts, bool* pass) {
  auto t0 = chrono::steady_clock::now();
  AuditReport report = run_audit(s, kind, opts);
  auto t1 = chrono::steady_clock::now();
  *pass = report.all_pass();
  return chrono::duration<double>(t1 - t0).count();
}

void bench(const std::string& label, const Setting& s, ContractKind kind, GridSpec grid) {
  AuditOptions serial;
  serial.grid = grid;
  serial.parallel = false;
  AuditOptions parallel = serial;
  parallel.parallel = true;

  bool pass_serial = false, pass_parallel = false;
  double ts = run_once(s, kind, serial, &pass_serial);
  double tp = run_once(s, kind, parallel, &pass_parallel);
  if (pass_serial != pass_parallel) {
    std::cerr << "kernel mismatch on " << label << "\n";
    std::exit(1);
  }
  std::printf("%-28s %10.3fs serial %10.3fs parallel %8.2fx  (%s)\n", label.c_str(), ts, tp,
              tp > 0 ? ts / tp : 0.0, pass_serial ? "pass" : "fail");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run the serial kernel\n");
#endif

  GridSpec grid;
  grid.resolution = 4;
  grid.random_points = 8;
  grid.seed = 1;
  grid.max_profiles = 96;

  bench("alg1 / ladder fixture", make_pos_setting(3, rat(1, 4), rat(1, 12)),
        ContractKind::Algorithmic, grid);
  bench("alg1 / anarchy fixture", make_poa_setting(4, rat(1, 2), rat(1, 4)),
        ContractKind::Algorithmic, grid);
  bench("weighted / box fixture", make_weighted_setting(), ContractKind::Weighted, grid);
  bench("auction / box fixture", make_weighted_setting(), ContractKind::AuctionInspired, grid);
  return 0;
}
