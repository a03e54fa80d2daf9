// Sweeps the focusing strength of a symmetric two-mirror cavity and prints,
// for each f, the branch of the half-cycle, its exponent and the trace after
// a large number of round trips computed through the exponential form.
//
//   periodic_cavity [round_trips]

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "wigner_abcd/wigner_abcd.hpp"

using namespace wigner_abcd;

int main(int argc, char** argv) {
  const long long trips = argc > 1 ? std::atoll(argv[1]) : 1000000;
  std::printf("%6s  %-15s  %12s  %12s  %14s\n", "f", "branch", "r", "theta", "trace");
  for (int i = 1; i <= 24; ++i) {
    const cavity::CavityConfig cfg{0.125 * i, 0.5};
    const UniMat2 half = cavity::half_cycle(cfg);
    const BranchKind kind = cavity::stability(cfg);
    if (kind == BranchKind::Scalar) continue;
    const ExpForm form = log_to_expform(equidiagonalize(half));
    double trace = 0.0;
    try {
      trace = cavity::n_round_trips(cfg, trips).trace();
    } catch (const RangeError&) {
      trace = HUGE_VAL;  // unstable cavity: the ray leaves the representable range
    }
    std::printf("%6.3f  %-15s  %12.6f  %12.6f  %14.6g\n", cfg.f, std::string(to_string(kind)).c_str(), form.r,
                form.theta, trace);
  }
  return 0;
}
