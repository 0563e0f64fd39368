// Copyright 2026 The qswitch Authors
// SPDX-License-Identifier: Apache-2.0
//
// Compares the serial and OpenMP dissipator kernels on switch generators of
// increasing size. Usage: qswitch-bench [reps]. Each timing covers `reps`
// right-hand-side evaluations of the same state; the identity column
// confirms the two variants produced the same bytes.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "qswitch/kernels.hpp"
#include "qswitch/open_dynamics.hpp"
#include "qswitch/parallel.hpp"
#include "qswitch/switch_model.hpp"

using namespace qswitch;

namespace {

double time_loop(const JumpKernel& kernel, const Matrix& rho, Matrix& out,
                 int reps, bool parallel) {
  auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) {
    if (parallel)
      kernel.rhs_parallel(rho, out);
    else
      kernel.rhs_serial(rho, out);
  }
  std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  return elapsed.count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
  int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  if (reps < 1) reps = 1;

  std::printf("threads: %d, reps per timing: %d\n", hardware_threads(), reps);
  std::printf("%8s %8s %8s %12s %12s %9s %10s\n", "cutoff", "dim", "jumps",
              "serial_ms", "parallel_ms", "speedup", "identical");

  for (int cutoff : {16, 24, 32, 40, 48}) {
    SwitchParams p{1.0, 1.0, 0.125, cutoff};
    BathSpec bath{0.125, 1.0, 0.05};
    LindbladGenerator g = build_generator(p, bath, true);
    JumpKernel kernel = JumpKernel::build(g.jumps, g.dim());
    DensityMatrix rho = biased_gibbs(p, Sector::plus).rho;

    Matrix out_s(g.dim(), g.dim()), out_p(g.dim(), g.dim());
    kernel.rhs_serial(rho.mat, out_s);  // warm caches and buffers
    double ts = time_loop(kernel, rho.mat, out_s, reps, false);
    double tp = time_loop(kernel, rho.mat, out_p, reps, true);
    bool same = std::memcmp(out_s.data(), out_p.data(),
                            sizeof(Cx) * static_cast<std::size_t>(
                                             out_s.size())) == 0;
    std::printf("%8d %8d %8zu %12.4f %12.4f %9.2fx %10s\n", cutoff, g.dim(),
                kernel.jump_count(), 1e3 * ts, 1e3 * tp, ts / tp,
                same ? "yes" : "NO");
  }
  return 0;
}
