#pragma once

// Random torus sweeps over the branch solvers, with spectrum clustering.

#include <cstdint>

#include "hforge/core.hpp"

namespace hforge {

struct SweepOptions {
  int order = 6;  ///< 4, 6 or 8
  int samples = 100;
  std::uint64_t seed = 0;
  ToleranceConfig tol{};
  unsigned workers = 1;
};

struct SweepReport {
  int samples = 0;
  int hadamard_hits = 0;     ///< samples with at least one Hadamard branch
  int hadamard_matrices = 0;  ///< Hadamard branch matrices over all samples
  int distinct_spectra = 0;   ///< clusters at tol.spec
  std::uint64_t seed = 0;

  bool operator==(const SweepReport&) const = default;
};

/// Order 4 samples (b, c, d) and takes both branches for a; order 6
/// samples (b, c, d, e) and takes the four (a, f) branch pairs; order 8
/// samples the six D8a parameters. Sample k draws from a stream seeded by
/// (seed, k), so the report does not depend on the worker count.
SweepReport run_sweep(const SweepOptions& opts);

}  // namespace hforge
