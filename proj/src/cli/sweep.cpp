#include "hforge/cli/sweep.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include "hforge/constraints.hpp"
#include "hforge/families.hpp"
#include "hforge/spectra.hpp"

namespace hforge {

namespace {

struct SampleResult {
  std::vector<SpectrumMultiset> spectra;  // one per Hadamard branch
};

SampleResult run_sample(const SweepOptions& opts, int k) {
  std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                    static_cast<std::uint32_t>(k)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  auto draw = [&] { return phase(angle(rng)); };

  std::vector<ComplexMatrix> candidates;
  switch (opts.order) {
    case 4: {
      const std::array<Complex, 4> abcd{Complex{1.0}, draw(), draw(), draw()};
      for (const SolutionBranch& br : c4_branches(Param::a, abcd)) {
        candidates.push_back(m4(br.value, abcd[1], abcd[2], abcd[3]));
      }
      break;
    }
    case 6: {
      const Complex b = draw(), c = draw(), d = draw(), e = draw();
      for (int as : {1, -1}) {
        for (int fs : {1, -1}) {
          try {
            candidates.push_back(m6_branch(b, c, d, e, as, fs, opts.tol).matrix);
          } catch (const Error&) {
            // singular branch at this sample
          }
        }
      }
      break;
    }
    case 8: {
      const Complex b = draw(), c = draw(), d = draw(), f = draw(), g = draw(), h = draw();
      candidates.push_back(d8a(b, c, d, f, g, h));
      break;
    }
    default:
      throw Error(ErrorKind::InvalidParameter, "sweep: order must be 4, 6 or 8");
  }

  SampleResult out;
  for (const ComplexMatrix& m : candidates) {
    if (is_hadamard(m, opts.tol)) out.spectra.push_back(spectrum(m));
  }
  return out;
}

}  // namespace

SweepReport run_sweep(const SweepOptions& opts) {
  if (opts.samples < 1) throw Error(ErrorKind::InvalidParameter, "sweep: samples must be >= 1");
  if (opts.order != 4 && opts.order != 6 && opts.order != 8) {
    throw Error(ErrorKind::InvalidParameter, "sweep: order must be 4, 6 or 8");
  }
  opts.tol.validate();

  std::vector<SampleResult> results(static_cast<std::size_t>(opts.samples));
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(opts.samples)));
  auto run = [&](unsigned w) {
    for (std::size_t k = w; k < results.size(); k += workers) results[k] = run_sample(opts, static_cast<int>(k));
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  SweepReport report;
  report.samples = opts.samples;
  report.seed = opts.seed;
  std::vector<SpectrumMultiset> clusters;
  for (const SampleResult& r : results) {
    if (!r.spectra.empty()) ++report.hadamard_hits;
    report.hadamard_matrices += static_cast<int>(r.spectra.size());
    for (const SpectrumMultiset& s : r.spectra) {
      const bool known = std::any_of(clusters.begin(), clusters.end(),
                                     [&](const SpectrumMultiset& c) { return c.matches(s, opts.tol.spec); });
      if (!known) clusters.push_back(s);
    }
  }
  report.distinct_spectra = static_cast<int>(clusters.size());
  return report;
}

}  // namespace hforge
