#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace pfm {

struct SweepConfig {
  std::vector<std::uint64_t> n_list;
  std::vector<double> c_list;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  std::string output_path;  // CSV destination; empty means no file
  unsigned threads = 0;     // 0: see resolve_thread_count()
};

// Throws InvalidArgument when n < 2, trials < 1, a c is negative or not
// finite, or an n exceeds the closure cap.
void validate(const SweepConfig& cfg);

struct EdgeProbability {
  double p = 0.0;
  bool clamped = false;  // c·ln(n)/n exceeded 1
};

// p = c·ln(n)/n clamped to [0, 1].
EdgeProbability sweep_edge_probability(std::uint64_t n, double c);

// One trial of the phase sweep: G_d(n, p) with p from sweep_edge_probability,
// ε = ϑ(γ*), F_n = (1 − ε)^n.
struct PhaseRecord {
  double c = 0.0;
  std::uint64_t n = 0;
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t gamma_star = 0;
  double theta = 0.0;
  double f_n = 0.0;
  double f_limit = 0.0;
  bool clamped = false;
};

struct GammaRecord {
  double c = 0.0;
  std::uint64_t n = 0;
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t gamma_star = 0;
  double lo = 0.0;
  double hi = 0.0;
  bool in_window = false;
  bool clamped = false;
};

// Graph seed of trial `trial` for the (c_index, n_index) cell; identical in
// the phase and gamma sweeps so both see the same graphs.
std::uint64_t trial_seed(const SweepConfig& cfg, std::size_t c_index, std::size_t n_index,
                         std::uint64_t trial);

// γ* of the trial's graph.
std::uint64_t sample_gamma_star(std::uint64_t n, double p, std::uint64_t seed);

// Runs every (c, n, trial) cell, possibly in parallel, and returns records
// sorted by (c, n, trial). Writes the CSV when cfg.output_path is set.
std::vector<PhaseRecord> run_phase_sweep(const SweepConfig& cfg);

// Same sweep, recording γ* against pittel_tungol_window(n, c, a, kappa).
// Requires every n >= 16.
std::vector<GammaRecord> run_gamma_sweep(const SweepConfig& cfg, double a, double kappa);

// Header c,n,trial,seed,gamma_star,theta,f_n,f_limit; reals with 17
// significant digits.
void write_phase_csv(std::ostream& out, std::span<const PhaseRecord> records);
// Header c,n,trial,seed,gamma_star,lo,hi,in_window; in_window is 0 or 1.
void write_gamma_csv(std::ostream& out, std::span<const GammaRecord> records);

}  // namespace pfm
