#include "pfm/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <tuple>

#include <fmt/core.h>

#include "pfm/closure.hpp"
#include "pfm/dag.hpp"
#include "pfm/errors.hpp"
#include "pfm/formulas.hpp"
#include "pfm/parallel.hpp"
#include "pfm/rng.hpp"

namespace pfm {

unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PFM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void validate(const SweepConfig& cfg) {
  if (cfg.n_list.empty()) throw InvalidArgument("sweep: no n values");
  if (cfg.c_list.empty()) throw InvalidArgument("sweep: no c values");
  if (cfg.trials < 1) throw InvalidArgument("sweep: trials must be at least 1");
  for (std::uint64_t n : cfg.n_list) {
    if (n < 2) throw InvalidArgument(fmt::format("sweep: n = {} < 2", n));
    if (n > kMaxClosureVertices) {
      throw InvalidArgument(fmt::format("sweep: n = {} exceeds the closure cap of {}", n, kMaxClosureVertices));
    }
  }
  for (double c : cfg.c_list) {
    if (!std::isfinite(c) || c < 0.0) throw InvalidArgument(fmt::format("sweep: bad c = {}", c));
  }
}

EdgeProbability sweep_edge_probability(std::uint64_t n, double c) {
  const double nn = static_cast<double>(n);
  const double raw = c * std::log(nn) / nn;
  if (raw > 1.0) return {1.0, true};
  return {std::max(0.0, raw), false};
}

std::uint64_t trial_seed(const SweepConfig& cfg, std::size_t c_index, std::size_t n_index,
                         std::uint64_t trial) {
  const std::uint64_t cell = c_index * cfg.n_list.size() + n_index;
  return derive_seed(cfg.master_seed, cell * cfg.trials + trial);
}

std::uint64_t sample_gamma_star(std::uint64_t n, double p, std::uint64_t seed) {
  return transitive_closure(sample_barak_erdos(n, p, seed)).gamma_star();
}

namespace {

struct Cell {
  double c;
  std::uint64_t n;
  std::uint64_t trial;
  std::uint64_t seed;
};

std::vector<Cell> enumerate_cells(const SweepConfig& cfg) {
  std::vector<Cell> cells;
  cells.reserve(cfg.c_list.size() * cfg.n_list.size() * cfg.trials);
  for (std::size_t ci = 0; ci < cfg.c_list.size(); ++ci) {
    for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
      for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        cells.push_back({cfg.c_list[ci], cfg.n_list[ni], t, trial_seed(cfg, ci, ni, t)});
      }
    }
  }
  return cells;
}

template <typename Record>
void sort_records(std::vector<Record>& records) {
  std::stable_sort(records.begin(), records.end(), [](const Record& a, const Record& b) {
    return std::tie(a.c, a.n, a.trial) < std::tie(b.c, b.n, b.trial);
  });
}

template <typename Writer, typename Records>
void write_file(const std::string& path, Writer writer, const Records& records) {
  std::ofstream out(path);
  if (!out) throw Error(fmt::format("cannot open {} for writing", path));
  writer(out, std::span(records));
  out.flush();
  if (!out) throw Error(fmt::format("failed writing {}", path));
}

}  // namespace

std::vector<PhaseRecord> run_phase_sweep(const SweepConfig& cfg) {
  validate(cfg);
  const std::vector<Cell> cells = enumerate_cells(cfg);
  std::vector<PhaseRecord> records(cells.size());
  parallel_for(cells.size(), resolve_thread_count(cfg.threads), [&](std::size_t k) {
    const Cell& cell = cells[k];
    const EdgeProbability ep = sweep_edge_probability(cell.n, cell.c);
    PhaseRecord& r = records[k];
    r.c = cell.c;
    r.n = cell.n;
    r.trial = cell.trial;
    r.seed = cell.seed;
    r.clamped = ep.clamped;
    r.gamma_star = sample_gamma_star(cell.n, ep.p, cell.seed);
    r.theta = theta(static_cast<double>(r.gamma_star));
    r.f_n = f_epsilon_exact(cell.n, r.theta);
    r.f_limit = phase_limit(cell.c);
  });
  sort_records(records);
  if (!cfg.output_path.empty()) write_file(cfg.output_path, write_phase_csv, records);
  return records;
}

std::vector<GammaRecord> run_gamma_sweep(const SweepConfig& cfg, double a, double kappa) {
  validate(cfg);
  for (std::uint64_t n : cfg.n_list) {
    if (n < 16) throw InvalidArgument(fmt::format("gamma sweep: n = {} < 16", n));
  }
  // Fail on bad window constants before sampling anything.
  (void)pittel_tungol_window(16, 1.0, a, kappa);

  const std::vector<Cell> cells = enumerate_cells(cfg);
  std::vector<GammaRecord> records(cells.size());
  parallel_for(cells.size(), resolve_thread_count(cfg.threads), [&](std::size_t k) {
    const Cell& cell = cells[k];
    const EdgeProbability ep = sweep_edge_probability(cell.n, cell.c);
    const PtWindow w = pittel_tungol_window(cell.n, cell.c, a, kappa);
    GammaRecord& r = records[k];
    r.c = cell.c;
    r.n = cell.n;
    r.trial = cell.trial;
    r.seed = cell.seed;
    r.clamped = ep.clamped;
    r.gamma_star = sample_gamma_star(cell.n, ep.p, cell.seed);
    r.lo = w.lo;
    r.hi = w.hi;
    r.in_window = w.contains(static_cast<double>(r.gamma_star));
  });
  sort_records(records);
  if (!cfg.output_path.empty()) write_file(cfg.output_path, write_gamma_csv, records);
  return records;
}

void write_phase_csv(std::ostream& out, std::span<const PhaseRecord> records) {
  out << "c,n,trial,seed,gamma_star,theta,f_n,f_limit\n";
  for (const PhaseRecord& r : records) {
    out << fmt::format("{:.17g},{},{},{},{},{:.17g},{:.17g},{:.17g}\n", r.c, r.n, r.trial, r.seed,
                       r.gamma_star, r.theta, r.f_n, r.f_limit);
  }
}

void write_gamma_csv(std::ostream& out, std::span<const GammaRecord> records) {
  out << "c,n,trial,seed,gamma_star,lo,hi,in_window\n";
  for (const GammaRecord& r : records) {
    out << fmt::format("{:.17g},{},{},{},{},{:.17g},{:.17g},{}\n", r.c, r.n, r.trial, r.seed,
                       r.gamma_star, r.lo, r.hi, r.in_window ? 1 : 0);
  }
}

}  // namespace pfm
