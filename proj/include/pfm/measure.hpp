#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pfm {

// A configuration ω ∈ {0,1}^n packed into a word: bit k is ω(k), i.e. the
// state of vertex k (printed as vertex k + 1). A set bit means "failed" for
// failure laws and "did not fail" for their complements.
using Config = std::uint32_t;

inline constexpr std::size_t kMaxDenseCoordinates = 20;

// Tolerance used by every inequality check unless the caller overrides it.
inline constexpr double kDefaultTolerance = 1e-9;

// Exact probability measure on {0,1}^n, n <= 20.
//
// The dense table is always materialized (at most 8 MiB). Product and mixture
// measures also keep their parameters so that callers needing the structure
// (FKG requires a product measure; serialization prints parameters) can get
// at it.
class Measure {
 public:
  enum class Form { dense, product, mixture };

  // Throws InvalidArgument unless entries are nonnegative and sum to 1 within
  // 1e-12.
  static Measure dense(std::size_t n, std::vector<double> table);
  // Independent coordinates with P(ω(k) = 1) = params[k].
  static Measure product(std::vector<double> params);
  // Σ weights[k] · components[k]; components must all be product measures on
  // the same number of coordinates.
  static Measure mixture(std::vector<double> weights, std::vector<Measure> components);
  static Measure point_mass(std::size_t n, Config x);

  std::size_t num_coordinates() const { return n_; }
  std::size_t num_configs() const { return table_.size(); }
  Form form() const { return form_; }

  std::span<const double> table() const { return table_; }
  double mass(Config x) const { return table_[x]; }

  // Available for Form::product only.
  std::span<const double> product_params() const;
  // Available for Form::mixture only.
  std::span<const double> mixture_weights() const;
  std::span<const Measure> mixture_components() const;

 private:
  Measure() = default;

  std::size_t n_ = 0;
  Form form_ = Form::dense;
  std::vector<double> table_;
  std::vector<double> params_;
  std::vector<double> weights_;
  std::vector<Measure> components_;
};

// Subset of {0,1}^n, stored as a 2^n membership table.
class Event {
 public:
  Event(std::size_t n, std::vector<std::uint8_t> members);

  static Event from_predicate(std::size_t n, const std::function<bool(Config)>& pred);
  static Event full(std::size_t n);
  static Event empty(std::size_t n);
  // {ω : ω(k) = value}
  static Event coordinate(std::size_t n, std::size_t k, bool value);

  std::size_t num_coordinates() const { return n_; }
  bool contains(Config x) const { return members_[x] != 0; }
  std::size_t size() const;

  Event operator&(const Event& other) const;
  Event operator|(const Event& other) const;
  Event operator~() const;
  friend bool operator==(const Event&, const Event&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> members_;
};

Measure product_measure(std::vector<double> params);
Measure mixture(std::vector<double> weights, std::vector<Measure> components);

double prob(const Measure& m, const Event& e);

// P(a | given). Throws UndefinedConditional when P(given) = 0.
double conditional(const Measure& m, const Event& a, const Event& given);

// Mass of the all-zeros configuration: the probability that nothing failed.
double failure_free_prob(const Measure& m);

// Law of the bit-flipped configuration. An involution that keeps the form.
Measure complement_measure(const Measure& m);

// sup_A |m1(A) − m2(A)| = ½ Σ_ω |m1(ω) − m2(ω)|.
double tv_distance(const Measure& m1, const Measure& m2);

// Binary string of x over n coordinates, coordinate 0 leftmost.
std::string config_string(Config x, std::size_t n);
Config parse_config(std::string_view bits);

// Dense text format: first line n, then 2^n lines "bitmask probability" with
// the bitmask as a binary string, coordinate 1 leftmost. Product and mixture
// forms are written as labeled parameter lists instead.
void write_measure(std::ostream& out, const Measure& m);
// Reads any of the formats produced by write_measure. In the dense format
// lines may come in any order and missing configurations get mass 0.
Measure read_measure(std::istream& in);

}  // namespace pfm
