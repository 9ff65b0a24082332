#include "pfm/measure.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <fmt/core.h>

#include "pfm/errors.hpp"

namespace pfm {

namespace {

constexpr double kSumTolerance = 1e-12;

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument(fmt::format("{}: {} is not a probability", what, p));
  }
}

void check_width(std::size_t n) {
  if (n > kMaxDenseCoordinates) {
    throw SizeLimitExceeded(
        fmt::format("measure on {} coordinates exceeds the dense cap of {}", n,
                    kMaxDenseCoordinates));
  }
}

std::vector<double> product_table(std::span<const double> params) {
  std::vector<double> table(std::size_t{1} << params.size());
  table[0] = 1.0;
  for (std::size_t k = 0; k < params.size(); ++k) {
    const std::size_t half = std::size_t{1} << k;
    const double p = params[k];
    for (std::size_t x = 0; x < half; ++x) {
      table[x | half] = table[x] * p;
      table[x] *= 1.0 - p;
    }
  }
  return table;
}

void check_same_width(const Measure& a, const Measure& b, const char* what) {
  if (a.num_coordinates() != b.num_coordinates()) {
    throw InvalidArgument(fmt::format("{}: dimension mismatch ({} vs {})", what,
                                      a.num_coordinates(), b.num_coordinates()));
  }
}

void check_same_width(const Measure& m, const Event& e, const char* what) {
  if (m.num_coordinates() != e.num_coordinates()) {
    throw InvalidArgument(fmt::format("{}: dimension mismatch ({} vs {})", what,
                                      m.num_coordinates(), e.num_coordinates()));
  }
}

}  // namespace

Measure Measure::dense(std::size_t n, std::vector<double> table) {
  check_width(n);
  if (table.size() != (std::size_t{1} << n)) {
    throw InvalidArgument(
        fmt::format("dense measure on {} coordinates needs {} entries, got {}", n,
                    std::size_t{1} << n, table.size()));
  }
  double total = 0.0;
  for (double v : table) {
    if (!(v >= 0.0)) throw InvalidArgument("dense measure: negative or NaN mass");
    total += v;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw InvalidArgument(fmt::format("dense measure: total mass {:.17g} is not 1", total));
  }
  Measure m;
  m.n_ = n;
  m.form_ = Form::dense;
  m.table_ = std::move(table);
  return m;
}

Measure Measure::product(std::vector<double> params) {
  check_width(params.size());
  for (double p : params) check_probability(p, "product measure parameter");
  Measure m;
  m.n_ = params.size();
  m.form_ = Form::product;
  m.table_ = product_table(params);
  m.params_ = std::move(params);
  return m;
}

Measure Measure::mixture(std::vector<double> weights, std::vector<Measure> components) {
  if (weights.empty() || weights.size() != components.size()) {
    throw InvalidArgument("mixture: need one weight per component and at least one component");
  }
  double total = 0.0;
  for (double w : weights) {
    check_probability(w, "mixture weight");
    total += w;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw InvalidArgument(fmt::format("mixture: weights sum to {:.17g}, not 1", total));
  }
  const std::size_t n = components.front().num_coordinates();
  for (const Measure& c : components) {
    if (c.form() != Form::product) throw InvalidArgument("mixture: components must be products");
    if (c.num_coordinates() != n) throw InvalidArgument("mixture: components differ in dimension");
  }
  Measure m;
  m.n_ = n;
  m.form_ = Form::mixture;
  m.table_.assign(std::size_t{1} << n, 0.0);
  for (std::size_t k = 0; k < components.size(); ++k) {
    const auto t = components[k].table();
    for (std::size_t x = 0; x < t.size(); ++x) m.table_[x] += weights[k] * t[x];
  }
  m.weights_ = std::move(weights);
  m.components_ = std::move(components);
  return m;
}

Measure Measure::point_mass(std::size_t n, Config x) {
  check_width(n);
  if ((x >> n) != 0) throw InvalidArgument("point_mass: configuration out of range");
  std::vector<double> table(std::size_t{1} << n, 0.0);
  table[x] = 1.0;
  return dense(n, std::move(table));
}

std::span<const double> Measure::product_params() const {
  if (form_ != Form::product) throw InvalidArgument("measure is not a product measure");
  return params_;
}

std::span<const double> Measure::mixture_weights() const {
  if (form_ != Form::mixture) throw InvalidArgument("measure is not a mixture");
  return weights_;
}

std::span<const Measure> Measure::mixture_components() const {
  if (form_ != Form::mixture) throw InvalidArgument("measure is not a mixture");
  return components_;
}

Event::Event(std::size_t n, std::vector<std::uint8_t> members) : n_(n), members_(std::move(members)) {
  check_width(n);
  if (members_.size() != (std::size_t{1} << n)) {
    throw InvalidArgument("event: membership table must have 2^n entries");
  }
}

Event Event::from_predicate(std::size_t n, const std::function<bool(Config)>& pred) {
  check_width(n);
  std::vector<std::uint8_t> members(std::size_t{1} << n);
  for (std::size_t x = 0; x < members.size(); ++x) members[x] = pred(static_cast<Config>(x)) ? 1 : 0;
  return Event(n, std::move(members));
}

Event Event::full(std::size_t n) {
  check_width(n);
  return Event(n, std::vector<std::uint8_t>(std::size_t{1} << n, 1));
}

Event Event::empty(std::size_t n) {
  check_width(n);
  return Event(n, std::vector<std::uint8_t>(std::size_t{1} << n, 0));
}

Event Event::coordinate(std::size_t n, std::size_t k, bool value) {
  if (k >= n) throw InvalidArgument("event: coordinate out of range");
  return from_predicate(n, [k, value](Config x) { return ((x >> k) & 1u) == (value ? 1u : 0u); });
}

std::size_t Event::size() const {
  return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), std::uint8_t{1}));
}

Event Event::operator&(const Event& other) const {
  if (n_ != other.n_) throw InvalidArgument("event intersection: dimension mismatch");
  std::vector<std::uint8_t> out(members_.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = members_[x] & other.members_[x];
  return Event(n_, std::move(out));
}

Event Event::operator|(const Event& other) const {
  if (n_ != other.n_) throw InvalidArgument("event union: dimension mismatch");
  std::vector<std::uint8_t> out(members_.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = members_[x] | other.members_[x];
  return Event(n_, std::move(out));
}

Event Event::operator~() const {
  std::vector<std::uint8_t> out(members_.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = members_[x] ^ 1u;
  return Event(n_, std::move(out));
}

Measure product_measure(std::vector<double> params) { return Measure::product(std::move(params)); }

Measure mixture(std::vector<double> weights, std::vector<Measure> components) {
  return Measure::mixture(std::move(weights), std::move(components));
}

double prob(const Measure& m, const Event& e) {
  check_same_width(m, e, "prob");
  const auto t = m.table();
  double total = 0.0;
  for (std::size_t x = 0; x < t.size(); ++x) {
    if (e.contains(static_cast<Config>(x))) total += t[x];
  }
  return total;
}

double conditional(const Measure& m, const Event& a, const Event& given) {
  check_same_width(m, a, "conditional");
  check_same_width(m, given, "conditional");
  const auto t = m.table();
  double joint = 0.0;
  double base = 0.0;
  for (std::size_t x = 0; x < t.size(); ++x) {
    const auto cx = static_cast<Config>(x);
    if (!given.contains(cx)) continue;
    base += t[x];
    if (a.contains(cx)) joint += t[x];
  }
  if (base <= 0.0) throw UndefinedConditional("conditioning event has probability zero");
  return joint / base;
}

double failure_free_prob(const Measure& m) { return m.mass(0); }

Measure complement_measure(const Measure& m) {
  switch (m.form()) {
    case Measure::Form::product: {
      std::vector<double> params;
      for (double p : m.product_params()) params.push_back(1.0 - p);
      return Measure::product(std::move(params));
    }
    case Measure::Form::mixture: {
      std::vector<Measure> parts;
      for (const Measure& c : m.mixture_components()) parts.push_back(complement_measure(c));
      const auto w = m.mixture_weights();
      return Measure::mixture({w.begin(), w.end()}, std::move(parts));
    }
    case Measure::Form::dense:
      break;
  }
  const auto t = m.table();
  const std::size_t all = t.size() - 1;
  std::vector<double> flipped(t.size());
  for (std::size_t x = 0; x < t.size(); ++x) flipped[x ^ all] = t[x];
  return Measure::dense(m.num_coordinates(), std::move(flipped));
}

double tv_distance(const Measure& m1, const Measure& m2) {
  check_same_width(m1, m2, "tv_distance");
  const auto a = m1.table();
  const auto b = m2.table();
  double total = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) total += std::abs(a[x] - b[x]);
  return 0.5 * total;
}

std::string config_string(Config x, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t k = 0; k < n; ++k) {
    if ((x >> k) & 1u) s[k] = '1';
  }
  return s;
}

Config parse_config(std::string_view bits) {
  if (bits.size() > 32) throw InvalidArgument("configuration string longer than 32 bits");
  Config x = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] == '1') {
      x |= Config{1} << k;
    } else if (bits[k] != '0') {
      throw InvalidArgument(fmt::format("bad configuration string \"{}\"", bits));
    }
  }
  return x;
}

void write_measure(std::ostream& out, const Measure& m) {
  const std::size_t n = m.num_coordinates();
  switch (m.form()) {
    case Measure::Form::product: {
      out << "product " << n << '\n';
      for (double p : m.product_params()) out << fmt::format("{:.17g}\n", p);
      return;
    }
    case Measure::Form::mixture: {
      const auto w = m.mixture_weights();
      const auto parts = m.mixture_components();
      out << "mixture " << n << ' ' << w.size() << '\n';
      for (std::size_t k = 0; k < w.size(); ++k) {
        out << fmt::format("{:.17g}", w[k]);
        for (double p : parts[k].product_params()) out << fmt::format(" {:.17g}", p);
        out << '\n';
      }
      return;
    }
    case Measure::Form::dense:
      break;
  }
  out << n << '\n';
  const auto t = m.table();
  for (std::size_t x = 0; x < t.size(); ++x) {
    out << config_string(static_cast<Config>(x), n) << fmt::format(" {:.17g}\n", t[x]);
  }
}

Measure read_measure(std::istream& in) {
  std::string head;
  if (!(in >> head)) throw InvalidArgument("measure: empty input");
  auto read_double = [&in](const char* what) {
    double v = 0.0;
    if (!(in >> v)) throw InvalidArgument(fmt::format("measure: expected {}", what));
    return v;
  };
  auto read_size = [&in](const char* what) {
    long long v = 0;
    if (!(in >> v) || v < 0) throw InvalidArgument(fmt::format("measure: expected {}", what));
    return static_cast<std::size_t>(v);
  };

  if (head == "product") {
    const std::size_t n = read_size("coordinate count");
    std::vector<double> params(n);
    for (double& p : params) p = read_double("product parameter");
    return Measure::product(std::move(params));
  }
  if (head == "mixture") {
    const std::size_t n = read_size("coordinate count");
    const std::size_t k = read_size("component count");
    std::vector<double> weights(k);
    std::vector<Measure> parts;
    for (std::size_t c = 0; c < k; ++c) {
      weights[c] = read_double("mixture weight");
      std::vector<double> params(n);
      for (double& p : params) p = read_double("component parameter");
      parts.push_back(Measure::product(std::move(params)));
    }
    return Measure::mixture(std::move(weights), std::move(parts));
  }

  std::size_t n = 0;
  try {
    n = static_cast<std::size_t>(std::stoul(head));
  } catch (const std::exception&) {
    throw InvalidArgument(fmt::format("measure: unknown header \"{}\"", head));
  }
  check_width(n);
  std::vector<double> table(std::size_t{1} << n, 0.0);
  std::string bits;
  while (in >> bits) {
    if (bits.size() != n) throw InvalidArgument("measure: bitmask width does not match n");
    table[parse_config(bits)] = read_double("probability");
  }
  return Measure::dense(n, std::move(table));
}

}  // namespace pfm
