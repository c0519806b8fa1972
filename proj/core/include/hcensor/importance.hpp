#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hcensor/rng.hpp"

namespace hcensor {

// Message importance distribution: exponential(mean) or a finite list of
// nonnegative atoms. Atoms keep the transmit-on-equality convention exact:
// censor mass at threshold t is P{x < t}, transmitted mean uses P{x >= t}.
class ImportanceModel {
 public:
  enum class Kind { exponential, empirical };

  static ImportanceModel exponential(double mean);
  // atoms: (value, probability); probabilities must sum to 1 within 1e-12.
  static ImportanceModel empirical(std::vector<std::pair<double, double>> atoms);

  Kind kind() const { return kind_; }
  double mean() const { return mean_; }
  const std::vector<std::pair<double, double>>& atoms() const { return atoms_; }

  double cdf(double x) const;         // P{X <= x}
  double cdf_strict(double x) const;  // P{X < x}

  // h(a) = E{(X - a)+}; defined for all real a (equals mean - a for a <= 0).
  double mean_excess(double a) const;

  // g(a) = E{X . 1{X >= a}} = h(a) + a P{X >= a}; g(+inf) = 0.
  double transmitted_mean(double a) const;

  // Smallest x with P{X <= x} >= q; +inf when q = 1 for exponential.
  double quantile(double q) const;

  double sample(RngStream& rng) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::exponential;
  double mean_ = 1.0;
  std::vector<std::pair<double, double>> atoms_;  // sorted by value
  std::vector<double> atom_cdf_;
};

struct ImportanceStats {
  double cdf;
  double mean_excess;
  double transmitted_mean;
};

ImportanceStats importance_stats(const ImportanceModel& model, double a);

}  // namespace hcensor
