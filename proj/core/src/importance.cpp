#include "hcensor/importance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hcensor/errors.hpp"

namespace hcensor {

ImportanceModel ImportanceModel::exponential(double mean) {
  if (!(mean > 0.0)) throw ConfigError("importance: exponential mean must be > 0");
  ImportanceModel m;
  m.kind_ = Kind::exponential;
  m.mean_ = mean;
  return m;
}

ImportanceModel ImportanceModel::empirical(
    std::vector<std::pair<double, double>> atoms) {
  if (atoms.empty()) throw ConfigError("importance: empirical atom list empty");
  std::sort(atoms.begin(), atoms.end());
  double total = 0.0, mean = 0.0;
  for (auto& [value, prob] : atoms) {
    if (!(value >= 0.0)) throw ConfigError("importance: atom value must be >= 0");
    if (!(prob >= 0.0)) throw ConfigError("importance: atom probability must be >= 0");
    total += prob;
    mean += value * prob;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ConfigError("importance: atom probabilities must sum to 1");
  ImportanceModel m;
  m.kind_ = Kind::empirical;
  m.mean_ = mean;
  m.atoms_ = std::move(atoms);
  double acc = 0.0;
  for (auto& [value, prob] : m.atoms_) {
    acc += prob;
    m.atom_cdf_.push_back(acc);
  }
  m.atom_cdf_.back() = 1.0;
  return m;
}

double ImportanceModel::cdf(double x) const {
  if (kind_ == Kind::exponential) {
    if (x < 0.0) return 0.0;
    return 1.0 - std::exp(-x / mean_);
  }
  double acc = 0.0;
  for (size_t i = 0; i < atoms_.size() && atoms_[i].first <= x; ++i)
    acc = atom_cdf_[i];
  return acc;
}

double ImportanceModel::cdf_strict(double x) const {
  if (kind_ == Kind::exponential) return cdf(x);
  double acc = 0.0;
  for (size_t i = 0; i < atoms_.size() && atoms_[i].first < x; ++i)
    acc = atom_cdf_[i];
  return acc;
}

double ImportanceModel::mean_excess(double a) const {
  if (a <= 0.0) return mean_ - a;
  if (std::isinf(a)) return 0.0;
  if (kind_ == Kind::exponential) return mean_ * std::exp(-a / mean_);
  double h = 0.0;
  for (auto& [value, prob] : atoms_)
    if (value > a) h += prob * (value - a);
  return h;
}

double ImportanceModel::transmitted_mean(double a) const {
  if (std::isinf(a) && a > 0.0) return 0.0;
  return mean_excess(a) + a * (1.0 - cdf_strict(a));
}

double ImportanceModel::quantile(double q) const {
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile: q outside [0,1]");
  if (kind_ == Kind::exponential) {
    if (q >= 1.0) return std::numeric_limits<double>::infinity();
    return -mean_ * std::log1p(-q);
  }
  for (size_t i = 0; i < atoms_.size(); ++i)
    if (atom_cdf_[i] >= q) return atoms_[i].first;
  return atoms_.back().first;
}

double ImportanceModel::sample(RngStream& rng) const {
  if (kind_ == Kind::exponential) return rng.exponential(mean_);
  double u = rng.u01();
  for (size_t i = 0; i < atoms_.size(); ++i)
    if (u < atom_cdf_[i]) return atoms_[i].first;
  return atoms_.back().first;
}

std::string ImportanceModel::describe() const {
  std::ostringstream os;
  if (kind_ == Kind::exponential) {
    os << "exponential(mean=" << mean_ << ")";
  } else {
    os << "empirical(";
    for (size_t i = 0; i < atoms_.size(); ++i) {
      if (i) os << ",";
      os << atoms_[i].first << ":" << atoms_[i].second;
    }
    os << ")";
  }
  return os.str();
}

ImportanceStats importance_stats(const ImportanceModel& model, double a) {
  return {model.cdf(a), model.mean_excess(a), model.transmitted_mean(a)};
}

}  // namespace hcensor
