#pragma once

#include <vector>

#include "hcensor/energy.hpp"
#include "hcensor/rng.hpp"

namespace hcensor {

// Tabular Q-learning baseline over (battery, quantized importance) states.
// Importance is binned into n_bins levels: n_bins - 1 fixed-width bins on
// [0, x_max) plus one overflow bin.
struct QTable {
  QTable(int battery, double x_max, double gamma, int n_bins = 100,
         double alpha_q = 0.2, double epsilon = 0.1);

  int bin(double x) const {
    if (x >= x_max) return n_bins - 1;
    int b = static_cast<int>(x / x_max * (n_bins - 1));
    return b < 0 ? 0 : b;
  }

  double& q(EnergyLevel e, int xbin, int action) {
    return table[(static_cast<size_t>(e) * static_cast<size_t>(n_bins) +
                  static_cast<size_t>(xbin)) * 2 + static_cast<size_t>(action)];
  }
  double q(EnergyLevel e, int xbin, int action) const {
    return table[(static_cast<size_t>(e) * static_cast<size_t>(n_bins) +
                  static_cast<size_t>(xbin)) * 2 + static_cast<size_t>(action)];
  }

  // epsilon-greedy; greedy ties transmit.
  int decide(EnergyLevel e, double x, RngStream& rng);

  //   q(s,a) <- (1 - alpha_q) q(s,a) + alpha_q (r + gamma max_a' q(s',a'))
  void update(EnergyLevel e, int xbin, int action, double reward,
              EnergyLevel e_next, int xbin_next);

  int battery;
  int n_bins;
  double x_max;
  double gamma;
  double alpha_q;
  double epsilon;
  std::vector<double> table;  // (B+1) x n_bins x 2
};

}  // namespace hcensor
