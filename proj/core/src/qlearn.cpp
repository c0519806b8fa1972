#include "hcensor/qlearn.hpp"

#include <algorithm>
#include <stdexcept>

namespace hcensor {

QTable::QTable(int battery, double x_max, double gamma, int n_bins, double alpha_q,
               double epsilon)
    : battery(battery),
      n_bins(n_bins),
      x_max(x_max),
      gamma(gamma),
      alpha_q(alpha_q),
      epsilon(epsilon) {
  if (battery < 1) throw std::invalid_argument("QTable: battery must be >= 1");
  if (n_bins < 2) throw std::invalid_argument("QTable: need at least 2 bins");
  if (!(x_max > 0.0)) throw std::invalid_argument("QTable: x_max must be > 0");
  table.assign(static_cast<size_t>(battery + 1) * static_cast<size_t>(n_bins) * 2,
               0.0);
}

int QTable::decide(EnergyLevel e, double x, RngStream& rng) {
  if (rng.u01() < epsilon) return rng.uniform_int(0, 1);
  int b = bin(x);
  return q(e, b, 1) >= q(e, b, 0) ? 1 : 0;
}

void QTable::update(EnergyLevel e, int xbin, int action, double reward,
                    EnergyLevel e_next, int xbin_next) {
  double best = std::max(q(e_next, xbin_next, 0), q(e_next, xbin_next, 1));
  double& cell = q(e, xbin, action);
  cell = (1.0 - alpha_q) * cell + alpha_q * (reward + gamma * best);
}

}  // namespace hcensor
