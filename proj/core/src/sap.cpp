#include "hcensor/sap.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace hcensor {

StepSchedule StepSchedule::constant(double eta) {
  if (!(eta >= 0.0) || eta > 1.0)
    throw std::invalid_argument("StepSchedule: constant eta outside [0,1]");
  StepSchedule s;
  s.is_constant = true;
  s.eta0 = eta;
  return s;
}

StepSchedule StepSchedule::decaying(double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("StepSchedule: delta must be > 0");
  StepSchedule s;
  s.is_constant = false;
  s.delta = delta;
  return s;
}

SapState::SapState(int battery, double gamma, StepSchedule schedule)
    : gamma(gamma), schedule(schedule) {
  if (battery < 1) throw std::invalid_argument("SapState: battery must be >= 1");
  size_t n = static_cast<size_t>(battery) + 1;
  lambda.assign(n, 0.0);
  alpha.assign(n, 0.0);
  beta.assign(n, 0.0);
  omega.assign(n, 0.0);
  mu.assign(n, 0.0);
}

int SapState::decide(EnergyLevel e, double x) const {
  return omega[static_cast<size_t>(e)] * x >= mu[static_cast<size_t>(e)] ? 1 : 0;
}

void SapState::observe(EnergyLevel e_before, EnergyLevel e_mid, EnergyLevel e_after,
                       int action, double x, long k) {
  const int B = capacity();
  const double eta = schedule.eta(k);
  const int c0 = e_before - e_mid;
  const int c1 = c0 + (e_mid - e_after);
  const size_t n = lambda.size();

  std::vector<double> lambda_next(n);
  for (size_t e = 0; e < n; ++e) {
    double drift = x * omega[e] - gamma * (alpha[e] - beta[e]);
    lambda_next[e] =
        (1.0 - eta) * lambda[e] + eta * (gamma * alpha[e] + (drift > 0.0 ? drift : 0.0));
  }
  if (e_after > 0) {
    for (size_t e = 0; e < n; ++e) {
      int shifted = clip(static_cast<long long>(e) - c0, B);
      alpha[e] = (1.0 - eta) * alpha[e] + eta * lambda[static_cast<size_t>(shifted)];
    }
    if (action == 1) {
      for (size_t e = 0; e < n; ++e) {
        int shifted = clip(static_cast<long long>(e) - c1, B);
        beta[e] = (1.0 - eta) * beta[e] + eta * lambda[static_cast<size_t>(shifted)];
        double w_c = static_cast<long long>(e) >= c1 ? 1.0 : 0.0;
        omega[e] = (1.0 - eta) * omega[e] + eta * w_c;
      }
    }
  }
  lambda = std::move(lambda_next);
  for (size_t e = 0; e < n; ++e) mu[e] = gamma * (alpha[e] - beta[e]);
}

std::vector<double> sap_matrix_step(const std::vector<double>& v, int c0, int c1,
                                    double x, double eta, double gamma) {
  if (v.size() % 4 != 0 || v.empty())
    throw std::invalid_argument("sap_matrix_step: v must stack 4 equal blocks");
  const long n = static_cast<long>(v.size() / 4);
  const int B = static_cast<int>(n) - 1;

  Eigen::MatrixXd T0 = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd T1 = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd w1(n);
  for (long e = 0; e < n; ++e) {
    T0(e, clip(e - c0, B)) = 1.0;
    T1(e, clip(e - c1, B)) = 1.0;
    w1(e) = e >= c1 ? 1.0 : 0.0;
  }
  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(n, n);

  Eigen::MatrixXd N(4 * n, 4 * n), M(4 * n, 4 * n);
  // block rows: lambda, alpha, beta, omega
  N << Z, -gamma * I, gamma * I, x * I,
       Z, Z, Z, Z,
       Z, Z, Z, Z,
       Z, Z, Z, Z;
  M << -I, gamma * I, Z, Z,
       T0, -I, Z, Z,
       T1, Z, -I, Z,
       Z, Z, Z, -I;
  Eigen::VectorXd wbar = Eigen::VectorXd::Zero(4 * n);
  wbar.segment(3 * n, n) = w1;

  Eigen::VectorXd vv = Eigen::Map<const Eigen::VectorXd>(v.data(), 4 * n);
  Eigen::VectorXd out =
      vv + eta * ((N * vv).cwiseMax(0.0) + M * vv + wbar);
  return std::vector<double>(out.data(), out.data() + 4 * n);
}

}  // namespace hcensor
