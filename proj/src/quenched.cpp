#include "hpin/quenched.hpp"

#include <omp.h>

#include <cmath>
#include <stdexcept>

namespace hpin {

namespace {

// log((e^t + B - 1)/B) without overflow at either end.
inline double pair_step(double t, double B, double log_B) {
  if (t < -30.0) return std::log((B - 1.0) / B) + std::log1p(std::exp(t) / (B - 1.0));
  return t - log_B + std::log1p((B - 1.0) * std::exp(-t));
}

}  // namespace

double quenched_log_partition(const LatticeSpec& spec, double h, double beta,
                              std::span<const double> omega) {
  if (omega.size() != spec.leaves())
    throw std::invalid_argument("quenched_log_partition: omega length != 2^n");
  const double B = spec.B;
  const double log_B = std::log(B);
  std::vector<double> l(omega.size());
  for (size_t i = 0; i < omega.size(); ++i) l[i] = beta * omega[i] + h;
  for (size_t len = l.size(); len > 1; len /= 2) {
    for (size_t i = 0; i < len / 2; ++i) {
      l[i] = pair_step(l[2 * i] + l[2 * i + 1], B, log_B);
    }
  }
  return l[0];
}

LogWeightVector contact_weight_vector(const LatticeSpec& spec, double h, double beta,
                                      std::span<const double> omega, JointDpTrace* trace) {
  if (omega.size() != spec.leaves())
    throw std::invalid_argument("contact_weight_vector: omega length != 2^n");
  std::vector<LogWeightVector> level(omega.size());
  for (size_t i = 0; i < omega.size(); ++i) {
    level[i].depth = 0;
    level[i].a = {kNegInf, beta * omega[i] + h};
  }
  if (trace) {
    trace->block1.clear();
    trace->block1.push_back(level[0]);
  }
  for (int k = 0; k < spec.n; ++k) {
    const long nodes = static_cast<long>(level.size()) / 2;
    std::vector<LogWeightVector> next(nodes);
    // Upper levels have few wide nodes (the kernel parallelizes internally);
    // lower levels have many narrow ones, parallelized here.
#pragma omp parallel for schedule(dynamic) if (nodes >= 8)
    for (long i = 0; i < nodes; ++i) {
      next[i] = convolve_level(level[2 * i], level[2 * i + 1], 0.0, spec.B, true);
    }
    level = std::move(next);
    if (trace) trace->block1.push_back(level[0]);
  }
  return std::move(level[0]);
}

double aux_theta(double kappa) {
  if (kappa >= 0.5)
    throw DivergenceError("aux_theta: theta = kappa/(2(1-2kappa)) undefined for kappa >= 1/2");
  return kappa / (2.0 * (1.0 - 2.0 * kappa));
}

double aux_from_weights(const LogWeightVector& w, double kappa, double beta) {
  const double theta = aux_theta(kappa);
  const double coef = theta * beta * beta * std::pow(kappa, w.depth);
  double m = kNegInf;
  for (size_t s = 0; s < w.a.size(); ++s) {
    if (w.a[s] == kNegInf) continue;
    const double t = w.a[s] + coef * static_cast<double>(s) * static_cast<double>(s);
    if (t > m) m = t;
  }
  if (m == kNegInf) return kNegInf;
  double sum = 0.0;
  for (size_t s = 0; s < w.a.size(); ++s) {
    if (w.a[s] == kNegInf) continue;
    const double t = w.a[s] + coef * static_cast<double>(s) * static_cast<double>(s);
    sum += std::exp(t - m);
  }
  return m + std::log(sum);
}

double aux_log_partition(const LatticeSpec& spec, double h, const DisorderSpec& dis,
                         std::span<const double> omega) {
  const LogWeightVector w = contact_weight_vector(spec, h, dis.beta, omega);
  return aux_from_weights(w, dis.kappa, dis.beta);
}

FreeEnergyEstimate quenched_free_energy_mc(const LatticeSpec& spec, double h,
                                           const DisorderSpec& dis, long samples, int workers) {
  if (samples < 2) throw std::invalid_argument("quenched_free_energy_mc: samples must be >= 2");
  std::vector<double> vals(samples);
#pragma omp parallel for schedule(dynamic, 4) num_threads(workers > 0 ? workers : omp_get_max_threads())
  for (long r = 0; r < samples; ++r) {
    const auto omega = sample_disorder(dis, spec.n, static_cast<uint64_t>(r));
    vals[r] = std::ldexp(quenched_log_partition(spec, h, dis.beta, omega), -spec.n);
  }
  const auto ms = mean_stderr(vals);
  FreeEnergyEstimate est;
  est.mean = ms.mean;
  est.stderr_ = ms.stderr_;
  est.samples = samples;
  est.lower = ms.mean - std::ldexp(std::log(spec.B), -spec.n);
  est.upper = ms.mean + std::ldexp(std::log(k_B(spec.B)), -spec.n);
  return est;
}

}  // namespace hpin
