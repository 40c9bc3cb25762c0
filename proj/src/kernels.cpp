#include "hpin/kernels.hpp"

#include <cmath>
#include <cstddef>

namespace hpin {

namespace {

// One output entry of the cross convolution. lo..hi is the s1 range of the
// diagonal s1 + s2 = s, stepped by `step`.
inline double conv_cell(const double* a, const double* b, long s, long lo, long hi, long step,
                        double coupling, double log_B) {
  double m = kNegInf;
  if (coupling == 0.0) {
    for (long s1 = lo; s1 <= hi; s1 += step) {
      const double t = a[s1] + b[s - s1];
      if (t > m) m = t;
    }
    if (m == kNegInf) return kNegInf;
    double sum = 0.0;
    for (long s1 = lo; s1 <= hi; s1 += step) {
      const double t = a[s1] + b[s - s1];
      if (t != kNegInf) sum += std::exp(t - m);
    }
    return m + std::log(sum) - log_B;
  }
  for (long s1 = lo; s1 <= hi; s1 += step) {
    double t = a[s1] + b[s - s1];
    if (t == kNegInf) continue;
    t += coupling * static_cast<double>(s1) * static_cast<double>(s - s1);
    if (t > m) m = t;
  }
  if (m == kNegInf) return kNegInf;
  double sum = 0.0;
  for (long s1 = lo; s1 <= hi; s1 += step) {
    double t = a[s1] + b[s - s1];
    if (t == kNegInf) continue;
    t += coupling * static_cast<double>(s1) * static_cast<double>(s - s1);
    sum += std::exp(t - m);
  }
  return m + std::log(sum) - log_B;
}

inline void diag_range(long s, long smax_a, long smax_b, bool even, long& lo, long& hi,
                       long& step) {
  lo = s > smax_b ? s - smax_b : 0;
  hi = s < smax_a ? s : smax_a;
  step = 1;
  if (even) {
    step = 2;
    if (lo & 1) ++lo;
    if (hi & 1) --hi;
  }
}

}  // namespace

std::vector<double> cross_convolve_serial(std::span<const double> left,
                                          std::span<const double> right, double coupling,
                                          double B, bool add_empty_atom, bool even_support) {
  const long smax_a = static_cast<long>(left.size()) - 1;
  const long smax_b = static_cast<long>(right.size()) - 1;
  const double log_B = std::log(B);
  std::vector<double> out(static_cast<size_t>(smax_a + smax_b) + 1);
  for (long s = 0; s <= smax_a + smax_b; ++s) {
    if (even_support && (s & 1)) {
      out[s] = kNegInf;
      continue;
    }
    long lo, hi, step;
    diag_range(s, smax_a, smax_b, even_support, lo, hi, step);
    out[s] = lo > hi ? kNegInf
                     : conv_cell(left.data(), right.data(), s, lo, hi, step, coupling, log_B);
  }
  if (add_empty_atom) out[0] = log_add(out[0], std::log((B - 1.0) / B));
  return out;
}

std::vector<double> cross_convolve(std::span<const double> left, std::span<const double> right,
                                   double coupling, double B, bool add_empty_atom,
                                   bool even_support) {
  const long smax_a = static_cast<long>(left.size()) - 1;
  const long smax_b = static_cast<long>(right.size()) - 1;
  const long n_out = smax_a + smax_b + 1;
  if (n_out < 256) {
    return cross_convolve_serial(left, right, coupling, B, add_empty_atom, even_support);
  }
  const double log_B = std::log(B);
  std::vector<double> out(static_cast<size_t>(n_out));
  const double* a = left.data();
  const double* b = right.data();
#pragma omp parallel for schedule(dynamic, 32)
  for (long s = 0; s < n_out; ++s) {
    if (even_support && (s & 1)) {
      out[s] = kNegInf;
      continue;
    }
    long lo, hi, step;
    diag_range(s, smax_a, smax_b, even_support, lo, hi, step);
    out[s] = lo > hi ? kNegInf : conv_cell(a, b, s, lo, hi, step, coupling, log_B);
  }
  if (add_empty_atom) out[0] = log_add(out[0], std::log((B - 1.0) / B));
  return out;
}

LogWeightVector convolve_level(const LogWeightVector& left, const LogWeightVector& right,
                               double coupling, double B, bool add_empty_atom) {
  LogWeightVector out;
  out.depth = left.depth + 1;
  const bool even = left.depth >= 1;
  out.a = cross_convolve(left.a, right.a, coupling, B, add_empty_atom, even);
  return out;
}

}  // namespace hpin
