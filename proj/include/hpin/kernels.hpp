#ifndef HPIN_KERNELS_HPP
#define HPIN_KERNELS_HPP

#include <span>
#include <vector>

#include "hpin/logspace.hpp"

namespace hpin {

// Central DP state: a[s] = log E[e^{H} 1{S_depth = s}] over contact counts
// s in {0,...,2^depth}. -inf marks zero weight; odd entries are -inf for
// depth >= 1 (surviving leaves come in sibling pairs).
struct LogWeightVector {
  int depth = 0;
  std::vector<double> a;

  double log_partition() const { return logsumexp(a); }
};

// One renormalization step in log domain.
//
//   out[s] = log( (1/B) * sum_{s1+s2=s} exp(left[s1] + right[s2] + coupling*s1*s2) )
//
// and, when add_empty_atom, the no-offspring weight (B-1)/B is log-added at
// s=0. The s1*s2 kernel makes this a non-Toeplitz convolution; it is done as
// a direct double loop with max-shift normalization. even_support skips odd
// entries of both inputs (valid for any block of depth >= 1).
std::vector<double> cross_convolve_serial(std::span<const double> left,
                                          std::span<const double> right, double coupling,
                                          double B, bool add_empty_atom, bool even_support);

// OpenMP version, parallel over output entries. Each entry runs the same
// scalar loop as the serial kernel, so results are bit-identical to
// cross_convolve_serial for any thread count.
std::vector<double> cross_convolve(std::span<const double> left, std::span<const double> right,
                                   double coupling, double B, bool add_empty_atom,
                                   bool even_support);

// DP step on weight vectors; picks the parallel kernel for large levels.
LogWeightVector convolve_level(const LogWeightVector& left, const LogWeightVector& right,
                               double coupling, double B, bool add_empty_atom);

}  // namespace hpin

#endif
