#ifndef HPIN_QUENCHED_HPP
#define HPIN_QUENCHED_HPP

#include <span>
#include <vector>

#include "hpin/disorder.hpp"
#include "hpin/kernels.hpp"
#include "hpin/lattice.hpp"

namespace hpin {

// log Z_n^w for a fixed environment: bottom-up log-domain fold of
// Z' = (Z_L Z_R + B - 1)/B over the full binary tree. O(2^n).
double quenched_log_partition(const LatticeSpec& spec, double h, double beta,
                              std::span<const double> omega);

// Joint (weight, contact-count) DP: a_n[s] = log E[e^H 1{S_n=s}]. O(4^n) total.
// When trace is non-null it receives the weight vector of the leftmost block
// at every level 0..n (each level's block 1 is a valid depth-k subsystem).
struct JointDpTrace {
  std::vector<LogWeightVector> block1;
};

LogWeightVector contact_weight_vector(const LatticeSpec& spec, double h, double beta,
                                      std::span<const double> omega,
                                      JointDpTrace* trace = nullptr);

// theta = kappa / (2 (1 - 2 kappa)); requires kappa < 1/2.
double aux_theta(double kappa);

// log of the auxiliary partition function Zbar with the theta beta^2 kappa^n S^2
// tilt, evaluated from a weight vector at its own depth.
double aux_from_weights(const LogWeightVector& w, double kappa, double beta);

// log Zbar_n^w = logsumexp_s ( a[s] + theta beta^2 kappa^n s^2 ).
double aux_log_partition(const LatticeSpec& spec, double h, const DisorderSpec& dis,
                         std::span<const double> omega);

struct FreeEnergyEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long samples = 0;
  double lower = 0.0;  // mean - 2^-n log B
  double upper = 0.0;  // mean + 2^-n log K_B
};

// Monte Carlo estimate of F_n = E[ 2^-n log Z_n^w ] over i.i.d. environments,
// with the deterministic finite-size bracket attached. Replica r uses
// sample_index r of the spec's counter stream, so results are bit-identical
// for any worker count.
FreeEnergyEstimate quenched_free_energy_mc(const LatticeSpec& spec, double h,
                                           const DisorderSpec& dis, long samples,
                                           int workers = 0);

}  // namespace hpin

#endif
