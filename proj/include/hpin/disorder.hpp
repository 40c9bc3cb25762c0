#ifndef HPIN_DISORDER_HPP
#define HPIN_DISORDER_HPP

#include <cstdint>
#include <vector>

#include "hpin/errors.hpp"

namespace hpin {

inline constexpr int kDenseNMax = 12;  // cap for dense 2^n x 2^n materializations

// Hierarchically correlated Gaussian environment: Cov(w_i, w_j) = kappa^d(i,j),
// coupling beta, and the seed of the counter-based stream.
struct DisorderSpec {
  double kappa;
  double beta;
  uint64_t seed;

  DisorderSpec(double kappa_, double beta_, uint64_t seed_);
};

// One environment of 2^n leaves. Built from the binary-tree decomposition:
// independent standard normals per block at levels p = 0..n with weights
// sqrt(kappa^p - kappa^(p+1)), plus one shared root variable of weight
// sqrt(kappa^(n+1)) standing in for the infinite tail, so that the sampled
// covariance is exactly kappa^d(i,j) at finite n.
std::vector<double> sample_disorder(const DisorderSpec& spec, int n, uint64_t sample_index);

// Symmetric matrix whose entries depend only on the tree distance:
// M_ij = gen[d(i,j)].
struct HierMatrix {
  int n = 0;
  std::vector<double> gen;  // size n+1, gen[p] = m(p)

  double entry(uint64_t i, uint64_t j) const;  // 1-based
  std::vector<double> dense() const;           // row-major 2^n x 2^n, n <= 12
};

HierMatrix covariance_matrix(const DisorderSpec& spec, int n);

struct EigenClass {
  double value;
  int64_t multiplicity;
};

// Exact spectrum of a hierarchical matrix: lambda_0 with multiplicity 1 and
// lambda_p with multiplicity 2^(p-1) for p = 1..n. Analytic at any depth.
std::vector<EigenClass> hier_eigenvalues(const HierMatrix& m);

// The common orthogonal eigenbasis of all hierarchical matrices at depth n:
// the constant column followed by +/- half-block indicators, ordered so that
// Omega^T M Omega = diag(lambda_0, lambda_1, lambda_2, lambda_2, ...).
// Row-major 2^n x 2^n, n <= 12.
std::vector<double> build_omega(int n);

// K_infty = sum_p (2 kappa)^p = 1/(1-2 kappa); diverges for kappa >= 1/2,
// where the annealed model is ill-defined.
double k_infty(double kappa);

// Sample from an arbitrary PSD hierarchical covariance via Omega sqrt(Lambda) g.
// Used by spectral cross-checks; the kappa^p case goes through sample_disorder.
std::vector<double> sample_from_hier(const HierMatrix& m, uint64_t seed, uint64_t sample_index);

void write_samples_f64le(const std::string& path, const std::vector<std::vector<double>>& rows);
void write_samples_csv(const std::string& path, const std::vector<std::vector<double>>& rows);

}  // namespace hpin

#endif
