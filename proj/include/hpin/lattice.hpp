#ifndef HPIN_LATTICE_HPP
#define HPIN_LATTICE_HPP

#include <cstdint>
#include <vector>

#include "hpin/errors.hpp"
#include "hpin/kernels.hpp"

namespace hpin {

inline constexpr int kDefaultNMax = 16;   // exact DP cap
inline constexpr int kEnumerateNMax = 4;  // brute-force enumeration cap

// Geometry of the hierarchical lattice: parameter B in (1,2) and depth n,
// i.e. 2^n leaves. The offspring law of the associated Galton-Watson tree
// is 0 children w.p. (B-1)/B and 2 w.p. 1/B.
struct LatticeSpec {
  double B;
  int n;
  int n_max;

  explicit LatticeSpec(double B_, int n_, int n_max_ = kDefaultNMax);

  uint64_t leaves() const { return uint64_t{1} << n; }
};

// Sorted 1-based leaf indices in {1,...,2^n}.
using LeafSet = std::vector<uint32_t>;

// Smallest p such that i and j lie in the same block of size 2^p
// (tree distance on the leaves of the infinite binary tree). 1-based leaves.
int tree_distance(uint64_t i, uint64_t j);

// Number of internal nodes (root counted, leaves not) of the union of
// root-to-leaf paths for the leaves in I. Errors on empty I.
int subtree_node_count(const LatticeSpec& spec, const LeafSet& leaves);

// E_n[delta_I] = B^{-v(n,I)}; 1 for empty I.
double gw_marginal(const LatticeSpec& spec, const LeafSet& leaves);

// A realizable leaf configuration with its exact probability, kept as
// integer exponents: prob = (B-1)^deaths / B^(deaths+branches).
struct GWOutcome {
  LeafSet leaves;
  int deaths = 0;
  int branches = 0;

  double probability(double B) const;
  double log_probability(double B) const;
};

// Complete list of realizations at depth n (n <= 4). Entries are realization
// paths, not merged by leaf set: the empty set appears once per way the
// population can die out, so counts follow g(0)=1, g(m+1)=g(m)^2+1.
std::vector<GWOutcome> enumerate_gw(const LatticeSpec& spec);

// Exact law of the contact number S_n under the Galton-Watson measure,
// kept in log domain so the deep tail stays resolvable.
struct ContactDistribution {
  int n = 0;
  std::vector<double> log_pmf;  // size 2^n + 1

  std::vector<double> pmf() const;
  double mean() const;
};

ContactDistribution contact_distribution(const LatticeSpec& spec);

// log Z_n^pure at field u; equals the contact MGF log E_n[e^{u S_n}].
// The iterate is tracked as P = Z-1 while |P| is moderate (the map
// P -> P(2+P)/B is cancellation-free near the fixed point Z=1) and switches
// to the log recursion once the localized growth takes over.
double pure_log_partition(const LatticeSpec& spec, double u);
double pure_log_partition(double B, double u, int n);

struct PureFreeEnergy {
  double value = 0.0;
  int n_used = 0;
  double bracket_width = 0.0;
};

// Infinite-volume pure free energy: grows n until the deterministic
// finite-size bracket [F_n - 2^-n log B, F_n + 2^-n log K_B] is narrower
// than tol, with K_B = (B^2+B-1)/(B(B-1)). F(u) = 0 exactly for u <= 0.
PureFreeEnergy pure_free_energy(double B, double u, double tol);

// Pure critical exponent log 2 / log(2/B), valid for B in (1,2).
double pure_exponent(double B);

inline double k_B(double B) { return (B * B + B - 1.0) / (B * (B - 1.0)); }

}  // namespace hpin

#endif
