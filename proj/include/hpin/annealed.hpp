#ifndef HPIN_ANNEALED_HPP
#define HPIN_ANNEALED_HPP

#include <vector>

#include "hpin/kernels.hpp"
#include "hpin/lattice.hpp"

namespace hpin {

// Exact annealed weight vector A_n[s] = log E_n[e^{H^a} 1{S_n=s}], built by the
// level recursion with cross coupling beta^2 kappa^(k+1) s1 s2 between the two
// half-blocks. Blocks at equal depth share one vector (the model is
// self-similar), so one vector per level suffices.
struct AnnealedState {
  double B = 0, kappa = 0, beta = 0, h = 0;
  int n = 0;
  LogWeightVector weights;          // depth n
  std::vector<double> log_za;      // log Z^a_k, k = 0..n
  std::vector<double> log_zbar;    // log Zbar^a_k, k = 0..n; empty when kappa >= 1/2
};

AnnealedState annealed_weight_vector(double B, double kappa, double beta, double h, int n,
                                     int n_max = kDefaultNMax);

double annealed_log_partition(const AnnealedState& st);
double aux_annealed_log_partition(const AnnealedState& st);

// E^a[S_n^m] for m = 1..m_max under the annealed polymer measure at depth n.
std::vector<double> annealed_moments(const AnnealedState& st, int m_max);

// E_n[delta_i delta_j e^{H^a}] for a pair at tree distance p (value independent
// of the representative pair). Computed with marked weight vectors: the marked
// block carries log E[delta_leftmost e^{H} 1{S=s}] and never receives the
// empty atom.
double annealed_pair_correlation(double B, double kappa, double beta, double h, int n, int p,
                                 int n_max = kDefaultNMax);

enum class Phase { Localized, Delocalized, Undecided };

struct ClassifyResult {
  Phase phase = Phase::Undecided;
  int fired_level = -1;
  int levels_run = 0;
  double max_za = 0.0;    // max_k Z^a_k over levels run
  double min_zbar = 0.0;  // min_k Zbar^a_k over levels run
};

// Certificate-driven phase decision at a single h.
//
// LOCALIZED  if some Z^a_k certifiably exceeds 1: the super-recursion
//            Z^a_{k+1} >= (Z^a_k^2 + B - 1)/B lets the deterministic map
//            iterate past B, giving F^a >= 2^-(k+j) log(f^j(Z^a_k)/B) > 0.
// DELOCALIZED if some Zbar^a_k < 1: the sub-recursion keeps Zbar <= 1 forever,
//            hence Fbar^a = F^a = 0.
// UNDECIDED  otherwise; first-class result, never coerced into a phase.
//
// margin absorbs DP round-off on both sides (a certificate fires only when
// the value clears 1 by more than margin).
ClassifyResult classify_annealed(double B, double kappa, double beta, double h, int n,
                                 double margin = 1e-9, int n_max = kDefaultNMax);

struct CriticalPointResult {
  double h_lo = 0.0;  // highest h certified delocalized
  double h_hi = 0.0;  // lowest h certified localized
  int n_used = 0;
  double loc_certificate = 0.0;    // max_k Z^a_k at h_hi
  double deloc_certificate = 0.0;  // min_k Zbar^a_k at h_lo
  int loc_fired_level = -1;
  int deloc_fired_level = -1;
  long evaluations = 0;

  double midpoint() const { return 0.5 * (h_lo + h_hi); }
  double window() const { return h_hi - h_lo; }
};

// Bisection for h_c^a over the seed bracket
// [-beta^2 (1+kappa/(1-2kappa))/2 * 1.01, -beta^2/2], expanding if neither
// endpoint certifies. Both certificate boundaries are refined to tol; the
// remaining window is reported honestly.
CriticalPointResult find_annealed_critical_point(double B, double kappa, double beta, int n,
                                                 double tol, int n_max = kDefaultNMax);

struct ProfileRow {
  int n = 0;
  double log_za = 0.0;
  double log_zbar = 0.0;       // NaN when kappa >= 1/2
  double es1 = 0.0;            // E^a[S_n]
  double log_prod = 0.0;       // sum_{p<n} log Z^a_p
  double log_prod_bound = 0.0; // log[(1/(beta sqrt(kappa))) (B/(2 sqrt(kappa)))^n]; NaN if kappa*beta = 0
};

struct CriticalityProfile {
  double h = 0.0;
  std::vector<ProfileRow> rows;
};

CriticalityProfile criticality_profile(double B, double kappa, double beta, int n_lo, int n_hi,
                                       double h, int n_max = kDefaultNMax);

// e^slope of the least-squares fit of log E^a[S_n] against n over [n_from, n_to].
double profile_growth_rate(const CriticalityProfile& prof, int n_from, int n_to);

}  // namespace hpin

#endif
