#include "hpin/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace hpin {

LatticeSpec::LatticeSpec(double B_, int n_, int n_max_) : B(B_), n(n_), n_max(n_max_) {
  if (!(B > 1.0) || !(B < 2.0)) throw std::invalid_argument("LatticeSpec: B must be in (1,2)");
  if (n < 0) throw std::invalid_argument("LatticeSpec: n must be >= 0");
  if (n > n_max) throw SizeLimitError("LatticeSpec: n exceeds n_max");
}

int tree_distance(uint64_t i, uint64_t j) {
  if (i < 1 || j < 1) throw std::invalid_argument("tree_distance: leaves are 1-based");
  return std::bit_width((i - 1) ^ (j - 1));
}

int subtree_node_count(const LatticeSpec& spec, const LeafSet& leaves) {
  if (leaves.empty()) throw std::invalid_argument("subtree_node_count: empty leaf set");
  for (uint32_t i : leaves) {
    if (i < 1 || i > spec.leaves())
      throw std::invalid_argument("subtree_node_count: leaf out of range");
  }
  // Internal node at depth d on the path to leaf i is the block (i-1) >> (n-d).
  // At n=0 the leaf is the root and is not counted, consistent with
  // E_0[delta_1] = 1.
  int count = 0;
  std::vector<uint32_t> ids;
  ids.reserve(leaves.size());
  for (int d = 0; d < spec.n; ++d) {
    ids.clear();
    for (uint32_t i : leaves) ids.push_back((i - 1) >> (spec.n - d));
    std::sort(ids.begin(), ids.end());
    count += static_cast<int>(std::unique(ids.begin(), ids.end()) - ids.begin());
  }
  return count;
}

double gw_marginal(const LatticeSpec& spec, const LeafSet& leaves) {
  if (leaves.empty()) return 1.0;
  return std::exp(-static_cast<double>(subtree_node_count(spec, leaves)) * std::log(spec.B));
}

double GWOutcome::probability(double B) const {
  return std::exp(log_probability(B));
}

double GWOutcome::log_probability(double B) const {
  return deaths * std::log(B - 1.0) - (deaths + branches) * std::log(B);
}

std::vector<GWOutcome> enumerate_gw(const LatticeSpec& spec) {
  if (spec.n > kEnumerateNMax)
    throw SizeLimitError("enumerate_gw: n > 4 not supported (677 outcomes at n=4 already)");
  std::vector<GWOutcome> level;
  level.push_back(GWOutcome{{1}, 0, 0});
  for (int m = 0; m < spec.n; ++m) {
    const uint32_t shift = uint32_t{1} << m;
    std::vector<GWOutcome> next;
    next.reserve(level.size() * level.size() + 1);
    next.push_back(GWOutcome{{}, 1, 0});  // root has no offspring
    for (const GWOutcome& left : level) {
      for (const GWOutcome& right : level) {
        GWOutcome o;
        o.leaves = left.leaves;
        for (uint32_t i : right.leaves) o.leaves.push_back(i + shift);
        o.deaths = left.deaths + right.deaths;
        o.branches = left.branches + right.branches + 1;
        next.push_back(std::move(o));
      }
    }
    level = std::move(next);
  }
  return level;
}

std::vector<double> ContactDistribution::pmf() const {
  std::vector<double> p(log_pmf.size());
  for (size_t s = 0; s < p.size(); ++s) p[s] = std::exp(log_pmf[s]);
  return p;
}

double ContactDistribution::mean() const {
  double m = 0.0;
  for (size_t s = 1; s < log_pmf.size(); ++s) m += static_cast<double>(s) * std::exp(log_pmf[s]);
  return m;
}

ContactDistribution contact_distribution(const LatticeSpec& spec) {
  LogWeightVector v;
  v.depth = 0;
  v.a = {kNegInf, 0.0};  // point mass at S_0 = 1
  for (int k = 0; k < spec.n; ++k) v = convolve_level(v, v, 0.0, spec.B, true);
  return ContactDistribution{spec.n, std::move(v.a)};
}

namespace {

// Iterates the pure recursion. State is P = Z-1 until it grows past the
// switch point, then log Z.
struct PureIter {
  double B;
  double log_B;
  bool in_log = false;
  double P;
  double l = 0.0;

  PureIter(double B_, double u) : B(B_), log_B(std::log(B_)), P(std::expm1(u)) {}

  void step() {
    if (!in_log) {
      if (P < 1e15) {
        P = P * (2.0 + P) / B;
        return;
      }
      l = std::log1p(P);
      in_log = true;
    }
    l = 2.0 * l - log_B + std::log1p((B - 1.0) * std::exp(-2.0 * l));
  }

  double log_z() const { return in_log ? l : std::log1p(P); }
};

}  // namespace

double pure_log_partition(double B, double u, int n) {
  if (!std::isfinite(u)) throw std::invalid_argument("pure_log_partition: u must be finite");
  PureIter it(B, u);
  for (int k = 0; k < n; ++k) it.step();
  return it.log_z();
}

double pure_log_partition(const LatticeSpec& spec, double u) {
  return pure_log_partition(spec.B, u, spec.n);
}

PureFreeEnergy pure_free_energy(double B, double u, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("pure_free_energy: tol must be > 0");
  LatticeSpec check(B, 0);  // validates B
  (void)check;
  if (u <= 0.0) return PureFreeEnergy{0.0, 0, 0.0};

  const double log_B = std::log(B);
  const double log_KB = std::log(k_B(B));
  PureIter it(B, u);
  // 2^-n (log B + log K_B) <= tol terminates the loop for any tol > 0.
  for (int n = 0; n <= 1100; ++n) {
    const double scale = std::ldexp(1.0, -n);
    const double log_z = it.log_z();
    const double lower = std::max(0.0, scale * (log_z - log_B));
    const double upper = scale * (log_z + log_KB);
    const double width = upper - lower;
    if (width <= tol) {
      return PureFreeEnergy{0.5 * (lower + upper), n, width};
    }
    it.step();
  }
  throw std::runtime_error("pure_free_energy: bracket did not close (tol too small)");
}

double pure_exponent(double B) {
  if (!(B > 1.0) || !(B < 2.0)) throw std::invalid_argument("pure_exponent: B must be in (1,2)");
  return std::log(2.0) / std::log(2.0 / B);
}

}  // namespace hpin
