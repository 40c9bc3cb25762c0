#include "hpin/annealed.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "hpin/quenched.hpp"

namespace hpin {

namespace {

LogWeightVector annealed_base(double beta, double h) {
  LogWeightVector v;
  v.depth = 0;
  v.a = {kNegInf, h + 0.5 * beta * beta};
  return v;
}

void check_params(double B, double kappa, double beta, double h) {
  if (!(B > 1.0) || !(B < 2.0)) throw std::invalid_argument("annealed: B must be in (1,2)");
  if (!(kappa >= 0.0) || !(kappa < 1.0))
    throw std::invalid_argument("annealed: kappa must be in [0,1)");
  if (!std::isfinite(beta) || beta < 0.0 || !std::isfinite(h))
    throw std::invalid_argument("annealed: non-finite parameters");
}

}  // namespace

AnnealedState annealed_weight_vector(double B, double kappa, double beta, double h, int n,
                                     int n_max) {
  check_params(B, kappa, beta, h);
  if (n < 0) throw std::invalid_argument("annealed_weight_vector: n must be >= 0");
  if (n > n_max) throw SizeLimitError("annealed_weight_vector: n exceeds n_max");
  AnnealedState st;
  st.B = B;
  st.kappa = kappa;
  st.beta = beta;
  st.h = h;
  st.n = n;
  st.weights = annealed_base(beta, h);
  const bool track_bar = kappa < 0.5;
  st.log_za.push_back(st.weights.log_partition());
  if (track_bar) st.log_zbar.push_back(aux_from_weights(st.weights, kappa, beta));
  for (int k = 0; k < n; ++k) {
    const double coupling = beta * beta * std::pow(kappa, k + 1);
    st.weights = convolve_level(st.weights, st.weights, coupling, B, true);
    st.log_za.push_back(st.weights.log_partition());
    if (track_bar) st.log_zbar.push_back(aux_from_weights(st.weights, kappa, beta));
  }
  return st;
}

double annealed_log_partition(const AnnealedState& st) { return st.log_za.back(); }

double aux_annealed_log_partition(const AnnealedState& st) {
  if (st.log_zbar.empty())
    throw DivergenceError("aux_annealed_log_partition: requires kappa < 1/2");
  return st.log_zbar.back();
}

std::vector<double> annealed_moments(const AnnealedState& st, int m_max) {
  if (m_max < 1) throw std::invalid_argument("annealed_moments: m_max must be >= 1");
  const double log_z = st.log_za.back();
  std::vector<double> mom(m_max, 0.0);
  for (size_t s = 1; s < st.weights.a.size(); ++s) {
    if (st.weights.a[s] == kNegInf) continue;
    const double w = std::exp(st.weights.a[s] - log_z);
    double sm = 1.0;
    for (int m = 0; m < m_max; ++m) {
      sm *= static_cast<double>(s);
      mom[m] += sm * w;
    }
  }
  return mom;
}

double annealed_pair_correlation(double B, double kappa, double beta, double h, int n, int p,
                                 int n_max) {
  check_params(B, kappa, beta, h);
  if (p < 1 || p > n) throw std::invalid_argument("annealed_pair_correlation: need 1 <= p <= n");
  if (n > n_max) throw SizeLimitError("annealed_pair_correlation: n exceeds n_max");
  LogWeightVector plain = annealed_base(beta, h);
  LogWeightVector marked = plain;  // the marked leaf is present a.s. at depth 0
  // Up to depth p-1, carry one marked block; at depth p the two marked blocks
  // meet (this fixes d(i,j) = p); beyond that, propagate against plain blocks.
  for (int k = 0; k < p - 1; ++k) {
    const double coupling = beta * beta * std::pow(kappa, k + 1);
    marked = convolve_level(marked, plain, coupling, B, false);
    plain = convolve_level(plain, plain, coupling, B, true);
  }
  double coupling = beta * beta * std::pow(kappa, p);
  LogWeightVector pair = convolve_level(marked, marked, coupling, B, false);
  for (int k = p; k < n; ++k) {
    coupling = beta * beta * std::pow(kappa, k + 1);
    pair = convolve_level(pair, plain, coupling, B, false);
    if (k + 1 < n) plain = convolve_level(plain, plain, coupling, B, true);
  }
  return std::exp(pair.log_partition());
}

namespace {

// True once iterating x -> (x^2 + B - 1)/B from x exceeds B: combined with the
// super-recursion this certifies F^a > 0.
bool escapes_above(double x, double B) {
  if (!(x > 1.0)) return false;
  for (long i = 0; i < 2000000; ++i) {
    x = (x * x + B - 1.0) / B;
    if (x > B) return true;
  }
  return false;
}

}  // namespace

ClassifyResult classify_annealed(double B, double kappa, double beta, double h, int n,
                                 double margin, int n_max) {
  check_params(B, kappa, beta, h);
  if (n > n_max) throw SizeLimitError("classify_annealed: n exceeds n_max");
  const bool track_bar = kappa < 0.5;
  ClassifyResult res;
  res.max_za = -std::numeric_limits<double>::infinity();
  res.min_zbar = std::numeric_limits<double>::infinity();
  LogWeightVector v = annealed_base(beta, h);
  for (int k = 0;; ++k) {
    res.levels_run = k;
    const double log_za = v.log_partition();
    res.max_za = std::max(res.max_za, std::exp(log_za));
    if (log_za > std::log1p(margin) &&
        escapes_above(std::exp(log_za) * (1.0 - margin), B)) {
      res.phase = Phase::Localized;
      res.fired_level = k;
      return res;
    }
    if (track_bar) {
      const double log_zbar = aux_from_weights(v, kappa, beta);
      res.min_zbar = std::min(res.min_zbar, std::exp(log_zbar));
      if (log_zbar < std::log1p(-margin)) {
        res.phase = Phase::Delocalized;
        res.fired_level = k;
        return res;
      }
    }
    if (k == n) break;
    v = convolve_level(v, v, beta * beta * std::pow(kappa, k + 1), B, true);
  }
  res.phase = Phase::Undecided;
  return res;
}

CriticalPointResult find_annealed_critical_point(double B, double kappa, double beta, int n,
                                                 double tol, int n_max) {
  check_params(B, kappa, beta, 0.0);
  if (kappa >= 0.5)
    throw DivergenceError("find_annealed_critical_point: annealed model requires kappa < 1/2");
  if (!(tol > 0.0)) throw std::invalid_argument("find_annealed_critical_point: tol must be > 0");
  if (n > n_max) throw SizeLimitError("find_annealed_critical_point: n exceeds n_max");

  const double c_kappa = 0.5 * (1.0 + kappa / (1.0 - 2.0 * kappa));
  double seed_hi = -0.5 * beta * beta;
  double seed_lo = -beta * beta * c_kappa * 1.01 - 4.0 * tol;

  std::map<double, ClassifyResult> cache;
  long evals = 0;
  auto classify = [&](double h) -> const ClassifyResult& {
    auto it = cache.find(h);
    if (it == cache.end()) {
      ++evals;
      it = cache.emplace(h, classify_annealed(B, kappa, beta, h, n)).first;
    }
    return it->second;
  };

  // Certified anchors; expand outward if the seed endpoints are undecided.
  double h_loc = seed_hi;
  {
    double step = std::max(tol, 0.01 * beta * beta + tol);
    int tries = 0;
    while (classify(h_loc).phase != Phase::Localized) {
      h_loc += step;
      step *= 2.0;
      if (++tries > 60)
        throw std::runtime_error(
            "find_annealed_critical_point: no localization certificate above seed bracket");
    }
  }
  double h_del = seed_lo;
  {
    double step = std::max(tol, 0.01 * beta * beta + tol);
    int tries = 0;
    while (classify(h_del).phase != Phase::Delocalized) {
      h_del -= step;
      step *= 2.0;
      if (++tries > 60)
        throw std::runtime_error(
            "find_annealed_critical_point: no delocalization certificate below seed bracket");
    }
  }

  // Classification is monotone in h, so each boundary supports bisection.
  double below_loc = h_del;   // largest h tested not-localized
  double above_del = h_loc;   // smallest h tested not-delocalized
  auto absorb = [&](double h, const ClassifyResult& r) {
    if (r.phase == Phase::Localized) {
      h_loc = std::min(h_loc, h);
      above_del = std::min(above_del, h);
    } else {
      below_loc = std::max(below_loc, h);
      if (r.phase == Phase::Delocalized) h_del = std::max(h_del, h);
      else above_del = std::min(above_del, h);
    }
  };
  while (h_loc - below_loc > tol) {
    const double m = 0.5 * (h_loc + below_loc);
    absorb(m, classify(m));
  }
  while (above_del - h_del > tol) {
    const double m = 0.5 * (above_del + h_del);
    absorb(m, classify(m));
  }

  CriticalPointResult out;
  out.h_lo = h_del;
  out.h_hi = h_loc;
  out.n_used = n;
  const ClassifyResult& rl = classify(h_loc);
  const ClassifyResult& rd = classify(h_del);
  out.loc_certificate = rl.max_za;
  out.loc_fired_level = rl.fired_level;
  out.deloc_certificate = rd.min_zbar;
  out.deloc_fired_level = rd.fired_level;
  out.evaluations = evals;
  return out;
}

CriticalityProfile criticality_profile(double B, double kappa, double beta, int n_lo, int n_hi,
                                       double h, int n_max) {
  if (n_lo < 0 || n_hi < n_lo) throw std::invalid_argument("criticality_profile: bad n range");
  check_params(B, kappa, beta, h);
  if (n_hi > n_max) throw SizeLimitError("criticality_profile: n exceeds n_max");
  CriticalityProfile prof;
  prof.h = h;
  LogWeightVector v = annealed_base(beta, h);
  const bool track_bar = kappa < 0.5;
  double log_prod = 0.0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int k = 0; k <= n_hi; ++k) {
    const double log_za = v.log_partition();
    if (k >= n_lo) {
      ProfileRow row;
      row.n = k;
      row.log_za = log_za;
      row.log_zbar = track_bar ? aux_from_weights(v, kappa, beta) : nan;
      double es = 0.0;
      for (size_t s = 1; s < v.a.size(); ++s) {
        if (v.a[s] != kNegInf) es += static_cast<double>(s) * std::exp(v.a[s] - log_za);
      }
      row.es1 = es;
      row.log_prod = log_prod;
      row.log_prod_bound = (kappa > 0.0 && beta > 0.0)
                               ? -std::log(beta * std::sqrt(kappa)) +
                                     k * std::log(B / (2.0 * std::sqrt(kappa)))
                               : nan;
      prof.rows.push_back(row);
    }
    log_prod += log_za;
    if (k < n_hi) v = convolve_level(v, v, beta * beta * std::pow(kappa, k + 1), B, true);
  }
  return prof;
}

double profile_growth_rate(const CriticalityProfile& prof, int n_from, int n_to) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long cnt = 0;
  for (const auto& row : prof.rows) {
    if (row.n < n_from || row.n > n_to) continue;
    const double x = row.n, y = std::log(row.es1);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt < 2) throw std::invalid_argument("profile_growth_rate: need >= 2 rows in range");
  const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return std::exp(slope);
}

}  // namespace hpin
