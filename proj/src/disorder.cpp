#include "hpin/disorder.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "hpin/lattice.hpp"
#include "hpin/rng.hpp"

namespace hpin {

DisorderSpec::DisorderSpec(double kappa_, double beta_, uint64_t seed_)
    : kappa(kappa_), beta(beta_), seed(seed_) {
  if (!(kappa >= 0.0) || !(kappa < 1.0))
    throw std::invalid_argument("DisorderSpec: kappa must be in [0,1)");
  if (!(beta >= 0.0)) throw std::invalid_argument("DisorderSpec: beta must be >= 0");
}

std::vector<double> sample_disorder(const DisorderSpec& spec, int n, uint64_t sample_index) {
  if (n < 0) throw std::invalid_argument("sample_disorder: n must be >= 0");
  const uint64_t leaves = uint64_t{1} << n;
  std::vector<double> omega(leaves, 0.0);
  const double kappa = spec.kappa;

  // Block uid: levels are laid out consecutively, root variable last.
  uint64_t uid_base = 0;
  for (int p = 0; p <= n; ++p) {
    const double w = std::sqrt(std::pow(kappa, p) - std::pow(kappa, p + 1));
    const uint64_t blocks = leaves >> p;
    if (w > 0.0) {
      for (uint64_t k = 0; k < blocks; ++k) {
        const double g = counter_normal(spec.seed, sample_index, uid_base + k, 0);
        const double wg = w * g;
        const uint64_t lo = k << p;
        const uint64_t hi = lo + (uint64_t{1} << p);
        for (uint64_t i = lo; i < hi; ++i) omega[i] += wg;
      }
    }
    uid_base += blocks;
  }
  const double w_root = std::sqrt(std::pow(kappa, n + 1));
  if (w_root > 0.0) {
    const double g = counter_normal(spec.seed, sample_index, uid_base, 0);
    for (double& x : omega) x += w_root * g;
  }
  return omega;
}

double HierMatrix::entry(uint64_t i, uint64_t j) const {
  return gen[tree_distance(i, j)];
}

std::vector<double> HierMatrix::dense() const {
  if (n > kDenseNMax) throw SizeLimitError("HierMatrix::dense: n exceeds dense cap");
  const uint64_t dim = uint64_t{1} << n;
  std::vector<double> m(dim * dim);
  for (uint64_t i = 0; i < dim; ++i)
    for (uint64_t j = 0; j < dim; ++j) m[i * dim + j] = entry(i + 1, j + 1);
  return m;
}

HierMatrix covariance_matrix(const DisorderSpec& spec, int n) {
  if (n > kDenseNMax) throw SizeLimitError("covariance_matrix: n exceeds dense cap");
  HierMatrix m;
  m.n = n;
  m.gen.resize(n + 1);
  for (int p = 0; p <= n; ++p) m.gen[p] = std::pow(spec.kappa, p);
  return m;
}

std::vector<EigenClass> hier_eigenvalues(const HierMatrix& m) {
  std::vector<EigenClass> out;
  out.reserve(m.n + 1);
  double lam0 = m.gen[0];
  for (int k = 1; k <= m.n; ++k) lam0 += std::ldexp(1.0, k - 1) * m.gen[k];
  out.push_back({lam0, 1});
  for (int p = 1; p <= m.n; ++p) {
    double lam = m.gen[0];
    for (int k = 1; k <= m.n - p; ++k) lam += std::ldexp(1.0, k - 1) * m.gen[k];
    lam -= std::ldexp(1.0, m.n - p) * m.gen[m.n + 1 - p];
    out.push_back({lam, int64_t{1} << (p - 1)});
  }
  return out;
}

std::vector<double> build_omega(int n) {
  if (n > kDenseNMax) throw SizeLimitError("build_omega: n exceeds dense cap");
  const uint64_t dim = uint64_t{1} << n;
  std::vector<double> omega(dim * dim, 0.0);
  // Column 0: constant. Then for p = n down to 1, one +/- column per block
  // of size 2^p, matching the eigenvalue order lambda_1, lambda_2, ...
  const double c0 = 1.0 / std::sqrt(static_cast<double>(dim));
  for (uint64_t i = 0; i < dim; ++i) omega[i * dim + 0] = c0;
  uint64_t col = 1;
  for (int p = n; p >= 1; --p) {
    const uint64_t bs = uint64_t{1} << p;
    const double c = 1.0 / std::sqrt(static_cast<double>(bs));
    for (uint64_t k = 0; k < dim / bs; ++k, ++col) {
      const uint64_t lo = k * bs;
      for (uint64_t i = 0; i < bs; ++i)
        omega[(lo + i) * dim + col] = (i < bs / 2) ? c : -c;
    }
  }
  return omega;
}

double k_infty(double kappa) {
  if (!(kappa >= 0.0)) throw std::invalid_argument("k_infty: kappa must be >= 0");
  if (kappa >= 0.5)
    throw DivergenceError(
        "k_infty: sum of kappa^p 2^p diverges for kappa >= 1/2; the annealed model is "
        "ill-defined there");
  return 1.0 / (1.0 - 2.0 * kappa);
}

std::vector<double> sample_from_hier(const HierMatrix& m, uint64_t seed, uint64_t sample_index) {
  const uint64_t dim = uint64_t{1} << m.n;
  const auto classes = hier_eigenvalues(m);
  // Per-column eigenvalues in the build_omega order.
  std::vector<double> lam(dim);
  lam[0] = classes[0].value;
  uint64_t col = 1;
  for (int p = m.n; p >= 1; --p) {
    const int64_t mult = int64_t{1} << (m.n - p);
    for (int64_t k = 0; k < mult; ++k, ++col) lam[col] = classes[m.n + 1 - p].value;
  }
  for (double& l : lam) {
    if (l < -1e-9) throw std::invalid_argument("sample_from_hier: matrix not PSD");
    l = l < 0.0 ? 0.0 : std::sqrt(l);
  }
  const auto omega = build_omega(m.n);
  std::vector<double> g(dim), out(dim, 0.0);
  for (uint64_t j = 0; j < dim; ++j) g[j] = lam[j] * counter_normal(seed, sample_index, j, 0);
  for (uint64_t i = 0; i < dim; ++i) {
    double s = 0.0;
    for (uint64_t j = 0; j < dim; ++j) s += omega[i * dim + j] * g[j];
    out[i] = s;
  }
  return out;
}

void write_samples_f64le(const std::string& path, const std::vector<std::vector<double>>& rows) {
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("write_samples_f64le: cannot open " + path);
  for (const auto& row : rows) {
    // x86-64 doubles are already little-endian IEEE 754.
    if (std::fwrite(row.data(), sizeof(double), row.size(), f) != row.size()) {
      std::fclose(f);
      throw std::runtime_error("write_samples_f64le: short write to " + path);
    }
  }
  std::fclose(f);
}

void write_samples_csv(const std::string& path, const std::vector<std::vector<double>>& rows) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("write_samples_csv: cannot open " + path);
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i)
      std::fprintf(f, "%.17g%s", row[i], i + 1 == row.size() ? "\n" : ",");
  }
  std::fclose(f);
}

}  // namespace hpin
