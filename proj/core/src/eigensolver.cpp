#include "mapseg/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace mapseg {

namespace {

constexpr double kBreakdownThreshold = 1e-14;
constexpr double kTinyEigenvalue = 1e-12;
constexpr int kMaxQlSweeps = 60;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double tolerance_scale(double theta) {
  return std::abs(theta) < kTinyEigenvalue ? 1.0 : std::abs(theta);
}

void fix_sign(std::vector<double>& x) {
  double sum = 0.0;
  for (double v : x) sum += v;
  bool flip = sum < 0.0;
  if (sum == 0.0) {
    auto it = std::find_if(x.begin(), x.end(), [](double v) { return v != 0.0; });
    flip = it != x.end() && *it < 0.0;
  }
  if (flip) {
    for (double& v : x) v = -v;
  }
}

}  // namespace

void validate(const LanczosConfig& cfg) {
  if (cfg.max_iterations < 1) {
    throw std::invalid_argument("Lanczos max_iterations must be at least 1");
  }
  if (!(cfg.residual_tolerance > 0.0)) {
    throw std::invalid_argument("Lanczos residual_tolerance must be positive");
  }
  if (cfg.check_interval < 1) {
    throw std::invalid_argument("Lanczos check_interval must be at least 1");
  }
}

std::vector<double> lanczos_start_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> v(n);
  for (double& x : v) {
    // 53 random mantissa bits, mapped to [-1, 1).
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    x = 2.0 * u - 1.0;
  }
  return v;
}

TridiagonalEigen tridiagonal_eigen(std::span<const double> diag, std::span<const double> offdiag) {
  const int k = static_cast<int>(diag.size());
  if (k > 0 && offdiag.size() + 1 != diag.size()) {
    throw std::invalid_argument("tridiagonal_eigen: need k-1 off-diagonal entries");
  }
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(static_cast<std::size_t>(k), 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());
  std::vector<double> z(static_cast<std::size_t>(k) * k, 0.0);
  for (int i = 0; i < k; ++i) z[static_cast<std::size_t>(i) * k + i] = 1.0;
  auto zat = [&](int row, int col) -> double& {
    return z[static_cast<std::size_t>(col) * k + row];
  };

  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < k; ++l) {
    int sweeps = 0;
    int m;
    do {
      for (m = l; m < k - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (sweeps++ == kMaxQlSweeps) {
          throw std::runtime_error("tridiagonal_eigen: QL iteration did not converge");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (int row = 0; row < k; ++row) {
            f = zat(row, i + 1);
            zat(row, i + 1) = s * zat(row, i) + c * f;
            zat(row, i) = c * zat(row, i) - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  return {std::move(d), std::move(z)};
}

EigenResult largest_eigenpair(std::size_t n, const SymmetricOperator& apply,
                              const LanczosConfig& cfg) {
  validate(cfg);
  if (n == 0) throw std::invalid_argument("largest_eigenpair: empty operator");

  EigenResult result;
  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;
  basis.reserve(std::min(cfg.max_iterations, n) + 1);

  std::vector<double> q = lanczos_start_vector(n, cfg.seed);
  double qn = norm(q);
  if (qn == 0.0) {
    q.assign(n, 0.0);
    q[0] = 1.0;
    qn = 1.0;
  }
  for (double& x : q) x /= qn;
  basis.push_back(std::move(q));

  std::vector<double> w(n), scratch(n);
  double operator_scale = 0.0;
  std::vector<double> best_vector;

  // Ritz vector of T_k's top eigenpair, with its residual checked against A.
  auto extract = [&](const TridiagonalEigen& te, std::size_t k, std::size_t top) {
    std::vector<double> x(n, 0.0);
    for (std::size_t i = 0; i < k; ++i) axpy(te.vectors[top * k + i], basis[i], x);
    const double xn = norm(x);
    for (double& v : x) v /= xn;
    apply(x, scratch);
    const double rq = dot(x, scratch);
    for (std::size_t i = 0; i < n; ++i) scratch[i] -= rq * x[i];
    result.eigenvalue = rq;
    result.residual_norm = norm(scratch);
    best_vector = std::move(x);
  };

  for (std::size_t j = 0; j < cfg.max_iterations; ++j) {
    const std::vector<double>& qj = basis[j];
    apply(qj, w);
    result.iterations = j + 1;
    operator_scale = std::max(operator_scale, norm(w));

    const double a = dot(qj, w);
    if (j == 0) result.start_rayleigh = a;
    alpha.push_back(a);
    axpy(-a, qj, w);
    if (j > 0) axpy(-beta[j - 1], basis[j - 1], w);

    // Two classical Gram-Schmidt passes against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& qi : basis) axpy(-dot(qi, w), qi, w);
    }
    const double b = norm(w);
    const std::size_t k = j + 1;
    const bool breakdown = b <= kBreakdownThreshold * std::max(1.0, operator_scale) || k == n;
    const bool last = k == cfg.max_iterations;

    if (breakdown || last || k % cfg.check_interval == 0) {
      const TridiagonalEigen te = tridiagonal_eigen(alpha, beta);
      const std::size_t top = static_cast<std::size_t>(
          std::max_element(te.values.begin(), te.values.end()) - te.values.begin());
      const double theta = te.values[top];
      result.ritz_history.push_back(theta);

      const double estimate = b * std::abs(te.vectors[top * k + (k - 1)]);
      const double tol = cfg.residual_tolerance * tolerance_scale(theta);
      if (breakdown || last || estimate <= tol) {
        extract(te, k, top);
        if (result.residual_norm <= cfg.residual_tolerance * tolerance_scale(result.eigenvalue)) {
          result.converged = true;
        }
        if (result.converged || breakdown || last) {
          result.breakdown = breakdown;
          break;
        }
      }
    }

    beta.push_back(b);
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = w[i] / b;
    basis.push_back(std::move(next));
  }

  if (cfg.measure_orthogonality) {
    double worst = 0.0;
    const std::size_t used = std::min(basis.size(), result.iterations);
    for (std::size_t i = 0; i < used; ++i) {
      for (std::size_t jj = i + 1; jj < used; ++jj) {
        worst = std::max(worst, std::abs(dot(basis[i], basis[jj])));
      }
    }
    result.basis_orthogonality = worst;
  }

  fix_sign(best_vector);
  result.eigenvector = std::move(best_vector);
  return result;
}

}  // namespace mapseg
