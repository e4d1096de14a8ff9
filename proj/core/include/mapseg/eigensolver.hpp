#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace mapseg {

/// y = A x for a symmetric linear operator A. `y` never aliases `x`.
using SymmetricOperator = std::function<void(std::span<const double> x, std::span<double> y)>;

struct LanczosConfig {
  std::size_t max_iterations = 300;
  /// Stop when |A x - theta x| <= tol * |theta| (tol absolute if
  /// |theta| < 1e-12).
  double residual_tolerance = 1e-6;
  std::uint64_t seed = 42;
  /// Iterations between Ritz extractions and residual checks.
  std::size_t check_interval = 5;
  /// Record max |<q_i, q_j>| over the stored basis at exit. O(d^2 n).
  bool measure_orthogonality = false;
};

/// Throws std::invalid_argument on a zero iteration budget, a non-positive
/// tolerance or a zero check interval.
void validate(const LanczosConfig& cfg);

struct EigenResult {
  double eigenvalue = 0.0;
  /// Unit norm, sign fixed so the entries sum to a non-negative value.
  std::vector<double> eigenvector;
  /// |A x - eigenvalue x|, recomputed from one extra product at exit.
  double residual_norm = 0.0;
  /// Lanczos steps taken, i.e. products with A excluding residual checks.
  std::size_t iterations = 0;
  bool converged = false;
  /// An invariant Krylov subspace was found before the budget ran out.
  bool breakdown = false;

  /// Largest Ritz value at each check, in order.
  std::vector<double> ritz_history;
  /// Rayleigh quotient of the start vector.
  double start_rayleigh = 0.0;
  /// Only when `measure_orthogonality` is set; negative otherwise.
  double basis_orthogonality = -1.0;
};

/// Largest algebraic eigenpair of an n x n symmetric operator by Lanczos
/// iteration with full reorthogonalisation, started from a seeded uniform
/// random vector in [-1, 1]^n.
///
/// Non-convergence is reported through `converged`, not an exception; the
/// best available Ritz pair is returned either way.
EigenResult largest_eigenpair(std::size_t n, const SymmetricOperator& apply,
                              const LanczosConfig& cfg = {});

/// Eigen-decomposition of a symmetric tridiagonal matrix by implicit QL.
struct TridiagonalEigen {
  std::vector<double> values;
  /// Column-major: vector j occupies [j*k, (j+1)*k).
  std::vector<double> vectors;
};

/// `diag` has k entries, `offdiag` k-1. Throws std::runtime_error if QL
/// fails to converge within 60 sweeps per eigenvalue.
TridiagonalEigen tridiagonal_eigen(std::span<const double> diag, std::span<const double> offdiag);

/// Deterministic start vector: uniform in [-1, 1]^n from a 64-bit
/// Mersenne Twister, not normalised.
std::vector<double> lanczos_start_vector(std::size_t n, std::uint64_t seed);

}  // namespace mapseg
