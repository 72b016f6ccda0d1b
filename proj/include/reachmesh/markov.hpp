#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "reachmesh/mesh.hpp"

namespace reachmesh {

/// Sparse row-stochastic transition matrix over mesh IDs. Row/column 0 is
/// the absorbing failure state; mesh ID i maps to index i + 1.
class TransitionMatrix {
 public:
  struct Entry {
    int col;
    double value;
  };

  /// CSR construction from per-row entries (row 0 must be the absorbing
  /// failure row). Validates stochasticity on entry.
  explicit TransitionMatrix(std::vector<std::vector<Entry>> rows);

  std::size_t size() const { return row_ptr_.size() - 1; }
  std::size_t transient_count() const { return size() - 1; }
  std::size_t nnz() const { return cols_.size(); }

  std::span<const int> row_cols(std::size_t row) const {
    return {cols_.data() + row_ptr_[row], row_ptr_[row + 1] - row_ptr_[row]};
  }
  std::span<const double> row_values(std::size_t row) const {
    return {values_.data() + row_ptr_[row], row_ptr_[row + 1] - row_ptr_[row]};
  }

  /// y = Q x restricted to the transient block (rows/cols 1..m, 0-indexed
  /// as 0..m-1). Row-wise accumulation in storage order, so results are
  /// bit-stable.
  void transient_multiply(std::span<const double> x, std::span<double> y) const;

  /// Row sums within 1e-12 of one, absorbing row 0, entries in [0, 1].
  void validate() const;

 private:
  std::vector<std::size_t> row_ptr_;
  std::vector<int> cols_;
  std::vector<double> values_;
};

/// Counts each entry's transition targets into row i+1, disturbances
/// weighted uniformly. Requires equal-arity transition lists.
TransitionMatrix build_transition_matrix(const Mesh& mesh);

struct SpectralResult {
  double lambda2 = 0.0;
  long iterations = 0;
  double residual = 0.0;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(std::string what, double residual)
      : std::runtime_error(std::move(what)), residual(residual) {}
  double residual;
};

class UnsupportedSpectrumError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// States that cannot reach the failure state make (I - Q) singular.
class RecurrentClassError : public std::runtime_error {
 public:
  RecurrentClassError(std::string what, std::vector<int> states)
      : std::runtime_error(std::move(what)), states(std::move(states)) {}
  std::vector<int> states;  // mesh IDs
};

/// Dominant eigenvalue of the transient block by power iteration. Because
/// lambda_1 = 1 belongs exactly to the absorbing state, restricting to the
/// transient block deflates it with no numerical subtraction.
SpectralResult lambda2(const TransitionMatrix& matrix, double tol = 1e-10,
                       long max_iters = 100000);

/// Eigenvalue estimate of the mean first passage time, 1 / (1 - lambda2).
double mfpt_eigen(double lambda2_value);

/// Exact MFPT through the fundamental matrix: solves (I - Q) t = 1 and
/// returns start . t. `start` is a distribution over transient states in
/// mesh-ID order.
double mfpt_exact(const TransitionMatrix& matrix, const std::vector<double>& start);

/// Column mass of the transient block, sorted descending and accumulated:
/// point k is (fraction of states, fraction of transition mass).
std::vector<std::pair<double, double>> transition_mass_cdf(const TransitionMatrix& matrix);

/// Coordinates of all stored nonzeros, row-major.
std::vector<std::pair<int, int>> sparsity_pattern(const TransitionMatrix& matrix);

}  // namespace reachmesh
