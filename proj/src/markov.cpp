#include "reachmesh/markov.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <string>

namespace reachmesh {

TransitionMatrix::TransitionMatrix(std::vector<std::vector<Entry>> rows) {
  row_ptr_.reserve(rows.size() + 1);
  row_ptr_.push_back(0);
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
    for (const Entry& e : row) {
      cols_.push_back(e.col);
      values_.push_back(e.value);
    }
    row_ptr_.push_back(cols_.size());
  }
  validate();
}

void TransitionMatrix::transient_multiply(std::span<const double> x, std::span<double> y) const {
  std::size_t m = transient_count();
  for (std::size_t i = 0; i < m; ++i) {
    double acc = 0.0;
    auto cols = row_cols(i + 1);
    auto vals = row_values(i + 1);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] >= 1) acc += vals[k] * x[static_cast<std::size_t>(cols[k]) - 1];
    }
    y[i] = acc;
  }
}

void TransitionMatrix::validate() const {
  std::size_t n = size();
  if (n < 1) throw std::invalid_argument("transition matrix: empty");
  auto r0c = row_cols(0);
  auto r0v = row_values(0);
  if (r0c.size() != 1 || r0c[0] != 0 || r0v[0] != 1.0)
    throw std::invalid_argument("transition matrix: row 0 must be exactly the absorbing row");
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    int prev_col = -1;
    auto cols = row_cols(i);
    auto vals = row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] <= prev_col || cols[k] >= static_cast<int>(n))
        throw std::invalid_argument("transition matrix: bad column index in row " +
                                    std::to_string(i));
      prev_col = cols[k];
      if (!(vals[k] >= 0.0 && vals[k] <= 1.0))
        throw std::invalid_argument("transition matrix: probability outside [0, 1] in row " +
                                    std::to_string(i));
      sum += vals[k];
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("transition matrix: row " + std::to_string(i) +
                                  " sums to " + std::to_string(sum));
  }
}

TransitionMatrix build_transition_matrix(const Mesh& mesh) {
  int m = mesh.size();
  if (m < 1) throw std::invalid_argument("build_transition_matrix: empty mesh");
  std::size_t arity = mesh.entry(0).transitions.size();
  if (arity == 0)
    throw std::invalid_argument("build_transition_matrix: entry 0 has an empty transition list");

  std::vector<std::vector<TransitionMatrix::Entry>> rows(static_cast<std::size_t>(m) + 1);
  rows[0] = {{0, 1.0}};
  for (int i = 0; i < m; ++i) {
    const MeshEntry& entry = mesh.entry(i);
    if (entry.transitions.size() != arity)
      throw std::invalid_argument("build_transition_matrix: entry " + std::to_string(i) +
                                  " has arity " + std::to_string(entry.transitions.size()) +
                                  ", expected " + std::to_string(arity));
    std::map<int, int> counts;
    for (int target : entry.transitions) {
      if (target != kFailureId && (target < 0 || target >= m))
        throw std::invalid_argument("build_transition_matrix: entry " + std::to_string(i) +
                                    " references unknown state " + std::to_string(target));
      ++counts[target == kFailureId ? 0 : target + 1];
    }
    auto& row = rows[static_cast<std::size_t>(i) + 1];
    for (auto [col, count] : counts)
      row.push_back({col, static_cast<double>(count) / static_cast<double>(arity)});
  }
  return TransitionMatrix(std::move(rows));
}

SpectralResult lambda2(const TransitionMatrix& matrix, double tol, long max_iters) {
  std::size_t m = matrix.transient_count();
  if (m == 0) throw std::invalid_argument("lambda2: no transient states");

  std::vector<double> v(m, 1.0 / std::sqrt(static_cast<double>(m)));
  std::vector<double> w(m, 0.0);

  double lambda = 0.0, prev_lambda = 0.0, prev_prev_lambda = 0.0;
  double residual = 0.0;
  int oscillating = 0;

  for (long iter = 1; iter <= max_iters; ++iter) {
    matrix.transient_multiply(v, w);

    // Rayleigh quotient with ||v|| = 1.
    lambda = std::inner_product(v.begin(), v.end(), w.begin(), 0.0);
    double err2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double d = w[i] - lambda * v[i];
      err2 += d * d;
    }
    residual = std::sqrt(err2);
    if (residual <= tol) return {lambda, iter, residual};

    if (iter > 2) {
      // A complex or +/- paired dominant eigenvalue makes the Rayleigh
      // quotient cycle with period two instead of settling.
      if (std::abs(lambda - prev_prev_lambda) < 1e-13 &&
          std::abs(lambda - prev_lambda) > 1e-6) {
        if (++oscillating > 32)
          throw UnsupportedSpectrumError(
              "lambda2: power iteration oscillates; dominant eigenvalue of the transient "
              "block is not a simple real value");
      } else {
        oscillating = 0;
      }
    }
    prev_prev_lambda = prev_lambda;
    prev_lambda = lambda;

    double norm = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
    if (norm == 0.0) return {0.0, iter, 0.0};  // v was annihilated: nilpotent block
    for (std::size_t i = 0; i < m; ++i) v[i] = w[i] / norm;
  }
  throw ConvergenceError("lambda2: no convergence after " + std::to_string(max_iters) +
                             " iterations (residual " + std::to_string(residual) + ")",
                         residual);
}

double mfpt_eigen(double lambda2_value) {
  if (!(lambda2_value < 1.0))
    throw std::domain_error("mfpt_eigen: lambda2 must be below 1 for transient decay");
  return 1.0 / (1.0 - lambda2_value);
}

double mfpt_exact(const TransitionMatrix& matrix, const std::vector<double>& start) {
  std::size_t m = matrix.transient_count();
  if (start.size() != m)
    throw std::invalid_argument("mfpt_exact: start distribution must cover the transient states");
  double total = 0.0;
  for (double p : start) {
    if (p < 0.0) throw std::invalid_argument("mfpt_exact: negative start probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("mfpt_exact: start distribution must sum to 1");

  // States with no path to failure form a recurrent class and make (I - Q)
  // singular; find them up front by reverse reachability from failure.
  std::vector<std::vector<int>> reverse(m);
  std::deque<int> queue;
  std::vector<bool> reaches(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    auto cols = matrix.row_cols(i + 1);
    for (int col : cols) {
      if (col == 0) {
        if (!reaches[i]) {
          reaches[i] = true;
          queue.push_back(static_cast<int>(i));
        }
      } else {
        reverse[static_cast<std::size_t>(col) - 1].push_back(static_cast<int>(i));
      }
    }
  }
  while (!queue.empty()) {
    int j = queue.front();
    queue.pop_front();
    for (int i : reverse[static_cast<std::size_t>(j)]) {
      if (!reaches[static_cast<std::size_t>(i)]) {
        reaches[static_cast<std::size_t>(i)] = true;
        queue.push_back(i);
      }
    }
  }
  std::vector<int> recurrent;
  for (std::size_t i = 0; i < m; ++i)
    if (!reaches[i]) recurrent.push_back(static_cast<int>(i));
  if (!recurrent.empty()) {
    std::string msg = "mfpt_exact: " + std::to_string(recurrent.size()) +
                      " states cannot reach failure (mesh IDs";
    for (std::size_t k = 0; k < recurrent.size() && k < 20; ++k)
      msg += " " + std::to_string(recurrent[k]);
    if (recurrent.size() > 20) msg += " ...";
    msg += ")";
    throw RecurrentClassError(std::move(msg), std::move(recurrent));
  }

  Eigen::SparseMatrix<double> i_minus_q(static_cast<Eigen::Index>(m),
                                        static_cast<Eigen::Index>(m));
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(matrix.nnz());
  for (std::size_t i = 0; i < m; ++i) {
    auto cols = matrix.row_cols(i + 1);
    auto vals = matrix.row_values(i + 1);
    bool diagonal_seen = false;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] == 0) continue;
      std::size_t j = static_cast<std::size_t>(cols[k]) - 1;
      double value = (i == j ? 1.0 - vals[k] : -vals[k]);
      if (i == j) diagonal_seen = true;
      triplets.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j), value);
    }
    if (!diagonal_seen)
      triplets.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i), 1.0);
  }
  i_minus_q.setFromTriplets(triplets.begin(), triplets.end());

  Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
  solver.compute(i_minus_q);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("mfpt_exact: (I - Q) factorization failed");
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m));
  Eigen::VectorXd t = solver.solve(ones);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("mfpt_exact: (I - Q) solve failed");

  double result = 0.0;
  for (std::size_t i = 0; i < m; ++i) result += start[i] * t(static_cast<Eigen::Index>(i));
  return result;
}

std::vector<std::pair<double, double>> transition_mass_cdf(const TransitionMatrix& matrix) {
  std::size_t m = matrix.transient_count();
  if (m == 0) return {{1.0, 1.0}};

  std::vector<double> column_mass(m, 0.0);
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    auto cols = matrix.row_cols(i);
    auto vals = matrix.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (cols[k] >= 1) column_mass[static_cast<std::size_t>(cols[k]) - 1] += vals[k];
  }
  std::sort(column_mass.begin(), column_mass.end(), std::greater<double>());
  double total = std::accumulate(column_mass.begin(), column_mass.end(), 0.0);
  if (total == 0.0) return {{1.0, 1.0}};

  std::vector<std::pair<double, double>> cdf;
  cdf.reserve(m);
  double cumulative = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    cumulative += column_mass[k];
    cdf.emplace_back(static_cast<double>(k + 1) / static_cast<double>(m), cumulative / total);
  }
  return cdf;
}

std::vector<std::pair<int, int>> sparsity_pattern(const TransitionMatrix& matrix) {
  std::vector<std::pair<int, int>> coords;
  coords.reserve(matrix.nnz());
  for (std::size_t i = 0; i < matrix.size(); ++i)
    for (int col : matrix.row_cols(i)) coords.emplace_back(static_cast<int>(i), col);
  return coords;
}

}  // namespace reachmesh
