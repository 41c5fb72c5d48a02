#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <stdexcept>
#include <string>

namespace blowup {

using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

// Vectors of the wrong length for the space or operator they are used with.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Failures of a numerical procedure: indefinite matrices, non-convergence,
// missing sign changes.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_dim(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected length " + std::to_string(want) +
                         ", got " + std::to_string(got));
  }
}

}  // namespace blowup
