#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace deepclean {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using ArrayX = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<double>;
using Vector = VectorX<double>;
using Array = ArrayX<double>;
using BoolArray = Eigen::Array<bool, Eigen::Dynamic, 1>;

// Sentinel substituted for missing points in standardized windows. Far
// outside the range of any real standardized sample, so the model treats
// missing data as artefact.
inline constexpr double kMissingSentinel = -10.0;

// Error taxonomy. The CLI maps UsageError -> exit 1, DataError and its
// subclasses -> exit 2, NumericalError -> exit 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : Error {
  using Error::Error;
};

struct DataError : Error {
  using Error::Error;
};

struct ParseError : DataError {
  ParseError(const std::string& what, long line)
      : DataError("line " + std::to_string(line) + ": " + what), line(line) {}
  long line;
};

struct IoError : DataError {
  using DataError::DataError;
};

struct ShapeError : DataError {
  using DataError::DataError;
};

struct ConfigError : DataError {
  using DataError::DataError;
};

struct NumericalError : Error {
  using Error::Error;
};

}  // namespace deepclean
