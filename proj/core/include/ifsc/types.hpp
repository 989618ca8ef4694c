#pragma once

#include <Eigen/Dense>

namespace ifsc {

// Row-major to keep the memory layout identical to the row-oriented text
// formats the tools read and write.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using IntVector = Eigen::Matrix<long long, Eigen::Dynamic, 1>;

using int128 = __int128;

}  // namespace ifsc
