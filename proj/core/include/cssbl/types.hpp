#ifndef CSSBL_TYPES_HPP
#define CSSBL_TYPES_HPP

#include <Eigen/Dense>

namespace cssbl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

} // namespace cssbl

#endif
