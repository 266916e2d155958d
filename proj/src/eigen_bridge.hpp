#pragma once

#include <Eigen/Dense>

#include "rmt/matrix.hpp"

namespace rmt::detail {

inline Eigen::MatrixXd to_eigen(const RMat& x) {
    Eigen::MatrixXd e(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) e(i, j) = x(i, j);
    return e;
}

inline Eigen::MatrixXcd to_eigen(const CMat& x) {
    Eigen::MatrixXcd e(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) e(i, j) = x(i, j);
    return e;
}

inline RMat from_eigen(const Eigen::MatrixXd& e) {
    RMat x(e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j) x(i, j) = e(i, j);
    return x;
}

inline CMat from_eigen(const Eigen::MatrixXcd& e) {
    CMat x(e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j) x(i, j) = e(i, j);
    return x;
}

}  // namespace rmt::detail
