#pragma once

#include <cstddef>
#include <vector>

#include "ibnet/errors.hpp"

namespace ibnet {

// Dense square matrix of doubles, row-major.
class Matrix {
public:
    Matrix() : n_(0) {}
    explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    std::size_t n() const { return n_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    const double* row(std::size_t i) const { return data_.data() + i * n_; }
    double* row(std::size_t i) { return data_.data() + i * n_; }

    double sum() const {
        double s = 0.0;
        for (double v : data_) s += v;
        return s;
    }

    std::vector<double> row_sums() const {
        std::vector<double> r(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r[i] += data_[i * n_ + j];
        return r;
    }

    std::vector<double> col_sums() const {
        std::vector<double> c(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) c[j] += data_[i * n_ + j];
        return c;
    }

    bool operator==(const Matrix& other) const {
        return n_ == other.n_ && data_ == other.data_;
    }

private:
    std::size_t n_;
    std::vector<double> data_;
};

}  // namespace ibnet
