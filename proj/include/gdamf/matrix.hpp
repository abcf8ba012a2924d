#pragma once

#include <cstddef>
#include <vector>

namespace gdamf {

// Dense row-major matrix of doubles. Plain value type, no views.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double* row(std::size_t i) { return data.data() + i * cols; }
    const double* row(std::size_t i) const { return data.data() + i * cols; }

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    // Reshape and zero-fill.
    void resize(std::size_t r, std::size_t c) {
        rows = r;
        cols = c;
        data.assign(r * c, 0.0);
    }

    bool empty() const { return rows == 0 || cols == 0; }

    bool operator==(const Matrix&) const = default;
};

// New matrix holding src rows picked by idx, in idx order.
Matrix gather_rows(const Matrix& src, const std::vector<std::size_t>& idx);

// Append one row (length must equal cols, or define cols when empty).
void append_row(Matrix& m, const double* x, std::size_t len);

// Remove row i, preserving the order of the remaining rows.
void erase_row(Matrix& m, std::size_t i);

}  // namespace gdamf
