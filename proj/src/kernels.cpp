#include "gdamf/kernels.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gdamf {

Matrix gather_rows(const Matrix& src, const std::vector<std::size_t>& idx) {
    Matrix out(idx.size(), src.cols);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const double* r = src.row(idx[i]);
        double* o = out.row(i);
        for (std::size_t j = 0; j < src.cols; ++j) o[j] = r[j];
    }
    return out;
}

void append_row(Matrix& m, const double* x, std::size_t len) {
    if (m.rows == 0 && m.cols == 0) m.cols = len;
    if (len != m.cols) throw std::invalid_argument("append_row: length mismatch");
    m.data.insert(m.data.end(), x, x + len);
    ++m.rows;
}

void erase_row(Matrix& m, std::size_t i) {
    if (i >= m.rows) throw std::out_of_range("erase_row: row index out of range");
    m.data.erase(m.data.begin() + static_cast<std::ptrdiff_t>(i * m.cols),
                 m.data.begin() + static_cast<std::ptrdiff_t>((i + 1) * m.cols));
    --m.rows;
}

}  // namespace gdamf

namespace gdamf::kernels {

namespace {

// Shared row workers. noinline keeps codegen identical between the serial
// and the OpenMP call sites, which is what makes the bit-equality guarantee
// hold under optimization.

[[gnu::noinline]] void matmul_row(const Matrix& a, const Matrix& b, Matrix& c, std::size_t i) {
    double* ci = c.row(i);
    for (std::size_t j = 0; j < c.cols; ++j) ci[j] = 0.0;
    const double* ai = a.row(i);
    for (std::size_t k = 0; k < a.cols; ++k) {
        const double aik = ai[k];
        const double* bk = b.row(k);
        for (std::size_t j = 0; j < c.cols; ++j) ci[j] += aik * bk[j];
    }
}

// c.row(i) of c = a^T b: c(i,j) = sum_n a(n,i) b(n,j)
[[gnu::noinline]] void matmul_at_b_row(const Matrix& a, const Matrix& b, Matrix& c, std::size_t i) {
    double* ci = c.row(i);
    for (std::size_t j = 0; j < c.cols; ++j) ci[j] = 0.0;
    for (std::size_t n = 0; n < a.rows; ++n) {
        const double ani = a(n, i);
        const double* bn = b.row(n);
        for (std::size_t j = 0; j < c.cols; ++j) ci[j] += ani * bn[j];
    }
}

[[gnu::noinline]] void matmul_a_bt_row(const Matrix& a, const Matrix& b, Matrix& c, std::size_t i) {
    const double* ai = a.row(i);
    double* ci = c.row(i);
    for (std::size_t j = 0; j < b.rows; ++j) {
        const double* bj = b.row(j);
        double acc = 0.0;
        for (std::size_t k = 0; k < a.cols; ++k) acc += ai[k] * bj[k];
        ci[j] = acc;
    }
}

[[gnu::noinline]] void pairwise_row(const Matrix& a, const Matrix& b, Matrix& d, std::size_t i) {
    const double* ai = a.row(i);
    double* di = d.row(i);
    for (std::size_t j = 0; j < b.rows; ++j) {
        const double* bj = b.row(j);
        double acc = 0.0;
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double diff = ai[k] - bj[k];
            acc += diff * diff;
        }
        di[j] = acc;
    }
}

[[gnu::noinline]] void softmax_row(Matrix& m, std::size_t i) {
    double* r = m.row(i);
    double mx = r[0];
    for (std::size_t j = 1; j < m.cols; ++j) mx = r[j] > mx ? r[j] : mx;
    double sum = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) {
        r[j] = std::exp(r[j] - mx);
        sum += r[j];
    }
    for (std::size_t j = 0; j < m.cols; ++j) r[j] /= sum;
}

void check_matmul(std::size_t inner_a, std::size_t inner_b) {
    if (inner_a != inner_b) throw std::invalid_argument("matmul: inner dimension mismatch");
}

// Work threshold below which spawning a team is not worth it.
constexpr std::size_t kParallelMinWork = std::size_t{1} << 15;

inline bool big_enough(std::size_t out_rows, std::size_t work_per_row) {
    return out_rows >= 4 && out_rows * work_per_row >= kParallelMinWork;
}

}  // namespace

namespace serial {

void matmul(const Matrix& a, const Matrix& b, Matrix& c) {
    check_matmul(a.cols, b.rows);
    c.resize(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) matmul_row(a, b, c, i);
}

void matmul_at_b(const Matrix& a, const Matrix& b, Matrix& c) {
    check_matmul(a.rows, b.rows);
    c.resize(a.cols, b.cols);
    for (std::size_t i = 0; i < a.cols; ++i) matmul_at_b_row(a, b, c, i);
}

void matmul_a_bt(const Matrix& a, const Matrix& b, Matrix& c) {
    check_matmul(a.cols, b.cols);
    c.resize(a.rows, b.rows);
    for (std::size_t i = 0; i < a.rows; ++i) matmul_a_bt_row(a, b, c, i);
}

void pairwise_sq_dists(const Matrix& a, const Matrix& b, Matrix& d) {
    check_matmul(a.cols, b.cols);
    d.resize(a.rows, b.rows);
    for (std::size_t i = 0; i < a.rows; ++i) pairwise_row(a, b, d, i);
}

void softmax_rows(Matrix& m) {
    for (std::size_t i = 0; i < m.rows; ++i) softmax_row(m, i);
}

}  // namespace serial

void matmul(const Matrix& a, const Matrix& b, Matrix& c) {
    check_matmul(a.cols, b.rows);
    c.resize(a.rows, b.cols);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.rows);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (big_enough(a.rows, a.cols* b.cols))
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) matmul_row(a, b, c, static_cast<std::size_t>(i));
}

void matmul_at_b(const Matrix& a, const Matrix& b, Matrix& c) {
    check_matmul(a.rows, b.rows);
    c.resize(a.cols, b.cols);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.cols);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (big_enough(a.cols, a.rows* b.cols))
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) matmul_at_b_row(a, b, c, static_cast<std::size_t>(i));
}

void matmul_a_bt(const Matrix& a, const Matrix& b, Matrix& c) {
    check_matmul(a.cols, b.cols);
    c.resize(a.rows, b.rows);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.rows);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (big_enough(a.rows, a.cols* b.rows))
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) matmul_a_bt_row(a, b, c, static_cast<std::size_t>(i));
}

void pairwise_sq_dists(const Matrix& a, const Matrix& b, Matrix& d) {
    check_matmul(a.cols, b.cols);
    d.resize(a.rows, b.rows);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.rows);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (big_enough(a.rows, a.cols* b.rows))
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) pairwise_row(a, b, d, static_cast<std::size_t>(i));
}

void softmax_rows(Matrix& m) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(m.rows);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (big_enough(m.rows, m.cols))
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) softmax_row(m, static_cast<std::size_t>(i));
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace gdamf::kernels
