#pragma once

#include "gdamf/matrix.hpp"

// Dense kernels behind the classifier and the distance metrics.
//
// Every kernel exists twice: a serial reference under kernels::serial and a
// dispatching entry point under kernels:: that runs the same per-row worker
// under an OpenMP parallel-for when the problem is large enough. Parallel
// loops only ever write disjoint output rows and never reduce across
// iterations, and both variants share one noinline row worker, so the two
// variants produce bit-identical results for any thread count.

namespace gdamf::kernels {

namespace serial {

// c = a * b
void matmul(const Matrix& a, const Matrix& b, Matrix& c);
// c = a^T * b
void matmul_at_b(const Matrix& a, const Matrix& b, Matrix& c);
// c = a * b^T
void matmul_a_bt(const Matrix& a, const Matrix& b, Matrix& c);
// d(i,j) = squared Euclidean distance between a.row(i) and b.row(j)
void pairwise_sq_dists(const Matrix& a, const Matrix& b, Matrix& d);
// in-place numerically stable row-wise softmax
void softmax_rows(Matrix& m);

}  // namespace serial

void matmul(const Matrix& a, const Matrix& b, Matrix& c);
void matmul_at_b(const Matrix& a, const Matrix& b, Matrix& c);
void matmul_a_bt(const Matrix& a, const Matrix& b, Matrix& c);
void pairwise_sq_dists(const Matrix& a, const Matrix& b, Matrix& d);
void softmax_rows(Matrix& m);

// Threads a parallel region would use (1 when built without OpenMP).
int max_threads();

}  // namespace gdamf::kernels
