// Times the OpenMP-dispatched kernels against the serial reference and checks
// that both produce bit-identical outputs.

#include "gdamf/kernels.hpp"
#include "gdamf/rng.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

namespace {

using gdamf::Matrix;

Matrix random_matrix(std::size_t r, std::size_t c, gdamf::Rng& rng) {
    Matrix m(r, c);
    for (double& v : m.data) v = rng.normal();
    return m;
}

double time_ms(const std::function<void()>& fn, int reps) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void report(const std::string& name, const std::string& size, double serial_ms,
            double parallel_ms, bool bitexact) {
    std::printf("%-18s %-14s serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx   %s\n",
                name.c_str(), size.c_str(), serial_ms, parallel_ms, serial_ms / parallel_ms,
                bitexact ? "bit-exact" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kernel benchmark: serial reference vs OpenMP dispatch"};
    std::size_t n = 384;
    app.add_option("--n", n, "square dimension / point count");
    std::size_t d = 16;
    app.add_option("--d", d, "feature dimension for pairwise distances");
    int reps = 5;
    app.add_option("--reps", reps, "timing repetitions (best of)");
    CLI11_PARSE(app, argc, argv);

    std::printf("threads available: %d\n", gdamf::kernels::max_threads());

    gdamf::Rng rng(42);
    const Matrix a = random_matrix(n, n, rng);
    const Matrix b = random_matrix(n, n, rng);
    const Matrix pa = random_matrix(n, d, rng);
    const Matrix pb = random_matrix(n, d, rng);

    bool all_exact = true;
    Matrix ref, out;

    const std::string nxn = std::to_string(n) + "x" + std::to_string(n);
    const std::string nxd = std::to_string(n) + "x" + std::to_string(d);

    {
        const double ts = time_ms([&] { gdamf::kernels::serial::matmul(a, b, ref); }, reps);
        const double tp = time_ms([&] { gdamf::kernels::matmul(a, b, out); }, reps);
        const bool ok = ref == out;
        all_exact = all_exact && ok;
        report("matmul", nxn, ts, tp, ok);
    }
    {
        const double ts = time_ms([&] { gdamf::kernels::serial::matmul_at_b(a, b, ref); }, reps);
        const double tp = time_ms([&] { gdamf::kernels::matmul_at_b(a, b, out); }, reps);
        const bool ok = ref == out;
        all_exact = all_exact && ok;
        report("matmul_at_b", nxn, ts, tp, ok);
    }
    {
        const double ts = time_ms([&] { gdamf::kernels::serial::matmul_a_bt(a, b, ref); }, reps);
        const double tp = time_ms([&] { gdamf::kernels::matmul_a_bt(a, b, out); }, reps);
        const bool ok = ref == out;
        all_exact = all_exact && ok;
        report("matmul_a_bt", nxn, ts, tp, ok);
    }
    {
        const double ts =
            time_ms([&] { gdamf::kernels::serial::pairwise_sq_dists(pa, pb, ref); }, reps);
        const double tp = time_ms([&] { gdamf::kernels::pairwise_sq_dists(pa, pb, out); }, reps);
        const bool ok = ref == out;
        all_exact = all_exact && ok;
        report("pairwise_sq_dists", nxd, ts, tp, ok);
    }
    {
        Matrix sref = a, sout = a;
        const double ts = time_ms(
            [&] {
                sref = a;
                gdamf::kernels::serial::softmax_rows(sref);
            },
            reps);
        const double tp = time_ms(
            [&] {
                sout = a;
                gdamf::kernels::softmax_rows(sout);
            },
            reps);
        const bool ok = sref == sout;
        all_exact = all_exact && ok;
        report("softmax_rows", nxn, ts, tp, ok);
    }

    return all_exact ? 0 : 1;
}
