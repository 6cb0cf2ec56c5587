/* Times the determining-system column generation serial vs parallel and
 * checks that both paths produce identical columns.  The parallel path is
 * the default inside solve_kernel; this keeps an eye on the speedup and on
 * the equivalence that the unit tests assert on smaller instances.
 *
 *   ./bench_solver [repeats]
 */
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "diffiety/corpus.hpp"
#include "diffiety/solver.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace diffiety;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct Workload {
    std::string label;
    std::string system;
    int k;
    int p;
    AnsatzSpace bounds;
};

CDiffOp workload_op(const Workload& w, const EquationSystem& E) {
    if (w.k == 1 && w.p == 1) return restrict_operator(adjoint(linearize(E), E.space()), E);
    return extend_p(restrict_operator(adjoint(lift_linearize(E, w.k), E.space()), E), w.p - 1,
                    w.k);
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;

    AnsatzSpace deep;
    deep.max_order = 4;
    deep.max_degree = 3;

    AnsatzSpace lifted;
    lifted.max_order = 3;
    lifted.max_degree = 2;
    lifted.cartan_degree = 1;

    const Workload workloads[] = {
        {"kdv cosymmetries N=4 D=3", "kdv", 1, 1, deep},
        {"wave2 cosymmetries N=4 D=3", "wave2", 1, 1, deep},
        {"kdv lifted k=2 N=3 D=2 g=1", "kdv", 2, 1, lifted},
    };

#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without openmp; both paths run serially\n");
#endif
    std::printf("%-32s %8s %12s %12s %8s\n", "workload", "cols", "serial ms", "parallel ms",
                "speedup");
    bool all_equal = true;
    for (const Workload& w : workloads) {
        EquationSystem E = corpus_entry(w.system).parse();
        CDiffOp op = workload_op(w, E);
        BlockAnsatz ansatz = block_ansatz(E, w.k, w.p, w.bounds);

        double serial_best = 1e300, parallel_best = 1e300;
        std::vector<ColumnTerms> serial_cols, parallel_cols;
        for (int r = 0; r < repeats; ++r) {
            double t0 = now_ms();
            serial_cols = determining_columns(op, ansatz, E, false);
            double t1 = now_ms();
            parallel_cols = determining_columns(op, ansatz, E, true);
            double t2 = now_ms();
            serial_best = std::min(serial_best, t1 - t0);
            parallel_best = std::min(parallel_best, t2 - t1);
        }
        bool equal = serial_cols == parallel_cols;
        all_equal = all_equal && equal;
        std::printf("%-32s %8zu %12.1f %12.1f %7.2fx%s\n", w.label.c_str(),
                    ansatz.total_columns(), serial_best, parallel_best,
                    serial_best / parallel_best, equal ? "" : "  MISMATCH");
    }
    if (!all_equal) {
        std::fprintf(stderr, "parallel and serial columns disagree\n");
        return 1;
    }
    return 0;
}
