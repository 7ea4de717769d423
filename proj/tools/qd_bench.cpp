// Compares the serial reference Monte Carlo driver against the OpenMP
// kernel on the session-level detection experiment, checking that both
// count the same detections.

#include "qd/attacks.hpp"
#include "qd/experiments.hpp"
#include "qd/protocol.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace qd;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    const auto end = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(end - start).count();
}

} // namespace

int main(int argc, char** argv) {
    std::uint64_t trials = 200000;
    std::size_t delta1 = 2;
    std::uint64_t seed = 1;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        const std::string value = argv[i + 1];
        if (flag == "--trials") trials = std::stoull(value);
        else if (flag == "--delta1") delta1 = std::stoull(value);
        else if (flag == "--seed") seed = std::stoull(value);
    }

    ProtocolConfig cfg;
    cfg.n_pairs = 1;
    cfg.delta1 = delta1;
    cfg.delta2 = 0;
    const AttackStrategy strategy = AttackStrategy::measure_resend();
    const Rng base(seed);

#ifdef _OPENMP
    std::printf("threads            : %d\n", omp_get_max_threads());
#else
    std::printf("threads            : 1 (built without OpenMP)\n");
#endif
    std::printf("workload           : measure-resend, delta1=%zu, trials=%llu\n", delta1,
                static_cast<unsigned long long>(trials));

    auto t0 = std::chrono::steady_clock::now();
    const DetectionEstimate serial =
        estimate_detection_probability_serial(strategy, cfg, trials, base);
    const double serial_s = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const DetectionEstimate parallel =
        estimate_detection_probability(strategy, cfg, trials, base);
    const double parallel_s = seconds_since(t0);

    std::printf("serial reference   : %.6f  (%llu hits, %.3f s)\n", serial.estimate,
                static_cast<unsigned long long>(serial.detections), serial_s);
    std::printf("parallel kernel    : %.6f  (%llu hits, %.3f s)\n", parallel.estimate,
                static_cast<unsigned long long>(parallel.detections), parallel_s);
    std::printf("speedup            : %.2fx\n", serial_s / parallel_s);

    if (serial.detections != parallel.detections) {
        std::printf("MISMATCH: serial and parallel counts differ\n");
        return 1;
    }
    std::printf("counts match       : yes\n");
    return 0;
}
