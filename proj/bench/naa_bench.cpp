// Wall-clock comparison of the OpenMP kernels against their serial references.

#include <chrono>
#include <cstdio>
#include <vector>

#include "naa/fsmodel.hpp"
#include "naa/harness.hpp"
#include "naa/rng.hpp"

namespace {

template <class F>
double seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    std::vector<std::uint8_t> bytes(64u << 20);
    naa::Rng rng(7);
    for (auto& b : bytes) b = static_cast<std::uint8_t>(rng.next());

    naa::ByteHistogram a{}, b{};
    const double hs = seconds([&] { a = naa::byte_histogram(bytes); });
    const double hp = seconds([&] { b = naa::byte_histogram_parallel(bytes); });
    std::printf("byte_histogram   64 MiB  serial %.3fs  parallel %.3fs  same=%s\n", hs, hp,
                a == b ? "yes" : "no");

    naa::SweepConfig cfg;
    cfg.infected_levels = {0, 20, 50, 100};
    cfg.repetitions = 2;
    naa::SweepResult rs, rp;
    const double ss = seconds([&] { rs = naa::run_sweep_serial(cfg); });
    const double sp = seconds([&] { rp = naa::run_sweep(cfg); });
    std::printf("run_sweep        %zu runs  serial %.3fs  parallel %.3fs  same=%s\n", rs.runs.size(), ss, sp,
                naa::format_csv(rs.cells) == naa::format_csv(rp.cells) ? "yes" : "no");
    return 0;
}
