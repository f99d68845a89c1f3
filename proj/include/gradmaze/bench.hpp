#pragma once

#include "gradmaze/engines.hpp"
#include "gradmaze/maze.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace gradmaze {

struct BenchSize {
    int width = 21;
    int height = 21;
};

struct BenchSuite {
    std::vector<BenchSize> sizes{{21, 21}};
    std::vector<MazeKind> kinds{Perfect{}};
    std::size_t seeds = 20;
    std::uint64_t seed_base = 0;
    std::vector<EngineId> engines;
    EngineParams params;
    std::size_t jobs = 1;
};

struct BenchRow {
    BenchSize size;
    std::string kind;
    EngineId engine = EngineId::Lee;
    std::size_t runs = 0;
    std::size_t optimal = 0;
    std::size_t local_extremum = 0;
    std::size_t not_converged = 0;
    std::size_t unreachable = 0;
    double median_ms = 0.0;

    double optimality_rate() const {
        return runs ? static_cast<double>(optimal) / static_cast<double>(runs) : 0.0;
    }
};

std::string kind_label(const MazeKind& kind);

/// Runs every (size, kind, seed, engine) combination. Rows come back ordered
/// by size, kind, then engine, whatever the job count.
std::vector<BenchRow> run_bench(const BenchSuite& suite);

/// Comma-separated table with a header line. Without timing the median
/// column is written as '-'.
std::string format_bench_table(const std::vector<BenchRow>& rows, bool include_time = true);

} // namespace gradmaze
