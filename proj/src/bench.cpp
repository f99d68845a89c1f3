#include "gradmaze/bench.hpp"

#include "gradmaze/error.hpp"
#include "gradmaze/io.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace gradmaze {

std::string kind_label(const MazeKind& kind) {
    if (const auto* b = std::get_if<Braided>(&kind)) return "braided:" + format_real(b->loop_fraction);
    return "perfect";
}

std::vector<BenchRow> run_bench(const BenchSuite& suite) {
    if (suite.engines.empty()) throw Error(ErrorKind::InvalidArgument, "bench needs at least one engine");
    if (suite.sizes.empty() || suite.kinds.empty() || suite.seeds == 0)
        throw Error(ErrorKind::InvalidArgument, "bench needs sizes, kinds and seeds");

    struct Task {
        std::size_t row;
        std::size_t size;
        std::size_t kind;
        std::uint64_t seed;
        EngineId engine;
    };
    std::vector<BenchRow> rows;
    std::vector<Task> tasks;
    for (std::size_t s = 0; s < suite.sizes.size(); ++s)
        for (std::size_t k = 0; k < suite.kinds.size(); ++k)
            for (EngineId e : suite.engines) {
                rows.push_back({suite.sizes[s], kind_label(suite.kinds[k]), e, 0, 0, 0, 0, 0, 0.0});
                for (std::size_t n = 0; n < suite.seeds; ++n)
                    tasks.push_back({rows.size() - 1, s, k, suite.seed_base + n, e});
            }

    // Mazes are generated up front so engine runs share read-only inputs.
    std::vector<std::vector<std::vector<Maze>>> mazes(suite.sizes.size());
    for (std::size_t s = 0; s < suite.sizes.size(); ++s) {
        mazes[s].resize(suite.kinds.size());
        for (std::size_t k = 0; k < suite.kinds.size(); ++k)
            for (std::size_t n = 0; n < suite.seeds; ++n)
                mazes[s][k].push_back(generate_maze(suite.sizes[s].width, suite.sizes[s].height,
                                                    suite.kinds[k], suite.seed_base + n));
    }

    std::vector<SolveReport> reports(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < tasks.size(); t = next++) {
            const Task& task = tasks[t];
            const Maze& maze = mazes[task.size][task.kind][task.seed - suite.seed_base];
            reports[t] = run_engine(task.engine, maze, suite.params).report;
        }
    };
    const std::size_t jobs = std::max<std::size_t>(1, suite.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }

    std::vector<std::vector<double>> times(rows.size());
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        BenchRow& row = rows[tasks[t].row];
        const SolveReport& r = reports[t];
        ++row.runs;
        row.optimal += r.optimal;
        row.local_extremum += r.status == Status::LocalExtremum;
        row.not_converged += r.status == Status::NotConverged;
        row.unreachable += r.status == Status::Unreachable;
        times[tasks[t].row].push_back(r.wall_ms);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto& v = times[i];
        std::sort(v.begin(), v.end());
        const std::size_t m = v.size() / 2;
        rows[i].median_ms = v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
    }
    return rows;
}

std::string format_bench_table(const std::vector<BenchRow>& rows, bool include_time) {
    std::string out =
        "size,kind,engine,prototype,runs,optimal_rate,median_ms,local_extremum,not_converged,unreachable\n";
    for (const BenchRow& r : rows) {
        out += std::to_string(r.size.width) + "x" + std::to_string(r.size.height) + "," + r.kind + "," +
               std::string(to_string(r.engine)) + "," + std::string(prototype_name(r.engine)) + "," +
               std::to_string(r.runs) + "," + format_real(r.optimality_rate()) + "," +
               (include_time ? format_real(r.median_ms) : std::string("-")) + "," +
               std::to_string(r.local_extremum) + "," + std::to_string(r.not_converged) + "," +
               std::to_string(r.unreachable) + "\n";
    }
    return out;
}

} // namespace gradmaze
