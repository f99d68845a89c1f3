#include "gradmaze/cli.hpp"

#include "gradmaze/bench.hpp"
#include "gradmaze/engines.hpp"
#include "gradmaze/error.hpp"
#include "gradmaze/io.hpp"
#include "gradmaze/oracle.hpp"
#include "gradmaze/simd/kernels.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <sstream>

namespace gradmaze::cli {
namespace {

constexpr int kUsage = 1;
constexpr int kPathSuboptimal = 5;
constexpr int kPathInvalid = 6;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    out << text;
}

BenchSize parse_size(const std::string& text) {
    const auto x = text.find('x');
    try {
        if (x == std::string::npos) throw std::invalid_argument(text);
        std::size_t used_w = 0, used_h = 0;
        const int w = std::stoi(text.substr(0, x), &used_w);
        const int h = std::stoi(text.substr(x + 1), &used_h);
        if (used_w != x || used_h != text.size() - x - 1) throw std::invalid_argument(text);
        return {w, h};
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::InvalidArgument, "size must look like WIDTHxHEIGHT, got '" + text + "'");
    }
}

MazeKind parse_kind(const std::string& name, double loop_fraction) {
    if (name == "perfect") return Perfect{};
    if (name == "braided") return Braided{loop_fraction};
    throw Error(ErrorKind::InvalidArgument, "unknown maze kind '" + name + "'");
}

/// `key = value` lines, '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path) {
    std::map<std::string, std::string> out;
    std::istringstream in(read_file(path));
    std::string line;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::MalformedInput, path + ":" + std::to_string(lineno) + ": expected key = value");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

struct ParamFlags {
    EngineParams params;
    std::string method = "cg";
};

void add_engine_flags(CLI::App& app, ParamFlags& f) {
    auto& p = f.params;
    app.add_option("--tol", p.tol, "Max-norm residual tolerance for potential solves")->capture_default_str();
    app.add_option("--max-iter", p.max_iter, "Iteration cap for potential solves (0: 50 * cells)")->capture_default_str();
    app.add_option("--method", f.method, "Linear solver: cg or jacobi")->capture_default_str();
    app.add_option("--quantile", p.quantile, "Hot-path current quantile")->capture_default_str();
    app.add_option("--physarum-steps", p.physarum_steps, "Reinforcement steps")->capture_default_str();
    app.add_option("--dt", p.dt, "Reinforcement step size")->capture_default_str();
    app.add_option("--physarum-tol", p.physarum_tol, "Stop once max |dD| falls below this")->capture_default_str();
    app.add_option("--thick-ratio", p.thick_ratio, "Keep tubes with D >= ratio * max D")->capture_default_str();
    app.add_option("--decay", p.decay, "Diffusion decay per step")->capture_default_str();
    app.add_option("--diffusion-steps", p.diffusion_steps, "Diffusion step cap")->capture_default_str();
    app.add_option("--temperature", p.temperature, "Agent temperature (0: greedy)")->capture_default_str();
    app.add_option("--seed", p.seed, "Agent seed")->capture_default_str();
    app.add_option("--refractory", p.refractory, "CA refractory steps")->capture_default_str();
    app.add_option("--threshold", p.threshold, "CA excitation threshold")->capture_default_str();
    app.add_option("--delay-max", p.delay_max, "Wavefront delays drawn from 1..N (1: uniform)")->capture_default_str();
    app.add_option("--delay-seed", p.delay_seed, "Seed for wavefront delays")->capture_default_str();
}

void finish_engine_flags(ParamFlags& f) {
    if (f.method == "cg") f.params.method = SolveMethod::ConjugateGradient;
    else if (f.method == "jacobi") f.params.method = SolveMethod::Jacobi;
    else throw Error(ErrorKind::InvalidArgument, "unknown method '" + f.method + "'");
}

EngineId engine_or_throw(const std::string& name) {
    if (const auto id = parse_engine(name)) return *id;
    throw Error(ErrorKind::InvalidArgument, "unknown engine '" + name + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

// Values from the config file only fill options that were not given on the
// command line, so flags always win.
std::vector<std::string> merge_config(CLI::App& app, std::vector<std::string> args) {
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    if (config_path.empty() || args.empty()) return args;

    CLI::App* sub = nullptr;
    std::size_t sub_pos = 0;
    for (std::size_t i = 0; i < args.size() && !sub; ++i) {
        for (CLI::App* candidate : app.get_subcommands([](CLI::App*) { return true; }))
            if (candidate->get_name() == args[i]) {
                sub = candidate;
                sub_pos = i;
            }
    }
    if (!sub) return args;

    auto given = [&](const std::string& flag) {
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };
    std::vector<std::string> injected;
    for (const auto& [key, value] : read_config(config_path)) {
        const std::string flag = "--" + key;
        if (!sub->get_option_no_throw(flag) || given(flag)) continue;
        injected.push_back(flag);
        injected.push_back(value);
    }
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1, injected.begin(), injected.end());
    return args;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"gradmaze: gradient-development maze solvers checked against Lee's algorithm"};
    app.require_subcommand(1);
    std::string simd_level;
    std::string config_path;
    app.add_option("--simd", simd_level, "Kernel level: scalar or avx2 (default: best available)");
    app.add_option("--config", config_path, "key = value file; command-line flags take precedence");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a maze");
    std::string gen_size = "21x21", gen_kind = "perfect", gen_out;
    double gen_loops = 0.5;
    std::uint64_t gen_seed = 0;
    gen->add_option("--size", gen_size, "WIDTHxHEIGHT, both odd and >= 3")->capture_default_str();
    gen->add_option("--kind", gen_kind, "perfect or braided")->capture_default_str();
    gen->add_option("--loop-fraction", gen_loops, "Fraction of dead ends opened when braided")->capture_default_str();
    gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
    gen->add_option("-o,--output", gen_out, "Output file (default: stdout)");
    gen->add_option("--config", config_path);

    // solve
    auto* solve = app.add_subcommand("solve", "Run one engine on a maze and print a report line");
    std::string solve_maze, solve_engine, solve_render, solve_path_out;
    bool solve_no_timing = false;
    ParamFlags solve_flags;
    solve->add_option("maze", solve_maze, "Maze file")->required();
    solve->add_option("--engine", solve_engine, "Engine id")->required();
    solve->add_option("--render", solve_render, "Write PREFIX.txt / .pgm / .svg renders");
    solve->add_option("--path-out", solve_path_out, "Write the traced path");
    solve->add_flag("--no-timing", solve_no_timing, "Report ms=0 for byte-stable output");
    solve->add_option("--config", config_path);
    add_engine_flags(*solve, solve_flags);

    // verify
    auto* verify = app.add_subcommand("verify", "Check a path file against a maze and the oracle");
    std::string verify_maze, verify_path;
    verify->add_option("maze", verify_maze, "Maze file")->required();
    verify->add_option("path", verify_path, "Path file")->required();

    // render
    auto* render = app.add_subcommand("render", "Render a maze, a path and an engine field");
    std::string render_maze, render_path, render_engine, render_format = "ascii", render_out;
    int render_scale = 0;
    std::vector<double> render_fixed;
    ParamFlags render_flags;
    render->add_option("maze", render_maze, "Maze file")->required();
    render->add_option("--path", render_path, "Path file to overlay");
    render->add_option("--engine", render_engine, "Engine whose field (and path) to render");
    render->add_option("--format", render_format, "ascii, pgm, svg or frames")->capture_default_str();
    render->add_option("--scale", render_scale, "Pixels per cell (pgm default 1, svg default 10)");
    render->add_option("--fixed", render_fixed, "Fixed grey range LO HI for pgm")->expected(2);
    render->add_option("-o,--output", render_out, "Output file (default: stdout)");
    render->add_option("--config", config_path);
    add_engine_flags(*render, render_flags);

    // bench
    auto* bench = app.add_subcommand("bench", "Run engines over a generated suite");
    std::string bench_sizes = "21x21", bench_kinds = "perfect", bench_engines = "all", bench_out;
    double bench_loops = 0.5;
    std::size_t bench_seeds = 20, bench_jobs = 1;
    std::uint64_t bench_seed_base = 0;
    bool bench_no_timing = false;
    ParamFlags bench_flags;
    bench->add_option("--sizes", bench_sizes, "Comma-separated WIDTHxHEIGHT list")->capture_default_str();
    bench->add_option("--kinds", bench_kinds, "Comma-separated perfect,braided")->capture_default_str();
    bench->add_option("--loop-fraction", bench_loops, "Braid fraction")->capture_default_str();
    bench->add_option("--seeds", bench_seeds, "Mazes per size and kind")->capture_default_str();
    bench->add_option("--seed-base", bench_seed_base, "First maze seed")->capture_default_str();
    bench->add_option("--engines", bench_engines, "Comma-separated engine ids, or all")->capture_default_str();
    bench->add_option("--jobs", bench_jobs, "Concurrent engine runs")->capture_default_str();
    bench->add_flag("--no-timing", bench_no_timing, "Write '-' for the timing column");
    bench->add_option("-o,--output", bench_out, "Output file (default: stdout)");
    bench->add_option("--config", config_path);
    add_engine_flags(*bench, bench_flags);

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = merge_config(app, args);
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kUsage;
    }

    const simd::ScopedLevel level(simd::active_level());
    try {
        if (!simd_level.empty()) {
            if (simd_level == "scalar") simd::set_active_level(simd::Level::Scalar);
            else if (simd_level == "avx2") simd::set_active_level(simd::Level::Avx2);
            else throw Error(ErrorKind::InvalidArgument, "unknown SIMD level '" + simd_level + "'");
        }

        if (gen->parsed()) {
            const BenchSize size = parse_size(gen_size);
            const Maze maze = generate_maze(size.width, size.height, parse_kind(gen_kind, gen_loops), gen_seed);
            const std::string text = render_ascii(maze);
            if (gen_out.empty()) {
                out << text;
            } else {
                write_file(gen_out, text);
                out << gen_out << "\n";
            }
            return 0;
        }

        if (solve->parsed()) {
            finish_engine_flags(solve_flags);
            const EngineId id = engine_or_throw(solve_engine);
            const Maze maze = parse_maze(read_file(solve_maze));
            const EngineOutput result = run_engine(id, maze, solve_flags.params);
            out << format_report(result.report, !solve_no_timing) << "\n";
            if (result.report.status != Status::Ok && !result.report.detail.empty())
                err << result.report.detail << "\n";
            if (!solve_path_out.empty() && result.path) write_file(solve_path_out, serialize_path(*result.path));
            if (!solve_render.empty()) {
                write_file(solve_render + ".txt", render_ascii(maze, result.path ? &*result.path : nullptr));
                if (result.field) {
                    try {
                        write_file(solve_render + ".pgm", render_field_image(*result.field, maze, RenderSpec{}));
                    } catch (const Error& e) {
                        if (e.kind() != ErrorKind::DegenerateRange) throw;
                        err << "skipping image: " << e.what() << "\n";
                    }
                }
                if (result.path)
                    write_file(solve_render + ".svg",
                               render_vector(maze, *result.path, result.field ? &*result.field : nullptr));
            }
            return exit_code(result.report.status);
        }

        if (verify->parsed()) {
            const Maze maze = parse_maze(read_file(verify_maze));
            Path path;
            try {
                path = parse_path(read_file(verify_path));
            } catch (const Error& e) {
                out << "invalid: " << e.what() << "\n";
                return kPathInvalid;
            }
            if (!is_valid_path(maze, path) || path.front() != maze.source() || path.back() != maze.destination()) {
                out << "invalid: not a simple source-to-destination channel path\n";
                return kPathInvalid;
            }
            const std::size_t oracle = lee_trace(maze, lee_label(maze, maze.destination()), maze.source()).length();
            if (path.length() == oracle) {
                out << "valid optimal len=" << path.length() << " oracle=" << oracle << "\n";
                return 0;
            }
            out << "valid suboptimal len=" << path.length() << " oracle=" << oracle << "\n";
            return kPathSuboptimal;
        }

        if (render->parsed()) {
            finish_engine_flags(render_flags);
            const Maze maze = parse_maze(read_file(render_maze));
            std::optional<Path> path;
            std::optional<ScalarField> field;
            if (!render_path.empty()) path = parse_path(read_file(render_path));
            if (!render_engine.empty()) {
                EngineOutput result = run_engine(engine_or_throw(render_engine), maze, render_flags.params);
                if (!path) path = std::move(result.path);
                field = std::move(result.field);
            }
            std::string text;
            if (render_format == "ascii") {
                text = render_ascii(maze, path ? &*path : nullptr);
            } else if (render_format == "pgm") {
                if (!field) throw Error(ErrorKind::InvalidArgument, "pgm output needs --engine");
                RenderSpec spec;
                spec.scale = render_scale > 0 ? render_scale : 1;
                if (!render_fixed.empty()) spec.normalize = FixedRange{render_fixed[0], render_fixed[1]};
                text = render_field_image(*field, maze, spec);
            } else if (render_format == "svg") {
                text = render_vector(maze, path ? *path : Path{}, field ? &*field : nullptr,
                                     render_scale > 0 ? render_scale : 10);
            } else if (render_format == "frames") {
                const auto run = excitable_ca(maze, maze.destination(),
                                              CaParams{render_flags.params.refractory, render_flags.params.threshold},
                                              4 * maze.cell_count() + 16, true);
                for (std::size_t t = 0; t < run.frames.size(); ++t)
                    text += "frame " + std::to_string(t) + "\n" + run.frames[t];
            } else {
                throw Error(ErrorKind::InvalidArgument, "unknown format '" + render_format + "'");
            }
            if (render_out.empty()) out << text;
            else write_file(render_out, text);
            return 0;
        }

        if (bench->parsed()) {
            finish_engine_flags(bench_flags);
            BenchSuite suite;
            suite.sizes.clear();
            for (const auto& s : split(bench_sizes, ',')) suite.sizes.push_back(parse_size(s));
            suite.kinds.clear();
            for (const auto& k : split(bench_kinds, ',')) suite.kinds.push_back(parse_kind(k, bench_loops));
            if (bench_engines == "all") {
                suite.engines.assign(kAllEngines.begin(), kAllEngines.end());
            } else {
                for (const auto& e : split(bench_engines, ',')) suite.engines.push_back(engine_or_throw(e));
            }
            suite.seeds = bench_seeds;
            suite.seed_base = bench_seed_base;
            suite.jobs = bench_jobs;
            suite.params = bench_flags.params;
            const std::string table = format_bench_table(run_bench(suite), !bench_no_timing);
            if (bench_out.empty()) out << table;
            else write_file(bench_out, table);
            return 0;
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

} // namespace gradmaze::cli
