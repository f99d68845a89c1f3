#include "gradmaze/cli.hpp"
#include "gradmaze/io.hpp"
#include "gradmaze/oracle.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gradmaze;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "gradmaze");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("gradmaze_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream(path, std::ios::binary) << text;
}

std::string report_field(const std::string& line, const std::string& key) {
    const auto at = line.find(" " + key + "=");
    REQUIRE(at != std::string::npos);
    const auto begin = at + key.size() + 2;
    return line.substr(begin, line.find_first_of(" \n", begin) - begin);
}

} // namespace

TEST_CASE("gen writes a connected maze and is repeatable") {
    TempDir dir;
    const auto a = run({"gen", "--size", "21x21", "--kind", "perfect", "--seed", "7", "-o", dir.file("a.txt")});
    CHECK(a.code == 0);
    CHECK(a.out == dir.file("a.txt") + "\n");
    const Maze m = parse_maze(slurp(dir.file("a.txt")));
    CHECK(is_connected(m));
    run({"gen", "--size", "21x21", "--kind", "perfect", "--seed", "7", "-o", dir.file("b.txt")});
    CHECK(slurp(dir.file("a.txt")) == slurp(dir.file("b.txt")));
    const auto stdout_gen = run({"gen", "--size", "9x9", "--kind", "braided", "--seed", "2"});
    CHECK(parse_maze(stdout_gen.out) == fixtures::braided(9, 2));
}

TEST_CASE("gen rejects even sizes") {
    const auto r = run({"gen", "--size", "4x4"});
    CHECK(r.code == 1);
    CHECK(r.err.find("InvalidDimensions") != std::string::npos);
    CHECK(run({"gen", "--size", "nine"}).code == 1);
    CHECK(run({"gen", "--kind", "spiral"}).code == 1);
}

TEST_CASE("usage errors exit 1") {
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"solve"}).code == 1);
    CHECK(run({"solve", "missing.txt", "--engine", "lee"}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("solve prints a report and renders") {
    TempDir dir;
    spit(dir.file("m.txt"), render_ascii(fixtures::perfect(21, 3)));
    const auto r = run({"solve", dir.file("m.txt"), "--engine", "lee", "--no-timing", "--render", dir.file("r"),
                        "--path-out", dir.file("p.txt")});
    CHECK(r.code == 0);
    CHECK(report_field(r.out, "optimal") == "true");
    CHECK(report_field(r.out, "ms") == "0");
    CHECK(r.out.rfind("v1 engine=lee ", 0) == 0);
    CHECK(fs::exists(dir.file("r.txt")));
    CHECK(fs::exists(dir.file("r.pgm")));
    CHECK(fs::exists(dir.file("r.svg")));
    CHECK(run({"verify", dir.file("m.txt"), dir.file("p.txt")}).code == 0);
}

TEST_CASE("solve with the CA engine matches the oracle length") {
    TempDir dir;
    spit(dir.file("m.txt"), render_ascii(fixtures::braided(21, 3)));
    const auto r = run({"solve", dir.file("m.txt"), "--engine", "ca"});
    CHECK(r.code == 0);
    CHECK(report_field(r.out, "len") == report_field(r.out, "oracle"));
}

TEST_CASE("solve exit codes follow the status") {
    TempDir dir;
    spit(dir.file("cut.txt"), "S.#.D\n");
    CHECK(run({"solve", dir.file("cut.txt"), "--engine", "lee"}).code == 2);
    spit(dir.file("m.txt"), render_ascii(fixtures::perfect(21, 3)));
    CHECK(run({"solve", dir.file("m.txt"), "--engine", "laplace-neumann", "--method", "jacobi", "--max-iter", "2"})
              .code == 3);
    spit(dir.file("open.txt"), "S....\n.....\n.....\n.....\n....D\n");
    const auto hot = run({"solve", dir.file("open.txt"), "--engine", "current-hot", "--quantile", "0.99"});
    CHECK(hot.code == 4);
    CHECK(report_field(hot.out, "status") == "LocalExtremum");
    CHECK(run({"solve", dir.file("m.txt"), "--engine", "nope"}).code == 1);
    CHECK(run({"solve", dir.file("m.txt"), "--engine", "lee", "--method", "sor"}).code == 1);
}

TEST_CASE("verify distinguishes optimal, detour and invalid") {
    TempDir dir;
    spit(dir.file("loop.txt"), fixtures::kLoop);
    const Maze m = fixtures::loop();
    const Path best = lee_trace(m, lee_label(m, m.destination()), m.source());
    spit(dir.file("best.txt"), serialize_path(best));
    const Path detour{{{1, 0}, {1, 1}, {2, 1}, {3, 1}, {3, 2}, {3, 3}, {3, 4}, {2, 4}, {2, 5}}};
    spit(dir.file("detour.txt"), serialize_path(detour));
    const Path walled{{{1, 0}, {1, 1}, {1, 2}, {2, 2}}};
    spit(dir.file("wall.txt"), serialize_path(walled));
    spit(dir.file("junk.txt"), "not a path\n");
    CHECK(run({"verify", dir.file("loop.txt"), dir.file("best.txt")}).code == 0);
    CHECK(run({"verify", dir.file("loop.txt"), dir.file("detour.txt")}).code == 5);
    CHECK(run({"verify", dir.file("loop.txt"), dir.file("wall.txt")}).code == 6);
    CHECK(run({"verify", dir.file("loop.txt"), dir.file("junk.txt")}).code == 6);
}

TEST_CASE("render formats") {
    TempDir dir;
    spit(dir.file("m.txt"), render_ascii(fixtures::perfect(9, 7)));
    const auto ascii = run({"render", dir.file("m.txt"), "--engine", "lee"});
    CHECK(ascii.code == 0);
    CHECK(ascii.out.find('*') != std::string::npos);
    const auto pgm = run({"render", dir.file("m.txt"), "--engine", "current-hot", "--format", "pgm"});
    CHECK(pgm.out.rfind("P2\n9 9\n255\n", 0) == 0);
    const auto svg = run({"render", dir.file("m.txt"), "--engine", "lee", "--format", "svg", "-o", dir.file("m.svg")});
    CHECK(svg.code == 0);
    CHECK(slurp(dir.file("m.svg")).rfind("<svg", 0) == 0);
    const auto frames = run({"render", dir.file("m.txt"), "--format", "frames"});
    CHECK(frames.out.rfind("frame 0\n", 0) == 0);
    CHECK(run({"render", dir.file("m.txt"), "--format", "pgm"}).code == 1);
    CHECK(run({"render", dir.file("m.txt"), "--format", "gif"}).code == 1);
}

TEST_CASE("config file fills unset flags and loses to explicit ones") {
    TempDir dir;
    spit(dir.file("m.txt"), render_ascii(fixtures::perfect(21, 3)));
    spit(dir.file("slow.cfg"), "# starve the solver\nmethod = jacobi\nmax-iter = 2\n");
    CHECK(run({"solve", dir.file("m.txt"), "--engine", "laplace-neumann", "--config", dir.file("slow.cfg")}).code ==
          3);
    CHECK(run({"solve", dir.file("m.txt"), "--engine", "laplace-neumann", "--config", dir.file("slow.cfg"),
               "--method", "cg", "--max-iter", "0"})
              .code == 0);
    spit(dir.file("bad.cfg"), "method jacobi\n");
    CHECK(run({"solve", dir.file("m.txt"), "--engine", "lee", "--config", dir.file("bad.cfg")}).code == 1);
}

TEST_CASE("bench writes a deterministic table") {
    const std::vector<std::string> args{"bench", "--sizes", "9x9,11x11", "--kinds", "perfect,braided",
                                        "--seeds", "3", "--engines", "lee,ca,diffusion", "--no-timing"};
    const auto a = run(args);
    CHECK(a.code == 0);
    auto with_jobs = args;
    with_jobs.insert(with_jobs.end(), {"--jobs", "3"});
    CHECK(run(with_jobs).out == a.out);
    CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 13);
    CHECK(run({"bench", "--engines", ""}).code == 1);
}

TEST_CASE("the SIMD level can be forced") {
    TempDir dir;
    spit(dir.file("m.txt"), render_ascii(fixtures::braided(21, 5)));
    const auto scalar = run({"--simd", "scalar", "solve", dir.file("m.txt"), "--engine", "laplace-neumann",
                             "--no-timing"});
    CHECK(scalar.code == 0);
    const auto best = run({"solve", dir.file("m.txt"), "--engine", "laplace-neumann", "--no-timing"});
    CHECK(best.out == scalar.out);
    CHECK(run({"--simd", "neon", "solve", dir.file("m.txt"), "--engine", "lee"}).code == 1);
}
