#include "gradmaze/maze.hpp"
#include "gradmaze/io.hpp"
#include "support/check.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

using namespace gradmaze;

TEST_CASE("parse reads glyphs and endpoints") {
    const Maze m = fixtures::loop();
    CHECK(m.width() == 6);
    CHECK(m.height() == 5);
    CHECK(m.source() == Coord{1, 0});
    CHECK(m.destination() == Coord{2, 5});
    CHECK(m.at({0, 0}) == Cell::Wall);
    CHECK(m.at({1, 1}) == Cell::Channel);
}

TEST_CASE("parse tolerates trailing whitespace and a missing final newline") {
    CHECK(parse_maze("S.D") == parse_maze("S.D  \n\n"));
}

TEST_CASE("parse rejects malformed text") {
    CHECK(error_of([] { parse_maze("S..\n.D\n"); }) == ErrorKind::MalformedInput);
    CHECK(error_of([] { parse_maze("S.x.D\n"); }) == ErrorKind::MalformedInput);
    CHECK(error_of([] { parse_maze("...\n..D\n"); }) == ErrorKind::MalformedInput);
    CHECK(error_of([] { parse_maze("S.S.D\n"); }) == ErrorKind::MalformedInput);
    CHECK(error_of([] { parse_maze(""); }) == ErrorKind::MalformedInput);
}

TEST_CASE("ascii render round-trips") {
    for (const auto& text : {fixtures::kLoop, fixtures::kStub, fixtures::kCorridor, fixtures::kOpen3})
        CHECK(render_ascii(parse_maze(text)) == text);
    const Maze g = fixtures::braided(15, 3);
    CHECK(parse_maze(render_ascii(g)) == g);
}

TEST_CASE("neighbours come in N, E, S, W order and walls are refused") {
    const Maze m = fixtures::open3();
    const auto n = neighbors(m, {1, 1});
    REQUIRE(n.size() == 4);
    CHECK(n[0].dir == Direction::North);
    CHECK(n[1].dir == Direction::East);
    CHECK(n[2].dir == Direction::South);
    CHECK(n[3].dir == Direction::West);
    CHECK(neighbors(m, {0, 0}).size() == 2);
    CHECK(error_of([&] { neighbors(fixtures::loop(), {0, 0}); }) == ErrorKind::WallQuery);
    CHECK(error_of([&] { neighbors(m, {5, 5}); }) == ErrorKind::WallQuery);
}

TEST_CASE("generator checks dimensions") {
    CHECK(error_of([] { generate_maze(4, 4, Perfect{}, 0); }) == ErrorKind::InvalidDimensions);
    CHECK(error_of([] { generate_maze(9, 1, Perfect{}, 0); }) == ErrorKind::InvalidDimensions);
    CHECK(error_of([] { generate_maze(1, 9, Perfect{}, 0); }) == ErrorKind::InvalidDimensions);
    CHECK_NOTHROW(generate_maze(3, 3, Perfect{}, 0));
}

TEST_CASE("generator is deterministic per seed") {
    CHECK(fixtures::perfect(21, 7) == fixtures::perfect(21, 7));
    CHECK(fixtures::braided(21, 7) == fixtures::braided(21, 7));
    CHECK_FALSE(fixtures::perfect(21, 7) == fixtures::perfect(21, 8));
}

TEST_CASE("endpoints sit on the top and bottom borders") {
    const Maze m = fixtures::perfect(11, 1);
    CHECK(m.source() == Coord{0, 1});
    CHECK(m.destination() == Coord{10, 9});
}

TEST_CASE("perfect 9x9 mazes have exactly one simple path") {
    for (std::uint64_t seed = 0; seed < 50; ++seed)
        CHECK(oracle::all_simple_paths(fixtures::perfect(9, seed)).size() == 1);
}

TEST_CASE("generated mazes are connected") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        CHECK(is_connected(fixtures::perfect(9 + 2 * static_cast<int>(seed % 8), seed)));
        CHECK(is_connected(fixtures::braided(9 + 2 * static_cast<int>(seed % 8), seed)));
    }
}

TEST_CASE("braiding opens loops") {
    std::size_t with_loops = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        with_loops += oracle::all_simple_paths(fixtures::braided(9, seed)).size() > 1;
    CHECK(with_loops > 10);
    // braiding only removes walls
    const Maze p = fixtures::perfect(21, 5);
    const Maze b = generate_maze(21, 21, Braided{1.0}, 5);
    for (std::size_t i = 0; i < p.cell_count(); ++i)
        if (p.cells()[i] == Cell::Channel) CHECK(b.cells()[i] == Cell::Channel);
}

TEST_CASE("zero loop fraction reproduces the perfect maze") {
    CHECK(generate_maze(15, 15, Braided{0.0}, 4) == fixtures::perfect(15, 4));
}

TEST_CASE("disconnected maze is detected") {
    const Maze m = parse_maze("S.#.D\n");
    CHECK_FALSE(is_connected(m));
    const auto r = reachable_from(m, m.source());
    CHECK(r[1]);
    CHECK_FALSE(r[3]);
}

TEST_CASE("stub stripping keeps the through route") {
    const Maze m = fixtures::stub();
    const auto keep = strip_dead_ends(m);
    CHECK(keep[m.index({2, 1})]);
    CHECK_FALSE(keep[m.index({2, 2})]);
    CHECK_FALSE(keep[m.index({2, 3})]);
    CHECK(keep[m.index(m.source())]);
    CHECK(keep[m.index(m.destination())]);
}

TEST_CASE("endpoint checks") {
    const Maze m = fixtures::open3();
    CHECK(error_of([&] { with_endpoints(m, {0, 0}, {0, 0}); }) == ErrorKind::InvalidEndpoints);
    CHECK(error_of([&] { with_endpoints(fixtures::loop(), {0, 0}, {1, 1}); }) == ErrorKind::InvalidEndpoints);
    CHECK(with_endpoints(m, {2, 2}, {0, 0}).source() == Coord{2, 2});
}
