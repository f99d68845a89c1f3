#pragma once

#include "gradmaze/maze.hpp"

#include <string>

namespace fixtures {

// Two routes from S to D: 4 moves through the top row, 6 through the bottom.
inline const std::string kLoop =
    "######\n"
    "S....#\n"
    "#.##.D\n"
    "#....#\n"
    "######\n";

// Single route with a two-cell stub hanging off (2,1).
inline const std::string kStub =
    "#S###\n"
    "#.###\n"
    "#...#\n"
    "#.###\n"
    "#D###\n";

inline const std::string kCorridor = "S....D\n";

inline const std::string kOpen3 =
    "S..\n"
    "...\n"
    "..D\n";

inline gradmaze::Maze loop() { return gradmaze::parse_maze(kLoop); }
inline gradmaze::Maze stub() { return gradmaze::parse_maze(kStub); }
inline gradmaze::Maze corridor() { return gradmaze::parse_maze(kCorridor); }
inline gradmaze::Maze open3() { return gradmaze::parse_maze(kOpen3); }

inline gradmaze::Maze perfect(int size, std::uint64_t seed) {
    return gradmaze::generate_maze(size, size, gradmaze::Perfect{}, seed);
}
inline gradmaze::Maze braided(int size, std::uint64_t seed) {
    return gradmaze::generate_maze(size, size, gradmaze::Braided{0.5}, seed);
}

} // namespace fixtures
