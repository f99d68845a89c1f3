#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gradmaze {

struct Coord {
    int row = 0;
    int col = 0;

    auto operator<=>(const Coord&) const = default;
};

/// Von Neumann directions. The declaration order N, E, S, W is the global
/// tie-break: every engine that has to choose between equal candidates picks
/// the earliest direction in this order.
enum class Direction : std::uint8_t { North, East, South, West };

inline constexpr std::array<Direction, 4> kDirections{
    Direction::North, Direction::East, Direction::South, Direction::West};

constexpr Coord step(Coord c, Direction d) {
    switch (d) {
    case Direction::North: return {c.row - 1, c.col};
    case Direction::East: return {c.row, c.col + 1};
    case Direction::South: return {c.row + 1, c.col};
    case Direction::West: return {c.row, c.col - 1};
    }
    return c;
}

constexpr Direction opposite(Direction d) {
    return static_cast<Direction>((static_cast<int>(d) + 2) % 4);
}

char direction_glyph(Direction d);

enum class Cell : std::uint8_t { Wall, Channel };

struct Neighbor {
    Coord cell;
    Direction dir;
};

/// At most four neighbours, stored inline and kept in N, E, S, W order.
class NeighborList {
public:
    void push(Coord c, Direction d) { items_[size_++] = Neighbor{c, d}; }
    const Neighbor* begin() const { return items_.data(); }
    const Neighbor* end() const { return items_.data() + size_; }
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    const Neighbor& operator[](std::size_t i) const { return items_[i]; }

private:
    std::array<Neighbor, 4> items_{};
    std::size_t size_ = 0;
};

/// Rectangular wall/channel grid with a designated source and destination.
/// Immutable after construction.
class Maze {
public:
    Maze(int width, int height, std::vector<Cell> cells, Coord source, Coord destination);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t cell_count() const { return cells_.size(); }
    Coord source() const { return source_; }
    Coord destination() const { return destination_; }

    bool contains(Coord c) const {
        return c.row >= 0 && c.col >= 0 && c.row < height_ && c.col < width_;
    }
    bool is_channel(Coord c) const { return contains(c) && cells_[index(c)] == Cell::Channel; }
    Cell at(Coord c) const { return cells_[index(c)]; }
    std::size_t index(Coord c) const {
        return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(c.col);
    }
    Coord coord(std::size_t index) const {
        return {static_cast<int>(index / static_cast<std::size_t>(width_)),
                static_cast<int>(index % static_cast<std::size_t>(width_))};
    }
    const std::vector<Cell>& cells() const { return cells_; }

    /// Channel neighbours in N, E, S, W order. Throws WallQuery for a wall or
    /// out-of-range cell.
    NeighborList neighbors(Coord c) const;

    /// Same as neighbors() without the wall check; the caller guarantees c is a channel.
    NeighborList channel_neighbors(Coord c) const {
        NeighborList out;
        for (Direction d : kDirections) {
            Coord n = step(c, d);
            if (is_channel(n)) out.push(n, d);
        }
        return out;
    }

    friend bool operator==(const Maze&, const Maze&) = default;

private:
    int width_;
    int height_;
    std::vector<Cell> cells_;
    Coord source_;
    Coord destination_;
};

struct Perfect {};
struct Braided {
    double loop_fraction = 0.5;
};
using MazeKind = std::variant<Perfect, Braided>;

/// Parses the ASCII maze format: equal-length rows of '#', '.', 'S', 'D'.
Maze parse_maze(std::string_view text);

/// Recursive-backtracker maze on an odd lattice (rooms at odd row/col).
/// Source is carved into the top border above the first room, destination
/// into the bottom border below the last room.
Maze generate_maze(int width, int height, const MazeKind& kind, std::uint64_t seed);

NeighborList neighbors(const Maze& maze, Coord c);

bool is_connected(const Maze& maze);

/// Channel cells reachable from `from` (indexed like Maze::cells()).
std::vector<bool> reachable_from(const Maze& maze, Coord from);

/// Channel cells that are not part of any dead-end tree: repeatedly strips
/// degree-one channel cells other than source and destination. What remains
/// is marked true; stripped cells are the stubs.
std::vector<bool> strip_dead_ends(const Maze& maze);

/// Maze with the same walls and a different source/destination pair.
Maze with_endpoints(const Maze& maze, Coord source, Coord destination);

} // namespace gradmaze
