#include "gradmaze/maze.hpp"

#include "gradmaze/error.hpp"
#include "gradmaze/rng.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <utility>

namespace gradmaze {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::InvalidDimensions: return "InvalidDimensions";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidEndpoints: return "InvalidEndpoints";
    case ErrorKind::WallQuery: return "WallQuery";
    case ErrorKind::Unreachable: return "Unreachable";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::LocalExtremum: return "LocalExtremum";
    case ErrorKind::StepBudgetExceeded: return "StepBudgetExceeded";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::DisconnectedHotSet: return "DisconnectedHotSet";
    case ErrorKind::AmbiguousPath: return "AmbiguousPath";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::PathOutsideMaze: return "PathOutsideMaze";
    case ErrorKind::DegenerateRange: return "DegenerateRange";
    case ErrorKind::NotQuiescent: return "NotQuiescent";
    }
    return "Unknown";
}

char direction_glyph(Direction d) {
    switch (d) {
    case Direction::North: return 'N';
    case Direction::East: return 'E';
    case Direction::South: return 'S';
    case Direction::West: return 'W';
    }
    return '?';
}

Maze::Maze(int width, int height, std::vector<Cell> cells, Coord source, Coord destination)
    : width_(width), height_(height), cells_(std::move(cells)), source_(source),
      destination_(destination) {
    if (width <= 0 || height <= 0)
        throw Error(ErrorKind::InvalidDimensions, "maze dimensions must be positive");
    if (cells_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw Error(ErrorKind::InvalidDimensions, "cell count does not match dimensions");
    if (!is_channel(source_) || !is_channel(destination_))
        throw Error(ErrorKind::InvalidEndpoints, "source and destination must be channel cells");
    if (source_ == destination_)
        throw Error(ErrorKind::InvalidEndpoints, "source and destination must differ");
}

NeighborList Maze::neighbors(Coord c) const {
    if (!is_channel(c))
        throw Error(ErrorKind::WallQuery, "neighbour query on a wall or outside the maze");
    return channel_neighbors(c);
}

NeighborList neighbors(const Maze& maze, Coord c) { return maze.neighbors(c); }

Maze parse_maze(std::string_view text) {
    std::vector<std::string_view> rows;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view row = text.substr(pos, eol - pos);
        while (!row.empty() && (row.back() == ' ' || row.back() == '\t' || row.back() == '\r'))
            row.remove_suffix(1);
        rows.push_back(row);
        pos = eol + 1;
    }
    while (!rows.empty() && rows.back().empty()) rows.pop_back();
    if (rows.empty()) throw Error(ErrorKind::MalformedInput, "empty maze");

    const std::size_t width = rows.front().size();
    if (width == 0) throw Error(ErrorKind::MalformedInput, "empty first row");

    std::vector<Cell> cells;
    cells.reserve(width * rows.size());
    int sources = 0, destinations = 0;
    Coord source{}, destination{};
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != width)
            throw Error(ErrorKind::MalformedInput, "ragged rows (row " + std::to_string(r) + ")");
        for (std::size_t c = 0; c < width; ++c) {
            const Coord here{static_cast<int>(r), static_cast<int>(c)};
            switch (rows[r][c]) {
            case '#': cells.push_back(Cell::Wall); break;
            case '.': cells.push_back(Cell::Channel); break;
            case 'S':
                cells.push_back(Cell::Channel);
                source = here;
                ++sources;
                break;
            case 'D':
                cells.push_back(Cell::Channel);
                destination = here;
                ++destinations;
                break;
            default:
                throw Error(ErrorKind::MalformedInput,
                            "illegal character at row " + std::to_string(r) + " col " +
                                std::to_string(c));
            }
        }
    }
    if (sources != 1) throw Error(ErrorKind::MalformedInput, "expected exactly one 'S'");
    if (destinations != 1) throw Error(ErrorKind::MalformedInput, "expected exactly one 'D'");
    return Maze(static_cast<int>(width), static_cast<int>(rows.size()), std::move(cells), source,
                destination);
}

namespace {

void braid(std::vector<Cell>& cells, int width, int height, Coord source, Coord destination,
           double fraction, Rng& rng) {
    auto idx = [width](Coord c) { return static_cast<std::size_t>(c.row) * width + c.col; };
    auto channel = [&](Coord c) {
        return c.row >= 0 && c.col >= 0 && c.row < height && c.col < width &&
               cells[idx(c)] == Cell::Channel;
    };
    auto degree = [&](Coord c) {
        int n = 0;
        for (Direction d : kDirections) n += channel(step(c, d)) ? 1 : 0;
        return n;
    };

    std::vector<Coord> dead_ends;
    for (int r = 1; r < height; r += 2)
        for (int c = 1; c < width; c += 2)
            if (Coord room{r, c}; room != source && room != destination && degree(room) == 1)
                dead_ends.push_back(room);

    for (std::size_t i = dead_ends.size(); i > 1; --i)
        std::swap(dead_ends[i - 1], dead_ends[rng.below(i)]);
    const auto take = static_cast<std::size_t>(
        std::floor(fraction * static_cast<double>(dead_ends.size()) + 0.5));

    for (std::size_t i = 0; i < take && i < dead_ends.size(); ++i) {
        const Coord room = dead_ends[i];
        if (degree(room) != 1) continue;
        std::array<Coord, 4> walls{};
        std::size_t n = 0;
        for (Direction d : kDirections) {
            const Coord wall = step(room, d);
            const Coord beyond = step(wall, d);
            if (wall.row <= 0 || wall.col <= 0 || wall.row >= height - 1 || wall.col >= width - 1)
                continue;
            if (!channel(wall) && channel(beyond)) walls[n++] = wall;
        }
        if (n == 0) continue;
        cells[idx(walls[rng.below(n)])] = Cell::Channel;
    }
}

} // namespace

Maze generate_maze(int width, int height, const MazeKind& kind, std::uint64_t seed) {
    if (width < 3 || height < 3 || width % 2 == 0 || height % 2 == 0)
        throw Error(ErrorKind::InvalidDimensions,
                    "width and height must be odd and at least 3 (got " + std::to_string(width) +
                        "x" + std::to_string(height) + ")");

    std::vector<Cell> cells(static_cast<std::size_t>(width) * height, Cell::Wall);
    auto idx = [width](Coord c) { return static_cast<std::size_t>(c.row) * width + c.col; };
    Rng rng(seed);

    const Coord first_room{1, 1};
    std::vector<Coord> stack{first_room};
    cells[idx(first_room)] = Cell::Channel;
    while (!stack.empty()) {
        const Coord room = stack.back();
        std::array<Direction, 4> open{};
        std::size_t n = 0;
        for (Direction d : kDirections) {
            const Coord next = step(step(room, d), d);
            if (next.row > 0 && next.col > 0 && next.row < height - 1 && next.col < width - 1 &&
                cells[idx(next)] == Cell::Wall)
                open[n++] = d;
        }
        if (n == 0) {
            stack.pop_back();
            continue;
        }
        const Direction d = open[rng.below(n)];
        cells[idx(step(room, d))] = Cell::Channel;
        const Coord next = step(step(room, d), d);
        cells[idx(next)] = Cell::Channel;
        stack.push_back(next);
    }

    const Coord source{0, 1};
    const Coord destination{height - 1, width - 2};
    cells[idx(source)] = Cell::Channel;
    cells[idx(destination)] = Cell::Channel;

    if (const auto* b = std::get_if<Braided>(&kind)) {
        if (!(b->loop_fraction >= 0.0 && b->loop_fraction <= 1.0))
            throw Error(ErrorKind::InvalidArgument, "loop fraction must lie in [0, 1]");
        braid(cells, width, height, source, destination, b->loop_fraction, rng);
    }
    return Maze(width, height, std::move(cells), source, destination);
}

std::vector<bool> reachable_from(const Maze& maze, Coord from) {
    std::vector<bool> seen(maze.cell_count(), false);
    if (!maze.is_channel(from)) return seen;
    std::deque<Coord> queue{from};
    seen[maze.index(from)] = true;
    while (!queue.empty()) {
        const Coord c = queue.front();
        queue.pop_front();
        for (const Neighbor& n : maze.channel_neighbors(c)) {
            if (!seen[maze.index(n.cell)]) {
                seen[maze.index(n.cell)] = true;
                queue.push_back(n.cell);
            }
        }
    }
    return seen;
}

bool is_connected(const Maze& maze) {
    return reachable_from(maze, maze.source())[maze.index(maze.destination())];
}

std::vector<bool> strip_dead_ends(const Maze& maze) {
    std::vector<bool> alive(maze.cell_count(), false);
    std::vector<int> degree(maze.cell_count(), 0);
    for (std::size_t i = 0; i < maze.cell_count(); ++i) {
        if (maze.cells()[i] != Cell::Channel) continue;
        alive[i] = true;
        degree[i] = static_cast<int>(maze.channel_neighbors(maze.coord(i)).size());
    }
    auto pinned = [&](std::size_t i) {
        return i == maze.index(maze.source()) || i == maze.index(maze.destination());
    };
    std::vector<std::size_t> work;
    for (std::size_t i = 0; i < maze.cell_count(); ++i)
        if (alive[i] && !pinned(i) && degree[i] <= 1) work.push_back(i);
    while (!work.empty()) {
        const std::size_t i = work.back();
        work.pop_back();
        if (!alive[i]) continue;
        alive[i] = false;
        for (const Neighbor& n : maze.channel_neighbors(maze.coord(i))) {
            const std::size_t j = maze.index(n.cell);
            if (alive[j] && --degree[j] <= 1 && !pinned(j)) work.push_back(j);
        }
    }
    return alive;
}

Maze with_endpoints(const Maze& maze, Coord source, Coord destination) {
    return Maze(maze.width(), maze.height(), maze.cells(), source, destination);
}

} // namespace gradmaze
