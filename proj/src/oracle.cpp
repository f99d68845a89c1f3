#include "gradmaze/oracle.hpp"

#include "gradmaze/error.hpp"
#include "gradmaze/trace.hpp"

#include <algorithm>

namespace gradmaze {

DistanceField::DistanceField(int width, int height, Coord origin)
    : width_(width), height_(height), origin_(origin),
      labels_(static_cast<std::size_t>(width) * height, -1) {}

std::size_t ParentMap::pointer_count() const {
    return static_cast<std::size_t>(
        std::count_if(pointers_.begin(), pointers_.end(), [](const auto& p) { return p.has_value(); }));
}

DistanceField lee_label(const Maze& maze, Coord origin) {
    if (!maze.is_channel(origin))
        throw Error(ErrorKind::WallQuery, "Lee labeling must start on a channel cell");
    DistanceField field(maze.width(), maze.height(), origin);
    auto& labels = field.labels_;

    // Frontier-synchronous: every cell of wave i is labeled before wave i+1 starts.
    std::vector<std::size_t> frontier{maze.index(origin)};
    std::vector<std::size_t> next;
    labels[frontier.front()] = 0;
    std::int32_t wave = 0;
    const int width = maze.width();
    const auto& cells = maze.cells();
    while (!frontier.empty()) {
        ++wave;
        next.clear();
        for (std::size_t i : frontier) {
            const int row = static_cast<int>(i / width);
            const int col = static_cast<int>(i % width);
            const std::size_t candidates[4] = {
                row > 0 ? i - width : i,
                col + 1 < width ? i + 1 : i,
                row + 1 < maze.height() ? i + width : i,
                col > 0 ? i - 1 : i,
            };
            for (std::size_t j : candidates) {
                if (j == i || cells[j] != Cell::Channel || labels[j] >= 0) continue;
                labels[j] = wave;
                next.push_back(j);
            }
        }
        if (!next.empty()) field.max_label_ = wave;
        frontier.swap(next);
    }
    return field;
}

Path lee_trace(const Maze& maze, const DistanceField& field, Coord source) {
    if (!field.is_labeled(source))
        throw Error(ErrorKind::Unreachable, "source is not labeled");
    return greedy_trace(field, maze, source, field.origin(), TraceMode::DescendToMin,
                        maze.cell_count());
}

ParentMap spanning_tree(const Maze& maze, const DistanceField& field) {
    ParentMap tree(field.width(), field.height(), field.origin());
    for (std::size_t i = 0; i < maze.cell_count(); ++i) {
        const Coord c = maze.coord(i);
        const auto label = field.at(c);
        if (!label || *label == 0) continue;
        for (const Neighbor& n : maze.channel_neighbors(c)) {
            if (field.at(n.cell) == *label - 1) {
                tree.set_pointer(c, n.dir);
                break;
            }
        }
    }
    return tree;
}

std::vector<Path> enumerate_simple_paths(const Maze& maze, std::size_t cap, std::size_t path_limit) {
    if (maze.cell_count() > cap)
        throw Error(ErrorKind::TooLarge, "maze has " + std::to_string(maze.cell_count()) +
                                             " cells, enumeration cap is " + std::to_string(cap));
    std::vector<Path> out;
    std::vector<bool> on_path(maze.cell_count(), false);
    Path current;
    const Coord target = maze.destination();

    struct Frame {
        Coord cell;
        NeighborList next;
        std::size_t cursor;
    };
    std::vector<Frame> stack;
    auto push = [&](Coord c) {
        current.cells.push_back(c);
        on_path[maze.index(c)] = true;
        stack.push_back({c, maze.channel_neighbors(c), 0});
    };
    auto pop = [&] {
        on_path[maze.index(stack.back().cell)] = false;
        current.cells.pop_back();
        stack.pop_back();
    };

    push(maze.source());
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.cell == target) {
            out.push_back(current);
            if (out.size() > path_limit)
                throw Error(ErrorKind::TooLarge, "more than " + std::to_string(path_limit) +
                                                     " simple paths");
            pop();
            continue;
        }
        if (top.cursor == top.next.size()) {
            pop();
            continue;
        }
        const Coord n = top.next[top.cursor++].cell;
        if (!on_path[maze.index(n)]) push(n);
    }
    return out;
}

} // namespace gradmaze
