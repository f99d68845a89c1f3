#include "gradmaze/io.hpp"

#include "gradmaze/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <variant>

namespace gradmaze {

std::string format_real(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

void check_path_cells(const Maze& maze, const Path& path) {
    for (const Coord& c : path.cells)
        if (!maze.is_channel(c))
            throw Error(ErrorKind::PathOutsideMaze,
                        "path cell (" + std::to_string(c.row) + "," + std::to_string(c.col) +
                            ") is not a channel");
}

} // namespace

std::string render_ascii(const Maze& maze, const Path* path) {
    std::string out;
    out.reserve(static_cast<std::size_t>(maze.height()) * (maze.width() + 1));
    for (int r = 0; r < maze.height(); ++r) {
        for (int c = 0; c < maze.width(); ++c) {
            const Coord here{r, c};
            if (here == maze.source()) out.push_back('S');
            else if (here == maze.destination()) out.push_back('D');
            else out.push_back(maze.at(here) == Cell::Wall ? '#' : '.');
        }
        out.push_back('\n');
    }
    if (path) {
        check_path_cells(maze, *path);
        for (const Coord& c : path->cells) {
            char& glyph = out[static_cast<std::size_t>(c.row) * (maze.width() + 1) + c.col];
            if (glyph == '.') glyph = '*';
        }
    }
    return out;
}

std::string render_field_image(const ScalarField& field, const Maze& maze, const RenderSpec& spec) {
    if (spec.target != RenderTarget::GrayscaleImage)
        throw Error(ErrorKind::InvalidArgument, "render_field_image needs a GrayscaleImage target");
    if (spec.scale < 1) throw Error(ErrorKind::InvalidArgument, "scale must be at least 1");
    if (field.width() != maze.width() || field.height() != maze.height())
        throw Error(ErrorKind::InvalidArgument, "field and maze dimensions differ");

    double lo = 0.0, hi = 0.0;
    if (const auto* fixed = std::get_if<FixedRange>(&spec.normalize)) {
        if (!(fixed->lo < fixed->hi)) throw Error(ErrorKind::InvalidArgument, "fixed range needs lo < hi");
        lo = fixed->lo;
        hi = fixed->hi;
    } else {
        bool any = false;
        for (std::size_t i = 0; i < maze.cell_count(); ++i) {
            const Coord c = maze.coord(i);
            const auto v = field.at(c);
            if (!v || !maze.is_channel(c)) continue;
            if (!any) lo = hi = *v;
            lo = std::min(lo, *v);
            hi = std::max(hi, *v);
            any = true;
        }
        if (!any || !(lo < hi))
            throw Error(ErrorKind::DegenerateRange, "field is constant; use a fixed range");
    }

    auto gray = [&](Coord c) -> long {
        const auto v = field.at(c);
        if (!v || !maze.is_channel(c)) return 0;
        const double t = std::clamp((*v - lo) / (hi - lo), 0.0, 1.0);
        return 1 + std::lround(t * 254.0);
    };

    const int s = spec.scale;
    std::string out = "P2\n" + std::to_string(maze.width() * s) + " " +
                      std::to_string(maze.height() * s) + "\n255\n";
    for (int r = 0; r < maze.height(); ++r) {
        std::string line;
        for (int c = 0; c < maze.width(); ++c) {
            const std::string token = std::to_string(gray({r, c}));
            for (int k = 0; k < s; ++k) {
                if (!line.empty()) line.push_back(' ');
                line += token;
            }
        }
        line.push_back('\n');
        for (int k = 0; k < s; ++k) out += line;
    }
    return out;
}

std::string render_vector(const Maze& maze, const Path& path, const ScalarField* field, int scale) {
    if (scale < 1) throw Error(ErrorKind::InvalidArgument, "scale must be at least 1");
    check_path_cells(maze, path);
    const int w = maze.width() * scale;
    const int h = maze.height() * scale;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    for (int r = 0; r < maze.height(); ++r)
        for (int c = 0; c < maze.width(); ++c)
            if (maze.at({r, c}) == Cell::Wall)
                out << "<rect x=\"" << c * scale << "\" y=\"" << r * scale << "\" width=\"" << scale
                    << "\" height=\"" << scale << "\" fill=\"black\"/>\n";

    if (field) {
        double lo = 0.0, hi = 0.0;
        bool any = false;
        for (std::size_t i = 0; i < maze.cell_count(); ++i)
            if (const auto v = field->at(maze.coord(i)); v && maze.is_channel(maze.coord(i))) {
                lo = any ? std::min(lo, *v) : *v;
                hi = any ? std::max(hi, *v) : *v;
                any = true;
            }
        for (int r = 0; r < maze.height(); ++r)
            for (int c = 0; c < maze.width(); ++c) {
                const auto v = field->at({r, c});
                if (!v || !maze.is_channel({r, c})) continue;
                const double t = hi > lo ? (*v - lo) / (hi - lo) : 1.0;
                const long g = 40 + std::lround(t * 215.0);
                out << "<rect x=\"" << c * scale << "\" y=\"" << r * scale << "\" width=\"" << scale
                    << "\" height=\"" << scale << "\" fill=\"rgb(" << g << ',' << g << ',' << g
                    << ")\"/>\n";
            }
    }

    out << "<polyline fill=\"none\" stroke=\"red\" stroke-width=\"" << std::max(1, scale / 3)
        << "\" points=\"";
    for (std::size_t k = 0; k < path.cells.size(); ++k) {
        const Coord c = path.cells[k];
        if (k) out << ' ';
        // Doubled coordinates keep cell centres integral for odd scales.
        out << (2 * c.col + 1) * scale / 2 << ',' << (2 * c.row + 1) * scale / 2;
    }
    out << "\"/>\n</svg>\n";
    return out.str();
}

std::string dump_distance_field(const DistanceField& field) {
    std::string out = "field " + std::to_string(field.width()) + " " + std::to_string(field.height()) +
                      " origin " + std::to_string(field.origin().row) + " " +
                      std::to_string(field.origin().col) + "\n";
    for (int r = 0; r < field.height(); ++r) {
        for (int c = 0; c < field.width(); ++c) {
            if (c) out.push_back(' ');
            const auto v = field.at({r, c});
            out += v ? std::to_string(*v) : "-";
        }
        out.push_back('\n');
    }
    return out;
}

std::string dump_scalar_field(const ScalarField& field) {
    std::string out = "field " + std::to_string(field.width()) + " " + std::to_string(field.height()) +
                      " kind " + std::string(to_string(field.kind())) + "\n";
    for (int r = 0; r < field.height(); ++r) {
        for (int c = 0; c < field.width(); ++c) {
            if (c) out.push_back(' ');
            const auto v = field.at({r, c});
            out += v ? format_real(*v) : "-";
        }
        out.push_back('\n');
    }
    return out;
}

std::string dump_arrival_field(const ArrivalField& field) {
    std::string out = "field " + std::to_string(field.width()) + " " + std::to_string(field.height()) +
                      " origin " + std::to_string(field.origin().row) + " " +
                      std::to_string(field.origin().col) + "\n";
    for (int r = 0; r < field.height(); ++r) {
        for (int c = 0; c < field.width(); ++c) {
            if (c) out.push_back(' ');
            const auto v = field.at({r, c});
            out += v ? std::to_string(*v) : "-";
        }
        out.push_back('\n');
    }
    return out;
}

std::string dump_pointer_grid(const ArrivalField& field) {
    std::string out = "pointers " + std::to_string(field.width()) + " " +
                      std::to_string(field.height()) + " origin " +
                      std::to_string(field.origin().row) + " " + std::to_string(field.origin().col) +
                      "\n";
    for (int r = 0; r < field.height(); ++r) {
        for (int c = 0; c < field.width(); ++c) {
            const Coord here{r, c};
            if (here == field.origin()) out.push_back('o');
            else if (const auto d = field.pointer(here)) out.push_back(direction_glyph(*d));
            else out.push_back('-');
        }
        out.push_back('\n');
    }
    return out;
}

std::string serialize_path(const Path& path) {
    std::string out = "path " + std::to_string(path.cells.size()) + "\n";
    for (const Coord& c : path.cells)
        out += std::to_string(c.row) + " " + std::to_string(c.col) + "\n";
    return out;
}

Path parse_path(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string keyword;
    long long count = -1;
    if (!(in >> keyword >> count) || keyword != "path" || count < 0)
        throw Error(ErrorKind::MalformedInput, "expected header 'path <n>'");
    Path path;
    path.cells.reserve(static_cast<std::size_t>(count));
    for (long long k = 0; k < count; ++k) {
        long long r = 0, c = 0;
        if (!(in >> r >> c)) throw Error(ErrorKind::MalformedInput, "truncated path body");
        path.cells.push_back({static_cast<int>(r), static_cast<int>(c)});
    }
    std::string extra;
    if (in >> extra) throw Error(ErrorKind::MalformedInput, "trailing data after path");
    return path;
}

bool is_valid_path(const Maze& maze, const Path& path) {
    if (path.cells.empty()) return false;
    std::set<Coord> seen;
    for (std::size_t k = 0; k < path.cells.size(); ++k) {
        const Coord c = path.cells[k];
        if (!maze.is_channel(c) || !seen.insert(c).second) return false;
        if (k) {
            const Coord p = path.cells[k - 1];
            if (std::abs(p.row - c.row) + std::abs(p.col - c.col) != 1) return false;
        }
    }
    return true;
}

} // namespace gradmaze
