#include <charconv>
#include <string>

#include "ctrw/paths.hpp"

namespace ctrw {

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

std::string to_csv(const GridPath& path) {
    std::string out = "t";
    for (std::size_t c = 0; c < path.dim; ++c) out += ",x_" + std::to_string(c + 1);
    out += '\n';
    for (std::size_t i = 0; i < path.size(); ++i) {
        out += format_double(static_cast<double>(i) * path.dt);
        for (double v : path.point(i)) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

std::string to_csv(const SubordinatorPath& path) {
    std::string out = "x,D\n";
    for (std::size_t j = 0; j < path.size(); ++j) {
        out += format_double(static_cast<double>(j) * path.dx);
        out += ',';
        out += format_double(path.values[j]);
        out += '\n';
    }
    return out;
}

std::string to_csv(const TimeChange& tc) {
    std::string out = "t,E,passage_index\n";
    for (std::size_t i = 0; i < tc.size(); ++i) {
        out += format_double(static_cast<double>(i) * tc.dt);
        out += ',';
        out += format_double(tc.e_values[i]);
        out += ',';
        out += std::to_string(tc.passage_index[i]);
        out += '\n';
    }
    return out;
}

}  // namespace ctrw
