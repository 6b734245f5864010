#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace adasolve::detail {

using Row = std::vector<std::string>;

// Left-aligned columns, each as wide as its longest cell, two spaces apart.
inline std::string format_table(const std::vector<Row>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line += row[i];
            if (i + 1 < row.size()) line.append(width[i] - row[i].size() + 2, ' ');
        }
        out += line + '\n';
    }
    return out;
}

}  // namespace adasolve::detail
