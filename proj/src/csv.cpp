#include "collinear/csv.hpp"

#include "collinear/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

namespace collinear {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

std::string location(const std::string& source, std::size_t line, const std::string& column) {
    return source + ": line " + std::to_string(line) + ", column '" + column + "'";
}

}  // namespace

Dataset parse_csv(std::istream& in, const std::string& response_column, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw DataError(source + ": missing header row");
    ++line_no;
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

    std::vector<Column> columns;
    for (std::string_view name : split(line)) {
        if (name.empty()) throw DataError(source + ": empty column name in header");
        columns.push_back({std::string(name), {}});
    }

    bool seen_blank = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            seen_blank = true;
            continue;
        }
        if (seen_blank) throw DataError(source + ": blank line before line " + std::to_string(line_no));
        const auto cells = split(line);
        if (cells.size() != columns.size()) {
            throw DataError(source + ": line " + std::to_string(line_no) + " has " +
                            std::to_string(cells.size()) + " fields, header has " +
                            std::to_string(columns.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::string_view cell = cells[c];
            // from_chars rejects an explicit plus sign
            const std::string_view digits =
                cell.size() > 1 && cell.front() == '+' && cell[1] != '-' ? cell.substr(1) : cell;
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
            if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
                throw DataError(location(source, line_no, columns[c].name) + ": '" +
                                std::string(cell) + "' is not a number");
            }
            if (!std::isfinite(value)) {
                throw DataError(location(source, line_no, columns[c].name) + ": non-finite value '" +
                                std::string(cell) + "'");
            }
            columns[c].values.push_back(value);
        }
    }

    bool has_response = false;
    for (const Column& col : columns) has_response = has_response || col.name == response_column;
    if (!has_response) {
        throw DataError(source + ": response column '" + response_column + "' not in header");
    }
    return Dataset(std::move(columns), response_column);
}

Dataset read_csv(const std::filesystem::path& path, const std::string& response_column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return parse_csv(in, response_column, path.string());
}

void write_csv(const Dataset& data, std::ostream& out) {
    const auto& columns = data.columns();
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c].name;
    out << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < data.n(); ++i) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out << (c ? "," : "") << columns[c].values[i];
        }
        out << '\n';
    }
}

void write_csv(const Dataset& data, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    write_csv(data, out);
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace collinear
