#include "iontrap/cli/csv.hpp"

#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

namespace iontrap::cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.12g}", v);
}

std::string CsvWriter::quote(std::string_view v) {
    if (v.find_first_of(",\"\n") == std::string_view::npos) return std::string(v);
    std::string out = "\"";
    for (char c : v) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void CsvWriter::header(std::initializer_list<std::string_view> columns) {
    std::vector<std::string> cells;
    for (auto c : columns) cells.emplace_back(c);
    columns_ = 0;
    row(cells);
    columns_ = cells.size();
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (columns_ != 0 && cells.size() != columns_) {
        throw std::logic_error("CSV row width does not match its header");
    }
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) out_ << ',';
        out_ << cells[k];
    }
    out_ << '\n';
}

void CsvWriter::next_block() {
    out_ << '\n';
    columns_ = 0;
}

std::vector<std::vector<std::vector<std::string>>> parse_csv_blocks(std::string_view text) {
    std::vector<std::vector<std::vector<std::string>>> blocks(1);
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty()) {
            if (!blocks.back().empty()) blocks.emplace_back();
            continue;
        }
        std::vector<std::string> cells(1);
        bool quoted = false;
        for (std::size_t k = 0; k < line.size(); ++k) {
            const char c = line[k];
            if (quoted) {
                if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
                    cells.back() += '"';
                    ++k;
                } else if (c == '"') {
                    quoted = false;
                } else {
                    cells.back() += c;
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                cells.emplace_back();
            } else {
                cells.back() += c;
            }
        }
        blocks.back().push_back(std::move(cells));
    }
    if (blocks.back().empty()) blocks.pop_back();
    return blocks;
}

}  // namespace iontrap::cli
