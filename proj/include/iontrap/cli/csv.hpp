#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace iontrap::cli {

/// 12 significant digits, shortest form; "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double v);

/// Comma-separated output with LF endings. A file may hold several blocks,
/// each starting with its own header row and separated by one empty line.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(std::initializer_list<std::string_view> columns);
    void row(const std::vector<std::string>& cells);
    /// Starts a new block; the next call must be header().
    void next_block();

    template <typename... Ts>
    void values(const Ts&... cells) {
        row({cell(cells)...});
    }

private:
    static std::string cell(double v) { return format_number(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(std::size_t v) { return std::to_string(v); }
    static std::string cell(const std::string& v) { return quote(v); }
    static std::string cell(const char* v) { return quote(v); }
    static std::string quote(std::string_view v);

    std::ostream& out_;
    std::size_t columns_ = 0;
};

/// Splits CSV text into blocks of rows (header first). Handles the quoting
/// CsvWriter produces.
std::vector<std::vector<std::vector<std::string>>> parse_csv_blocks(std::string_view text);

}  // namespace iontrap::cli
