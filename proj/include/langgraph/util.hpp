#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace langgraph {

/// Collects non-fatal warnings emitted while loading or analysing data.
class Diagnostics {
public:
    void warn(std::string message) { warnings_.push_back(std::move(message)); }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }
    bool empty() const noexcept { return warnings_.empty(); }

private:
    std::vector<std::string> warnings_;
};

namespace util {

/// Tab for `.tsv`, comma for `.csv`; anything else is read as tab-separated.
char delimiter_for(const std::filesystem::path& path);

struct TextRow {
    std::size_t line = 0;  // 1-based
    std::vector<std::string> cells;
};

/// A delimited text file split into a header and data rows. Blank lines are
/// skipped; line numbers refer to the physical file.
struct TextTable {
    std::vector<std::string> header;
    std::vector<TextRow> rows;

    std::optional<std::size_t> column(std::string_view name) const;
};

TextTable read_table(const std::filesystem::path& path, std::string_view module);
std::vector<std::string> split(std::string_view text, char delimiter);
std::string trim(std::string_view text);
std::string to_lower(std::string_view text);

/// Shortest representation that parses back to the same double.
std::string format_double(double value);
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

void write_text_file(const std::filesystem::path& path, std::string_view contents,
                     std::string_view module);

/// Runs `body(begin, end)` over contiguous chunks of [0, count) on up to
/// `threads` workers. Chunk boundaries depend only on `count` and `threads`.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

/// Decodes UTF-8 into code points; invalid bytes map to U+FFFD.
std::u32string decode_utf8(std::string_view text);

}  // namespace util
}  // namespace langgraph
