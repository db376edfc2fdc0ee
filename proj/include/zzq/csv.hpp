#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zzq {

/// Rectangular table of reals. Cells are written in scientific notation with 12
/// significant digits, comma separated, LF terminated; absent cells are empty fields.
class CsvTable {
public:
    using Row = std::vector<std::optional<double>>;

    explicit CsvTable(std::vector<std::string> header);

    /// Throws std::invalid_argument when the row width differs from the header.
    void add_row(Row row);

    const std::vector<std::string> &header() const { return header_; }
    const std::vector<Row> &rows() const { return rows_; }

    /// Index of a header column; throws std::out_of_range if absent.
    std::size_t column(const std::string &name) const;

    std::string to_string() const;

private:
    std::vector<std::string> header_;
    std::vector<Row> rows_;
};

/// "%.11e" formatting, e.g. 1.00000000000e+00.
std::string format_real(double value);

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Writes through a temporary sibling file and renames it into place, so a failed write
/// never leaves a partial file at `path`.
void write_text_file(const std::filesystem::path &path, const std::string &contents);

}  // namespace zzq
