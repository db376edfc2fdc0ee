#include "zzq/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <system_error>

namespace zzq {

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
    if (header_.empty()) {
        throw std::invalid_argument("CSV header must not be empty");
    }
}

void CsvTable::add_row(Row row) {
    if (row.size() != header_.size()) {
        throw std::invalid_argument("CSV row has " + std::to_string(row.size()) + " cells, header has " +
                                    std::to_string(header_.size()));
    }
    rows_.push_back(std::move(row));
}

std::size_t CsvTable::column(const std::string &name) const {
    const auto it = std::find(header_.begin(), header_.end(), name);
    if (it == header_.end()) {
        throw std::out_of_range("no CSV column named " + name);
    }
    return static_cast<std::size_t>(it - header_.begin());
}

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.11e", value);
    return buf;
}

std::string CsvTable::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
        out += (i ? "," : "") + header_[i];
    }
    out += '\n';
    for (const Row &row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out += ',';
            }
            if (row[i]) {
                out += format_real(*row[i]);
            }
        }
        out += '\n';
    }
    return out;
}

void write_text_file(const std::filesystem::path &path, const std::string &contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) {
            throw IoError("cannot open " + tmp.string() + " for writing");
        }
        os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!os) {
            throw IoError("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into place at " + path.string());
    }
}

}  // namespace zzq
