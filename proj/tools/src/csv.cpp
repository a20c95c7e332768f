#include "satlms_tool/csv.hpp"

#include <charconv>
#include <cmath>

#include "satlms_tool/errors.hpp"

namespace satlms_tool {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

CsvFile::CsvFile(const std::string& path) : out_(path), path_(path) {
    if (!out_) throw IoError("cannot open '" + path + "' for writing");
}

void CsvFile::comment(const std::string& line) { out_ << "# " << line << "\n"; }

void CsvFile::header(const std::vector<std::string>& names) { row(names); }

void CsvFile::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << "\n";
}

void CsvFile::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        out_ << format_double(values[i]);
    }
    out_ << "\n";
}

void CsvFile::finish() {
    out_.flush();
    if (!out_) throw IoError("write to '" + path_ + "' failed");
}

} // namespace satlms_tool
