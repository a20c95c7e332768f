#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace satlms_tool {

/// Shortest decimal representation that parses back to exactly `v`
/// (std::to_chars round-trip guarantee). "inf"/"nan" for non-finite values.
std::string format_double(double v);

/// Comma-separated file with `#`-prefixed comment lines. The writer is
/// deliberately dumb: no quoting, because every cell we emit is a number or
/// a bare identifier.
class CsvFile {
public:
    explicit CsvFile(const std::string& path);

    void comment(const std::string& line);
    void header(const std::vector<std::string>& names);
    void row(const std::vector<std::string>& cells);
    void row(const std::vector<double>& values);

    /// Flush and report failure once, instead of checking every write.
    void finish();

private:
    std::ofstream out_;
    std::string path_;
};

} // namespace satlms_tool
