#pragma once

#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

// Deterministic artifact emission: CSV/JSON written atomically (temp file in
// the target directory, then rename), numbers at 17 significant digits.

namespace blowup::io {

std::string format_double(double v);  // %.16e

// Writes content to path atomically. Throws IOError.
void atomic_write(const std::string& path, const std::string& content);

class CsvWriter {
public:
    CsvWriter(std::string path, const std::vector<std::string>& header);
    void row(std::initializer_list<double> values);
    void raw_row(const std::vector<std::string>& cells);
    void commit();  // atomic write; no file appears before this

private:
    std::string path_;
    std::ostringstream buf_;
    bool committed_ = false;
};

}  // namespace blowup::io
