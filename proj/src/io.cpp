#include "blowup/io.hpp"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "blowup/errors.hpp"

namespace blowup::io {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
    const fs::path target(path);
    const fs::path dir = target.parent_path().empty() ? fs::path(".") : target.parent_path();
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path tmp = dir / (target.filename().string() + ".tmp." +
                                std::to_string(static_cast<unsigned>(::getpid())));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IOError("cannot open " + tmp.string());
        out << content;
        if (!out.flush()) throw IOError("write failed for " + tmp.string());
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw IOError("rename failed for " + target.string() + ": " + ec.message());
    }
}

CsvWriter::CsvWriter(std::string path, const std::vector<std::string>& header)
    : path_(std::move(path)) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) buf_ << ',';
        buf_ << header[i];
    }
    buf_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) buf_ << ',';
        buf_ << format_double(v);
        first = false;
    }
    buf_ << '\n';
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) buf_ << ',';
        buf_ << cells[i];
    }
    buf_ << '\n';
}

void CsvWriter::commit() {
    if (committed_) return;
    atomic_write(path_, buf_.str());
    committed_ = true;
}

}  // namespace blowup::io
