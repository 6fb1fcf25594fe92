#include "qw/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qw/mat2.hpp"

namespace qw {

std::string format_double17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void emit_csv(const std::string& path, const Table& table) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::io_error, "emit_csv: cannot open " + path);
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out << ',';
        out << table.header[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double17(row[i]);
        }
        out << '\n';
    }
    if (!out) throw Error(ErrorCode::io_error, "emit_csv: write failed for " + path);
}

void emit_plotdata(const std::string& path, const std::vector<std::pair<double, double>>& series) {
    if (series.empty()) throw Error(ErrorCode::invalid_argument, "emit_plotdata: empty series");
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::io_error, "emit_plotdata: cannot open " + path);
    for (const auto& [x, y] : series) out << format_double17(x) << ' ' << format_double17(y) << '\n';
    if (!out) throw Error(ErrorCode::io_error, "emit_plotdata: write failed for " + path);
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_error, "config: cannot open " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::invalid_config,
                        "config: line " + std::to_string(lineno) + " is not key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw Error(ErrorCode::invalid_config,
                        "config: empty key on line " + std::to_string(lineno));
        kv[key] = val;
    }
    return kv;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::io_error, "cannot open " + path);
    out << content;
    if (!out) throw Error(ErrorCode::io_error, "write failed for " + path);
}

}  // namespace qw
