#ifndef QW_IO_HPP
#define QW_IO_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qw {

// Doubles print with 17 significant digits so a reader recovers the exact bits.
std::string format_double17(double v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// RFC-4180-style CSV: header row, CRLF-free newlines, 17-significant-digit floats.
void emit_csv(const std::string& path, const Table& table);

// Whitespace-separated two-column text for plotting tools.
void emit_plotdata(const std::string& path, const std::vector<std::pair<double, double>>& series);

// Flat key = value config text; '#' starts a comment, blank lines ignored.
std::map<std::string, std::string> parse_config_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace qw

#endif
