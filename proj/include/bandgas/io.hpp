#pragma once

#include <string>
#include <vector>

namespace bandgas {

// '#'-prefixed metadata lines, a header row and numeric rows
struct Table {
    std::vector<std::string> meta;  // text after the '#'
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// %.17g; nan, inf, -inf spelled out
std::string format_double(double x);
double parse_double(const std::string& s);  // throws DomainError

std::string to_csv(const Table& t);
Table parse_csv(const std::string& text);  // throws DomainError

std::string read_file(const std::string& path);
// temp file in the target directory, then rename; "-" writes to stdout
void write_atomic(const std::string& path, const std::string& content);

}  // namespace bandgas
