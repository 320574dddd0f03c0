#pragma once

#include <string>
#include <vector>

#include "bandgas/scaled.hpp"

namespace bandgas::cli {

inline constexpr const char* kVersion = "1.0.0";

// lo:hi:n with inclusive endpoints, n >= 2
struct Range {
    double lo = 0.0, hi = 1.0;
    int n = 2;
    double at(int i) const { return i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1); }
};

struct GridSpec {
    Range x, y;
};

Range parse_range(const std::string& s);         // throws DomainError
GridSpec parse_grid(const std::string& s);       // "x0:x1:nx,y0:y1:ny"
std::vector<int> parse_int_list(const std::string& s);  // "50,100,200"
cplx parse_point(const std::string& s);          // "re,im" or "re"

// key=value lines of every --config file spliced in as --key=value right after the subcommand,
// so that later command-line flags take precedence
std::vector<std::string> expand_config(const std::vector<std::string>& args);

// exit 0 on success, 1 on usage or domain errors, 2 on numerical failure
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace bandgas::cli
