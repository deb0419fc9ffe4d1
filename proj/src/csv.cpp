#include "riccati/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>

#include "riccati/errors.hpp"

namespace riccati::csv {

std::string format(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        const size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            break;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

double parse_double(std::string_view text, std::string_view context) {
    const std::string s = trim(text);
    if (s.empty()) {
        throw Error(ErrorCode::InvalidConfig, "empty number in " + std::string(context));
    }
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE) {
        throw Error(ErrorCode::InvalidConfig,
                    "cannot parse '" + s + "' as a number in " + std::string(context));
    }
    return v;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
    return f;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::Io, "cannot open " + path);
    return f;
}

}  // namespace riccati::csv
