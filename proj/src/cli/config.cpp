// config.cpp — key=value config files and grid/range argument parsing

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dqw/cli.hpp"
#include "dqw/errors.hpp"

namespace dqw::cli {

namespace {

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

double to_double(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto* first = t.data();
    const auto* last = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (t.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
        throw InvalidInput("cannot parse " + what + " '" + text + "' as a finite number");
    }
    return v;
}

int to_int(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    int v = 0;
    const auto* first = t.data();
    const auto* last = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (t.empty() || ec != std::errc{} || ptr != last) {
        throw InvalidInput("cannot parse " + what + " '" + text + "' as an integer");
    }
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) parts.push_back(item);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

} // namespace

Settings parse_config(std::istream& in, Settings base) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidInput("config line " + std::to_string(lineno) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        std::replace(key.begin(), key.end(), '-', '_');
        const std::string value = line.substr(eq + 1);
        if (key == "mass_tol") {
            base.mass_tol = to_double(value, key);
        } else if (key == "eps_tail") {
            base.eps_tail = to_double(value, key);
        } else if (key == "quad_nodes") {
            base.quad_nodes = to_int(value, key);
        } else if (key == "k_nodes") {
            base.k_nodes = to_int(value, key);
        } else if (key == "jobs") {
            base.jobs = to_int(value, key);
        } else {
            throw InvalidInput("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    return base;
}

Settings load_config(const std::string& path, Settings base) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    return parse_config(in, base);
}

SiteRange parse_site_range(const std::string& text) {
    // "-40:40": split on the last ':' that is not a leading sign
    const auto colon = text.find(':', 1);
    if (colon == std::string::npos) throw InvalidInput("site range must look like lo:hi (got '" + text + "')");
    SiteRange r{to_int(text.substr(0, colon), "site range"), to_int(text.substr(colon + 1), "site range")};
    if (r.hi < r.lo) throw InvalidInput("site range: hi < lo in '" + text + "'");
    return r;
}

std::vector<double> parse_grid(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw InvalidInput("grid must look like a:b:step (got '" + text + "')");
    const double a = to_double(parts[0], "grid start");
    const double b = to_double(parts[1], "grid end");
    const double step = to_double(parts[2], "grid step");
    if (!(step > 0.0) || b < a) throw InvalidInput("grid needs step > 0 and b >= a (got '" + text + "')");

    // Points a + i*step; the end point is included when it lies within 1e-9 steps.
    const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
    if (count > 10'000'000) throw InvalidInput("grid has too many points");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) grid.push_back(a + static_cast<double>(i) * step);
    return grid;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) out.push_back(to_double(part, "list entry"));
    if (out.empty()) throw InvalidInput("empty list");
    return out;
}

} // namespace dqw::cli
