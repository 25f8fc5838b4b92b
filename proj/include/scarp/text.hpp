#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scarp::text {

// Shortest representation that parses back to the same double.
std::string format_real(double value);

// Fixed-point with the given number of decimals.
std::string format_fixed(double value, int decimals);

std::optional<double> parse_real(std::string_view token);
std::optional<long long> parse_int(std::string_view token);

std::vector<std::string_view> split_ws(std::string_view line);
std::vector<std::string_view> split(std::string_view line, char sep);
std::string_view trim(std::string_view s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace scarp::text
