#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nvforge {

// Whole-file text IO. Throws IoError on failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Two-column numeric CSV with a mandatory exact header `col_a,col_b`.
// Blank lines are skipped. Throws ParseError with a `line N:` prefix on a
// wrong header or malformed row.
std::vector<std::pair<double, double>> parse_pair_csv(const std::string& text,
                                                      const std::string& col_a,
                                                      const std::string& col_b);

std::vector<std::pair<double, double>> load_pair_csv(const std::string& path,
                                                     const std::string& col_a,
                                                     const std::string& col_b);

}  // namespace nvforge
