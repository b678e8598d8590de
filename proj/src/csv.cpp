#include "nvforge/csv.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nvforge/errors.hpp"

namespace nvforge {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double_token(const std::string& token, double* out) {
  if (token.empty()) return false;
  const char* begin = token.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end != begin + token.size() || errno == ERANGE) return false;
  *out = v;
  return true;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) fail(ErrorCode::IoError, "read failure on '" + path + "'");
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) fail(ErrorCode::IoError, "write failure on '" + path + "'");
}

std::vector<std::pair<double, double>> parse_pair_csv(const std::string& text,
                                                      const std::string& col_a,
                                                      const std::string& col_b) {
  std::vector<std::pair<double, double>> rows;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const size_t comma = t.find(',');
    if (comma == std::string::npos) {
      fail(ErrorCode::ParseError,
           "line " + std::to_string(line_no) + ": expected two columns");
    }
    const std::string a = trim(t.substr(0, comma));
    const std::string b = trim(t.substr(comma + 1));
    if (b.find(',') != std::string::npos) {
      fail(ErrorCode::ParseError,
           "line " + std::to_string(line_no) + ": expected two columns");
    }
    if (!header_seen) {
      if (a != col_a || b != col_b) {
        fail(ErrorCode::ParseError,
             "line " + std::to_string(line_no) + ": expected header '" +
                 col_a + "," + col_b + "'");
      }
      header_seen = true;
      continue;
    }
    double va = 0.0;
    double vb = 0.0;
    if (!parse_double_token(a, &va) || !parse_double_token(b, &vb)) {
      fail(ErrorCode::ParseError,
           "line " + std::to_string(line_no) + ": malformed number");
    }
    rows.emplace_back(va, vb);
  }
  if (!header_seen) {
    fail(ErrorCode::ParseError, "empty input: missing header '" + col_a + "," +
                                    col_b + "'");
  }
  return rows;
}

std::vector<std::pair<double, double>> load_pair_csv(const std::string& path,
                                                     const std::string& col_a,
                                                     const std::string& col_b) {
  return parse_pair_csv(read_text_file(path), col_a, col_b);
}

}  // namespace nvforge
