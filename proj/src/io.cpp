#include "cce/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace cce {

namespace {

std::string trimmed(std::string line) {
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = line.find_last_not_of(" \t\r");
  return line.substr(first, last - first + 1);
}

bool parse_double(const std::string& text, double& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path,
                             std::size_t line_no, const std::string& what,
                             const std::string& line) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                           ": " + what + ": '" + line + "'");
}

template <typename Append>
void read_lines(const std::filesystem::path& path, Append&& append) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) {
    throw std::runtime_error(path.string() + ": cannot open");
  }
  std::string line;
  std::size_t line_no = 0;
  std::size_t values = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trimmed(line);
    // a single leading non-numeric line is treated as a column header
    const bool header_allowed = line_no == 1;
    double probe = 0.0;
    if (header_allowed && !body.empty() && !parse_double(body, probe)) {
      continue;
    }
    append(path, line_no, body);
    ++values;
  }
  if (values == 0) {
    throw std::runtime_error(path.string() + ": no values");
  }
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

ScoreSeries read_score_file(const std::filesystem::path& path) {
  ScoreSeries scores;
  read_lines(path, [&scores](const std::filesystem::path& p,
                             std::size_t line_no, const std::string& body) {
    double v = 0.0;
    if (body.empty() || !parse_double(body, v)) {
      parse_fail(p, line_no, "not a number", body);
    }
    scores.push_back(v);
  });
  return scores;
}

LabelSeries read_label_file(const std::filesystem::path& path) {
  LabelSeries labels;
  read_lines(path, [&labels](const std::filesystem::path& p,
                             std::size_t line_no, const std::string& body) {
    if (body == "0") labels.push_back(0);
    else if (body == "1") labels.push_back(1);
    else parse_fail(p, line_no, "label must be 0 or 1", body);
  });
  return labels;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out.good()) {
      throw std::runtime_error(tmp.string() + ": cannot open for writing");
    }
    out << content;
    out.flush();
    if (!out.good()) {
      throw std::runtime_error(tmp.string() + ": write failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error(path.string() + ": rename failed: " +
                             ec.message());
  }
}

}  // namespace cce
