#include "hkm/csv.hpp"

#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hkm/errors.hpp"

namespace hkm {

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void atomic_write_text(const std::filesystem::path& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path dir = path.parent_path().empty() ? fs::path(".") : path.parent_path();
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path tmp = dir / (path.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot open " + tmp.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw input_error("short write to " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) throw input_error("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                            ec.message());
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trimmed(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double* out) {
  const std::string t = trimmed(s);
  if (t.empty()) return false;
  const char* begin = t.data();
  const char* end = begin + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, *out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

Dataset load_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open dataset file " + path.string());

  Dataset d;
  std::string line;
  int lineno = 0;
  bool saw_header = false;
  bool has_label = false;
  size_t width = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (trimmed(line).empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);

    if (lineno == 1) {
      double probe;
      if (!parse_double(fields[0], &probe)) {
        saw_header = true;
        width = fields.size();
        has_label = trimmed(fields.back()) == "label";
        continue;
      }
    }

    if (width == 0) width = fields.size();
    if (fields.size() != width) {
      std::ostringstream os;
      os << path.string() << ":" << lineno << ": expected " << width << " fields, got "
         << fields.size();
      throw input_error(os.str());
    }

    const size_t feat = has_label ? width - 1 : width;
    if (feat == 0) {
      std::ostringstream os;
      os << path.string() << ":" << lineno << ": no feature columns";
      throw input_error(os.str());
    }
    Point x(static_cast<Eigen::Index>(feat));
    for (size_t j = 0; j < feat; ++j) {
      double v;
      if (!parse_double(fields[j], &v)) {
        std::ostringstream os;
        os << path.string() << ":" << lineno << ": field " << (j + 1) << " is not a number: '"
           << trimmed(fields[j]) << "'";
        throw input_error(os.str());
      }
      x[static_cast<Eigen::Index>(j)] = v;
    }
    d.points.push_back(std::move(x));

    if (has_label) {
      double v;
      if (!parse_double(fields.back(), &v) || v != std::floor(v)) {
        std::ostringstream os;
        os << path.string() << ":" << lineno << ": label is not an integer: '"
           << trimmed(fields.back()) << "'";
        throw input_error(os.str());
      }
      if (!d.labels) d.labels.emplace();
      d.labels->push_back(static_cast<int>(v));
    }
  }
  if (d.points.empty()) throw input_error(path.string() + ": no data rows");
  (void)saw_header;
  return d;
}

void write_dataset_csv(const std::filesystem::path& path, const Dataset& d) {
  if (d.points.empty()) throw input_error("write_dataset_csv: empty dataset");
  std::ostringstream os;
  const Eigen::Index dim = d.points[0].size();
  for (Eigen::Index j = 0; j < dim; ++j) os << (j ? "," : "") << "x" << j;
  if (d.labels) os << ",label";
  os << "\n";
  for (size_t i = 0; i < d.points.size(); ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) os << (j ? "," : "") << fmt_g17(d.points[i][j]);
    if (d.labels) os << "," << (*d.labels)[i];
    os << "\n";
  }
  atomic_write_text(path, os.str());
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << fmt_g17(m(i, j));
    os << "\n";
  }
  atomic_write_text(path, os.str());
}

}  // namespace hkm
