#include "hmcf/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hmcf/errors.hpp"

namespace hmcf {

void CsvTable::add_row(std::vector<double> row) {
  require(row.size() == columns.size(), ErrorCode::InvalidArgument,
          "row has " + std::to_string(row.size()) + " values for " + std::to_string(columns.size()) + " columns");
  rows.push_back(std::move(row));
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw Error(ErrorCode::InvalidArgument, "no column named '" + name + "'");
}

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double parse_double(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) throw Error(ErrorCode::Io, "empty numeric field");
  const char* first = s.data() + b;
  const char* last = s.data() + e + 1;
  if (*first == '+') ++first;
  double v = 0.0;
  const auto r = std::from_chars(first, last, v);
  if (r.ec != std::errc() || r.ptr != last) throw Error(ErrorCode::Io, "malformed number '" + s + "'");
  return v;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string to_csv(const CsvTable& t) {
  std::string s;
  for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
  s += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + format_double(row[i]);
    s += '\n';
  }
  return s;
}

CsvTable parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CsvTable t;
  if (!std::getline(in, line)) throw Error(ErrorCode::Io, "CSV has no header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  t.columns = split(line, ',');
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != t.columns.size())
      throw Error(ErrorCode::Io, "CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                                     std::to_string(t.columns.size()));
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_double(c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

void write_csv(const std::filesystem::path& path, const CsvTable& t) { write_text(path, to_csv(t)); }

CsvTable read_csv(const std::filesystem::path& path) { return parse_csv(read_all(path)); }

void write_field(const std::filesystem::path& path, const ScalarField& f) {
  const auto& g = f.grid();
  std::string s = "dims " + std::to_string(g.dims[0]) + " " + std::to_string(g.dims[1]) + " " +
                  std::to_string(g.dims[2]) + "\norigin";
  for (double o : {g.origin.x1, g.origin.x2, g.origin.x3}) s += " " + format_double(o);
  s += "\nspacing";
  for (double h : g.spacing) s += " " + format_double(h);
  s += '\n';
  for (double v : f.values()) s += format_double(v) + '\n';
  write_text(path, s);
}

ScalarField read_field(const std::filesystem::path& path) {
  std::istringstream in(read_all(path));
  std::string tag;
  UniformGrid3 g;
  in >> tag >> g.dims[0] >> g.dims[1] >> g.dims[2];
  if (!in || tag != "dims") throw Error(ErrorCode::Io, path.string() + ": missing dims line");
  std::string a, b, c;
  in >> tag >> a >> b >> c;
  if (!in || tag != "origin") throw Error(ErrorCode::Io, path.string() + ": missing origin line");
  g.origin = {parse_double(a), parse_double(b), parse_double(c)};
  in >> tag >> a >> b >> c;
  if (!in || tag != "spacing") throw Error(ErrorCode::Io, path.string() + ": missing spacing line");
  g.spacing = {parse_double(a), parse_double(b), parse_double(c)};
  g.validate();
  ScalarField f(g, {AxisBoundary::replicate(), AxisBoundary::replicate(), AxisBoundary::replicate()});
  auto v = f.values();
  for (auto& x : v) {
    if (!(in >> a)) throw Error(ErrorCode::Io, path.string() + ": too few values");
    x = parse_double(a);
  }
  return f;
}

}  // namespace hmcf
