#include "sadovskii/field_io.hpp"

#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "sadovskii/error.hpp"

namespace sadovskii {
namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot open '" + path + "' for writing");
  f.precision(std::numeric_limits<double>::max_digits10);
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  return f;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad number for " + what + ": '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

void write_field_csv(const GridField& field, std::ostream& out) {
  const GridSpec& g = field.spec();
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  out << "# grid origin_x1=" << g.origin_x1 << " width=" << g.width() << " height=" << g.height()
      << " cell=" << g.cell << " nx=" << g.nx << " ny=" << g.ny << '\n';
  out << "i,j,value\n";
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double v = field.at(i, j);
      if (v != 0.0) out << i << ',' << j << ',' << v << '\n';
    }
  }
  out.precision(old);
}

void write_field_csv(const GridField& field, const std::string& path) {
  std::ofstream f = open_out(path);
  write_field_csv(field, f);
}

GridField read_field_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# grid", 0) != 0) {
    throw ParseError("field CSV: missing '# grid' header");
  }
  std::map<std::string, std::string> kv;
  std::stringstream ss(line.substr(6));
  std::string tok;
  while (ss >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParseError("field CSV: bad header token '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  for (const char* key : {"origin_x1", "cell", "nx", "ny"}) {
    if (!kv.count(key)) throw ParseError(std::string("field CSV: header lacks ") + key);
  }
  GridSpec g;
  g.origin_x1 = to_double(kv["origin_x1"], "origin_x1");
  g.cell = to_double(kv["cell"], "cell");
  g.nx = static_cast<int>(to_double(kv["nx"], "nx"));
  g.ny = static_cast<int>(to_double(kv["ny"], "ny"));
  g.validate();
  std::vector<double> values(g.size(), 0.0);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line == "i,j,value") continue;
    const auto parts = split(line, ',');
    if (parts.size() != 3) throw ParseError("field CSV: bad row '" + line + "'");
    const int i = static_cast<int>(to_double(parts[0], "i"));
    const int j = static_cast<int>(to_double(parts[1], "j"));
    if (i < 0 || i >= g.nx || j < 0 || j >= g.ny) {
      throw ParseError("field CSV: cell index out of range in '" + line + "'");
    }
    values[g.index(i, j)] = to_double(parts[2], "value");
  }
  try {
    return GridField(g, std::move(values));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("field CSV: ") + e.what());
  }
}

GridField read_field_csv(const std::string& path) {
  std::ifstream f = open_in(path);
  return read_field_csv(f);
}

void write_contour_csv(const ContourPolygon& contour, std::ostream& out) {
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  if (contour.touches_axis) out << "# touches_axis=1\n";
  out << "x1,x2\n";
  for (const Point& p : contour.vertices) out << p.x1 << ',' << p.x2 << '\n';
  out.precision(old);
}

void write_contour_csv(const ContourPolygon& contour, const std::string& path) {
  std::ofstream f = open_out(path);
  write_contour_csv(contour, f);
}

ContourPolygon read_contour_csv(std::istream& in) {
  ContourPolygon c;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "x1,x2") continue;
    if (line[0] == '#') {
      if (line.find("touches_axis=1") != std::string::npos) c.touches_axis = true;
      continue;
    }
    const auto parts = split(line, ',');
    if (parts.size() != 2) throw ParseError("contour CSV: bad row '" + line + "'");
    c.vertices.push_back({to_double(parts[0], "x1"), to_double(parts[1], "x2")});
  }
  return c;
}

ContourPolygon read_contour_csv(const std::string& path) {
  std::ifstream f = open_in(path);
  return read_contour_csv(f);
}

}  // namespace sadovskii
