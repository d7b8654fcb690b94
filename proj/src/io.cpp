#include "twobody/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "twobody/errors.hpp"

namespace twobody {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v) { return std::isfinite(v) ? std::strtod(format_double(v).c_str(), nullptr) : v; }

ordered_json json_number(double v) {
  if (!std::isfinite(v)) return format_double(v);
  return round12(v);
}

std::string CsvTable::to_string() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

CsvTable CsvTable::parse(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (first) {
      t.header = cells;
      first = false;
    } else {
      if (cells.size() != t.header.size()) throw IoError("CSV row has " + std::to_string(cells.size()) + " cells, header has " + std::to_string(t.header.size()));
      t.rows.push_back(cells);
    }
  }
  if (first) throw IoError("empty CSV");
  return t;
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  throw IoError("CSV has no column '" + name + "'");
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing: " + std::strerror(errno));
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw IoError("write failed for " + path.string() + ": " + std::strerror(errno));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for reading: " + std::strerror(errno));
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

CsvTable spectrum_table(const std::vector<SpectralLevel>& levels) {
  CsvTable t;
  t.header = {"index", "n1", "n2", "k1_over_pi", "k2_over_pi", "energy", "parity", "branch"};
  for (const auto& l : levels) {
    t.rows.push_back({std::to_string(l.index), std::to_string(l.quantum_numbers[0]), std::to_string(l.quantum_numbers[1]),
                      format_double(l.root.k1 / pi), format_double(l.root.k2 / pi), format_double(l.energy),
                      std::to_string(l.parity), to_string(l.root.branch)});
  }
  return t;
}

std::vector<SpectrumRow> parse_spectrum(const CsvTable& t) {
  const int ci = t.column("index"), c1 = t.column("n1"), c2 = t.column("n2"), ck1 = t.column("k1_over_pi"),
            ck2 = t.column("k2_over_pi"), ce = t.column("energy"), cp = t.column("parity"), cb = t.column("branch");
  std::vector<SpectrumRow> out;
  for (const auto& r : t.rows) {
    try {
      out.push_back({std::stoi(r[ci]), std::stoi(r[c1]), std::stoi(r[c2]), std::stod(r[ck1]), std::stod(r[ck2]),
                     std::stod(r[ce]), std::stoi(r[cp]), r[cb]});
    } catch (const std::logic_error&) {
      throw IoError("malformed spectrum row");
    }
  }
  return out;
}

namespace {
template <class T>
void put(std::string& s, T v) {
  char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  s.append(b, sizeof(T));
}
template <class T>
T get(const std::string& s, std::size_t& pos) {
  if (pos + sizeof(T) > s.size()) throw IoError("truncated density file");
  T v;
  std::memcpy(&v, s.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}
}  // namespace

std::string density_binary(const DensityGrid& d) {
  std::string s;
  put<std::int32_t>(s, d.resolution);
  put<double>(s, d.gamma);
  put<std::int32_t>(s, d.level);
  for (double v : d.values) put<double>(s, v);
  return s;
}

DensityGrid parse_density_binary(const std::string& bytes) {
  std::size_t pos = 0;
  DensityGrid d;
  d.resolution = get<std::int32_t>(bytes, pos);
  d.gamma = get<double>(bytes, pos);
  d.level = get<std::int32_t>(bytes, pos);
  if (d.resolution < 1) throw IoError("bad density resolution");
  const auto n = static_cast<std::size_t>(d.resolution) * d.resolution;
  d.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) d.values.push_back(get<double>(bytes, pos));
  if (pos != bytes.size()) throw IoError("trailing bytes in density file");
  return d;
}

CsvTable density_table(const DensityGrid& d) {
  CsvTable t;
  t.header = {"x1", "x2", "rho"};
  for (int i = 0; i < d.resolution; ++i)
    for (int j = 0; j < d.resolution; ++j)
      t.rows.push_back({format_double(DensityGrid::coordinate(i, d.resolution)),
                        format_double(DensityGrid::coordinate(j, d.resolution)), format_double(d.at(i, j))});
  return t;
}

}  // namespace twobody
