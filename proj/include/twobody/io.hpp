#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "twobody/bethe.hpp"
#include "twobody/wavefunction.hpp"

namespace twobody {

using ordered_json = nlohmann::ordered_json;

/// %.12g; non-finite values print as inf, -inf, nan.
std::string format_double(double v);
/// The double nearest to format_double(v), so JSON numbers carry 12 digits.
double round12(double v);
/// JSON value for a double: 12-digit number, or "inf"/"-inf"/"nan".
ordered_json json_number(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string to_string() const;
  static CsvTable parse(const std::string& text);
  int column(const std::string& name) const;
};

void write_text(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);

/// Columns index,n1,n2,k1_over_pi,k2_over_pi,energy,parity,branch.
CsvTable spectrum_table(const std::vector<SpectralLevel>& levels);

struct SpectrumRow {
  int index, n1, n2;
  double k1_over_pi, k2_over_pi, energy;
  int parity;
  std::string branch;
};
std::vector<SpectrumRow> parse_spectrum(const CsvTable& t);

/// int32 res, float64 gamma, int32 level, then res*res float64 row-major.
std::string density_binary(const DensityGrid& d);
DensityGrid parse_density_binary(const std::string& bytes);
CsvTable density_table(const DensityGrid& d);

}  // namespace twobody
