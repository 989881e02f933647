#pragma once

#include <cmath>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ppwave/figures.hpp"
#include "ppwave/pde_sim.hpp"

namespace ppwave::io {

inline constexpr const char* kVersion = "0.1.0";

/// Ordered `# key=value` lines written at the top of every output file.
using Header = std::vector<std::pair<std::string, std::string>>;

/// Shortest round-trippable text (17 significant digits).
std::string format_double(double x);

void write_header(std::ostream& os, const Header& header);

/// Columns x,u,v,pole. Pole-adjacent rows have empty u and v cells and pole=1.
void write_profile_csv(std::ostream& os, const Header& header, const Profile& p);

/// Columns x,u,v for a simulation snapshot; the header gains a `t` entry.
void write_field_csv(std::ostream& os, const Header& header, const GridField& f);

struct SvgStyle {
  int width{800};
  int height{500};
  std::string title;
  /// Values outside [y_min, y_max] are clipped; NaN means pick from the data quantiles.
  double y_min{std::nan("")};
  double y_max{std::nan("")};
};

/// Static line chart: prey solid, predator dashed, lines broken at pole-adjacent samples.
void write_profile_svg(std::ostream& os, const Profile& p, const SvgStyle& style);

/// Flat `key=value` file. Blank lines and lines starting with '#' or ';' are skipped,
/// whitespace around keys and values is trimmed. Throws InvalidInput on a malformed line.
std::map<std::string, std::string> read_key_value_file(const std::string& path);
std::map<std::string, std::string> parse_key_value(const std::string& text);

}  // namespace ppwave::io
