#include "ppwave/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "ppwave/errors.hpp"

namespace ppwave::io {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

void write_header(std::ostream& os, const Header& header) {
  for (const auto& [k, v] : header) os << "# " << k << "=" << v << "\n";
}

void write_profile_csv(std::ostream& os, const Header& header, const Profile& p) {
  write_header(os, header);
  os << "x,u,v,pole\n";
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    os << format_double(p.x[i]) << ",";
    if (p.pole_adjacent[i]) {
      os << ",,1\n";
    } else {
      os << format_double(p.u[i]) << "," << format_double(p.v[i]) << ",0\n";
    }
  }
}

void write_field_csv(std::ostream& os, const Header& header, const GridField& f) {
  write_header(os, header);
  os << "# snapshot.t=" << format_double(f.t) << "\n";
  os << "x,u,v\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    os << format_double(f.x(i)) << "," << format_double(f.u[i]) << "," << format_double(f.v[i])
       << "\n";
  }
}

namespace {

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  const auto idx = static_cast<std::size_t>(q * static_cast<double>(values.size() - 1));
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(idx), values.end());
  return values[idx];
}

}  // namespace

void write_profile_svg(std::ostream& os, const Profile& p, const SvgStyle& style) {
  std::vector<double> finite;
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    if (p.pole_adjacent[i]) continue;
    finite.push_back(p.u[i]);
    finite.push_back(p.v[i]);
  }
  double lo = style.y_min, hi = style.y_max;
  if (std::isnan(lo)) lo = quantile(finite, 0.02);
  if (std::isnan(hi)) hi = quantile(finite, 0.98);
  if (!(hi > lo)) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = 0.08 * (hi - lo);
  lo -= pad;
  hi += pad;

  const double margin = 60.0;
  const double w = style.width, h = style.height;
  const double x0 = p.x.front(), x1 = p.x.back();
  auto px = [&](double x) { return margin + (x - x0) / (x1 - x0) * (w - 2.0 * margin); };
  auto py = [&](double y) {
    const double c = std::clamp(y, lo, hi);
    return h - margin - (c - lo) / (hi - lo) * (h - 2.0 * margin);
  };

  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width << "\" height=\""
     << style.height << "\" viewBox=\"0 0 " << style.width << " " << style.height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!style.title.empty()) {
    os << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       << "font-size=\"15\">" << style.title << "</text>\n";
  }
  os << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << w - 2 * margin
     << "\" height=\"" << h - 2 * margin << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4.0, yv = lo + (hi - lo) * k / 4.0;
    os << "<text x=\"" << px(xv) << "\" y=\"" << h - margin + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
       << std::setprecision(3) << xv << std::setprecision(2) << "</text>\n";
    os << "<text x=\"" << margin - 6 << "\" y=\"" << py(yv) + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
       << std::setprecision(3) << yv << std::setprecision(2) << "</text>\n";
  }
  os << "<text x=\"" << w / 2 << "\" y=\"" << h - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">x</text>\n";

  auto polylines = [&](const std::vector<double>& ys, const char* dash) {
    std::string pts;
    auto flush = [&] {
      if (!pts.empty()) {
        os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"" << dash
           << " points=\"" << pts << "\"/>\n";
      }
      pts.clear();
    };
    for (std::size_t i = 0; i < p.x.size(); ++i) {
      if (p.pole_adjacent[i]) {
        flush();
        continue;
      }
      std::ostringstream pt;
      pt << std::fixed << std::setprecision(2) << px(p.x[i]) << "," << py(ys[i]) << " ";
      pts += pt.str();
    }
    flush();
  };
  polylines(p.u, "");
  polylines(p.v, " stroke-dasharray=\"6,4\"");

  os << "<line x1=\"" << w - margin - 150 << "\" y1=\"" << margin + 18 << "\" x2=\"" << w - margin - 110
     << "\" y2=\"" << margin + 18 << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  os << "<text x=\"" << w - margin - 104 << "\" y=\"" << margin + 22
     << "\" font-family=\"sans-serif\" font-size=\"12\">prey u</text>\n";
  os << "<line x1=\"" << w - margin - 150 << "\" y1=\"" << margin + 38 << "\" x2=\"" << w - margin - 110
     << "\" y2=\"" << margin + 38
     << "\" stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
  os << "<text x=\"" << w - margin - 104 << "\" y=\"" << margin + 42
     << "\" font-family=\"sans-serif\" font-size=\"12\">predator v</text>\n";
  os << "</svg>\n";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, std::string> parse_key_value(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InvalidInput("config line " + std::to_string(lineno) + ": expected key=value");
    }
    out[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_key_value(ss.str());
}

}  // namespace ppwave::io
