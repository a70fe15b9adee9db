#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "quantlab/suite.hpp"

namespace quantlab::suite {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"};

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else if (c == '"') out += "&quot;";
    else out += c;
  }
  return out;
}

std::string fmt(double x, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << x;
  return os.str();
}

std::string file_safe(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out;
}

struct Series {
  std::string label;
  std::vector<double> x, y;
};

/// Line chart; log axes take log10 of the data before scaling.
std::string line_chart(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                       const std::vector<Series>& series, bool logx, bool logy) {
  const double w = 640, h = 420, l = 70, r = 160, t = 40, b = 50;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  auto tx = [&](double v) { return logx ? std::log10(v) : v; };
  auto ty = [&](double v) { return logy ? std::log10(v) : v; };
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double a = tx(s.x[i]), c = ty(s.y[i]);
      if (!std::isfinite(a) || !std::isfinite(c)) continue;
      x0 = std::min(x0, a), x1 = std::max(x1, a), y0 = std::min(y0, c), y1 = std::max(y1, c);
    }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad, y1 += pad;
  auto px = [&](double a) { return l + (a - x0) / (x1 - x0) * (w - l - r); };
  auto py = [&](double c) { return h - b - (c - y0) / (y1 - y0) * (h - t - b); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << esc(title) << "</text>\n";
  os << "<rect x=\"" << l << "\" y=\"" << t << "\" width=\"" << w - l - r << "\" height=\"" << h - t - b
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double a = x0 + (x1 - x0) * k / 4.0, c = y0 + (y1 - y0) * k / 4.0;
    os << "<text x=\"" << px(a) << "\" y=\"" << h - b + 16 << "\" text-anchor=\"middle\">"
       << (logx ? "1e" + fmt(a, 3) : fmt(a)) << "</text>\n";
    os << "<text x=\"" << l - 6 << "\" y=\"" << py(c) + 4 << "\" text-anchor=\"end\">"
       << (logy ? "1e" + fmt(c, 3) : fmt(c)) << "</text>\n";
  }
  os << "<text x=\"" << (l + w - r) / 2 << "\" y=\"" << h - 12 << "\" text-anchor=\"middle\">" << esc(xlabel)
     << "</text>\n";
  os << "<text x=\"16\" y=\"" << (t + h - b) / 2 << "\" transform=\"rotate(-90 16 " << (t + h - b) / 2
     << ")\" text-anchor=\"middle\">" << esc(ylabel) << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* col = kPalette[s % 7];
    std::ostringstream pts;
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      const double a = tx(series[s].x[i]), c = ty(series[s].y[i]);
      if (!std::isfinite(a) || !std::isfinite(c)) continue;
      pts << fmt(px(a), 6) << "," << fmt(py(c), 6) << " ";
      if (series[s].x.size() <= 32)
        os << "<circle cx=\"" << fmt(px(a), 6) << "\" cy=\"" << fmt(py(c), 6) << "\" r=\"3\" fill=\"" << col << "\"/>\n";
    }
    os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
    os << "<text x=\"" << w - r + 10 << "\" y=\"" << t + 14 + 16 * s << "\" fill=\"" << col << "\">"
       << esc(series[s].label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

/// Heatmap of log10 |G - I|.
std::string heatmap(const std::string& title, const nlohmann::json& mat) {
  const auto& re = mat.at("re");
  const auto& im = mat.at("im");
  const std::size_t n = re.size();
  const double cell = std::max(6.0, std::min(40.0, 480.0 / std::max<std::size_t>(n, 1)));
  const double l = 20, t = 40, side = cell * static_cast<double>(n);
  const double w = l + side + 120, h = t + side + 20;
  const double lo = -16.0, hi = 0.0;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << l << "\" y=\"22\" font-size=\"14\">" << esc(title) << ": log10 |G - I|</text>\n";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double d = std::hypot(re[i][j].get<double>() - (i == j ? 1.0 : 0.0), im[i][j].get<double>());
      const double v = std::clamp(d > 0.0 ? std::log10(d) : lo, lo, hi);
      const int shade = static_cast<int>(std::lround(255.0 * (v - lo) / (hi - lo)));
      os << "<rect x=\"" << l + cell * static_cast<double>(j) << "\" y=\"" << t + cell * static_cast<double>(i)
         << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\"rgb(" << shade << ",0," << 255 - shade
         << ")\"><title>" << fmt(d, 3) << "</title></rect>\n";
    }
  for (int k = 0; k <= 4; ++k) {
    const double v = lo + (hi - lo) * k / 4.0;
    const int shade = static_cast<int>(std::lround(255.0 * k / 4.0));
    const double y = t + side - side * k / 4.0;
    os << "<rect x=\"" << l + side + 20 << "\" y=\"" << y - 10 << "\" width=\"14\" height=\"10\" fill=\"rgb(" << shade
       << ",0," << 255 - shade << ")\"/><text x=\"" << l + side + 40 << "\" y=\"" << y << "\">1e" << fmt(v, 3)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string summary_chart(const ReportList& reports) {
  const double row = 16, l = 260, bar = 300, t = 40;
  const double w = l + bar + 80, h = t + row * static_cast<double>(reports.size()) + 40;
  const double lo = -16.0, hi = 2.0;
  auto px = [&](double v) { return l + (std::clamp(v, lo, hi) - lo) / (hi - lo) * bar; };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"10\" y=\"22\" font-size=\"14\">log10(max_error / tolerance)</text>\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    double v = lo;
    if (!std::isfinite(r.max_error)) v = hi;
    else if (r.tolerance > 0.0 && r.max_error > 0.0) v = std::log10(r.max_error / r.tolerance);
    else if (r.max_error > 0.0) v = hi;
    const double y = t + row * static_cast<double>(i);
    os << "<text x=\"" << l - 6 << "\" y=\"" << y + 11 << "\" text-anchor=\"end\">" << esc(r.check_id) << "</text>\n";
    os << "<rect x=\"" << l << "\" y=\"" << y + 2 << "\" width=\"" << px(v) - l << "\" height=\"" << row - 4
       << "\" fill=\"" << (r.pass ? "#2ca02c" : "#d62728") << "\"/>\n";
  }
  os << "<line x1=\"" << px(0.0) << "\" y1=\"" << t << "\" x2=\"" << px(0.0) << "\" y2=\"" << h - 40
     << "\" stroke=\"black\" stroke-dasharray=\"4 2\"/>\n";
  for (int k = -16; k <= 0; k += 4)
    os << "<text x=\"" << px(k) << "\" y=\"" << h - 22 << "\" text-anchor=\"middle\">" << k << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot write " + p.string());
  out << text;
  if (!out) throw IoError("write failed for " + p.string());
}

std::vector<double> doubles(const nlohmann::json& a) {
  std::vector<double> v;
  for (const auto& x : a) v.push_back(x.is_number() ? x.get<double>() : NAN);
  return v;
}

}  // namespace

std::vector<std::filesystem::path> emit_svg(const ReportList& reports, const std::filesystem::path& dir) {
  if (reports.empty()) throw UsageError("no reports to emit");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!std::filesystem::is_directory(dir)) throw IoError("cannot create directory " + dir.string());
  std::vector<std::filesystem::path> files;
  auto emit = [&](const std::string& name, const std::string& text) {
    const auto p = dir / name;
    write_file(p, text);
    files.push_back(p);
  };
  emit("summary.svg", summary_chart(reports));

  bool density_done = false;
  std::vector<Series> spectra;
  std::string spectra_model;
  for (const auto& r : reports) {
    const auto& md = r.metadata;
    if (!density_done && md.contains("m") && md.contains("E")) {
      std::vector<Series> s{{"point removed", doubles(md["m"]), doubles(md["E"])}};
      if (md.contains("E_refined")) s.push_back({"point, refined grid", doubles(md["m"]), doubles(md["E_refined"])});
      if (md.contains("E_line")) s.push_back({"line removed", doubles(md["m"]), doubles(md["E_line"])});
      emit("density_E.svg", line_chart("E(m) = graph norm of (1 - psi_m) f", "m", "E(m)", s, true, true));
      density_done = true;
    }
    if (r.check_id.rfind("psh.verdict.", 0) == 0 && md.contains("series")) {
      spectra.push_back({md.value("potential", r.check_id), doubles(md["series"]["x"]),
                         doubles(md["series"]["min_eigenvalue"])});
      spectra_model = md.value("model", "");
    }
    for (const char* key : {"character_gram", "gram_a", "gram_b"})
      if (md.contains(key) && md[key].is_object() && md[key].contains("re"))
        emit(file_safe(r.check_id + "_" + key) + ".svg", heatmap(r.check_id + " " + key, md[key]));
  }
  if (!spectra.empty())
    emit("psh_spectra.svg", line_chart("smallest eigenvalue of Theta - i ad mu (" + spectra_model + ")",
                                       "grid coordinate", "min eigenvalue", spectra, false, false));
  return files;
}

}  // namespace quantlab::suite
