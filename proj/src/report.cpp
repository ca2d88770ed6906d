#include "sparoof/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <set>

namespace sparoof {

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      return out;
    }
    out.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
T parse_number(const std::string& s, std::size_t line_no) {
  T v{};
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw ReportError("line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return v;
}

void check_id(const std::string& id) {
  if (id.empty() || id.find_first_of(",\n\r") != std::string::npos) {
    throw ReportError("matrix id '" + id + "' is empty or contains CSV separators");
  }
}

/// Reads the schema and header lines, then returns the data lines.
std::vector<std::pair<std::size_t, std::string>> read_table(std::istream& in, std::string_view schema,
                                                            std::string_view header) {
  std::string line;
  if (!std::getline(in, line) || line != schema) {
    throw ReportError("expected schema line '" + std::string(schema) + "'");
  }
  if (!std::getline(in, line) || line != header) {
    throw ReportError("expected header row '" + std::string(header) + "'");
  }
  std::vector<std::pair<std::size_t, std::string>> rows;
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    // Appended files repeat the schema and header; skip them.
    if (line == schema || line == header) continue;
    rows.emplace_back(line_no, line);
  }
  return rows;
}

std::string printf_string(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  const int len = std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return std::string(buf, static_cast<std::size_t>(std::max(0, std::min(len, 511))));
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* pattern_colour(Pattern p) {
  switch (p) {
    case Pattern::random: return "#7f7f7f";
    case Pattern::diagonal: return "#2ca02c";
    case Pattern::blocked: return "#9467bd";
    case Pattern::scale_free: return "#d62728";
  }
  return "#000000";
}

const char* kernel_colour(KernelId k) {
  switch (k) {
    case KernelId::csr: return "#4285F4";
    case KernelId::csb: return "#FBBC04";
    case KernelId::reference: return "#555555";
  }
  return "#000000";
}

// Plot geometry in SVG user units.
constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 690.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 410.0;

struct LogAxis {
  int lo = 0;
  int hi = 1;

  static LogAxis covering(double min_v, double max_v) {
    LogAxis a;
    a.lo = static_cast<int>(std::floor(std::log10(min_v) + 1e-12));
    a.hi = static_cast<int>(std::ceil(std::log10(max_v) - 1e-12));
    if (a.hi <= a.lo) a.hi = a.lo + 1;
    return a;
  }
  double fraction(double v) const { return (std::log10(v) - lo) / static_cast<double>(hi - lo); }
  double min() const { return std::pow(10.0, lo); }
  double max() const { return std::pow(10.0, hi); }
};

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

void write_bench_csv(std::ostream& out, std::span<const BenchResult> rows, bool with_header) {
  if (with_header) out << kBenchSchema << '\n' << kBenchHeader << '\n';
  for (const auto& r : rows) {
    check_id(r.matrix_id);
    out << r.matrix_id << ',' << to_string(r.kernel) << ',' << r.n << ',' << r.nnz << ',' << r.d << ','
        << r.threads << ',' << format_double(r.median_seconds) << ',' << format_double(r.gflops) << ','
        << to_string(r.validation) << ',';
    for (std::size_t i = 0; i < r.run_seconds.size(); ++i) {
      if (i > 0) out << ';';
      out << format_double(r.run_seconds[i]);
    }
    out << '\n';
  }
}

std::vector<BenchResult> read_bench_csv(std::istream& in) {
  std::vector<BenchResult> out;
  for (const auto& [line_no, line] : read_table(in, kBenchSchema, kBenchHeader)) {
    const auto f = split(line, ',');
    if (f.size() != 10) throw ReportError("line " + std::to_string(line_no) + ": expected 10 fields");
    BenchResult r;
    r.matrix_id = f[0];
    try {
      r.kernel = parse_kernel(f[1]);
    } catch (const std::invalid_argument& e) {
      throw ReportError("line " + std::to_string(line_no) + ": " + e.what());
    }
    r.n = parse_number<std::uint64_t>(f[2], line_no);
    r.nnz = parse_number<std::uint64_t>(f[3], line_no);
    r.d = parse_number<std::size_t>(f[4], line_no);
    r.threads = parse_number<int>(f[5], line_no);
    r.median_seconds = parse_number<double>(f[6], line_no);
    r.gflops = parse_number<double>(f[7], line_no);
    if (f[8] == "reference") {
      r.validation = Validation::reference;
    } else if (f[8] == "identity") {
      r.validation = Validation::identity;
    } else if (f[8] == "skipped") {
      r.validation = Validation::skipped;
    } else {
      throw ReportError("line " + std::to_string(line_no) + ": unknown validation '" + f[8] + "'");
    }
    if (!f[9].empty()) {
      for (const auto& s : split(f[9], ';')) r.run_seconds.push_back(parse_number<double>(s, line_no));
    }
    if (!(r.median_seconds > 0.0)) {
      throw ReportError("line " + std::to_string(line_no) + ": median_seconds must be positive");
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_model_csv(std::ostream& out, std::span<const ModelRow> rows) {
  out << kModelSchema << '\n' << kModelHeader << '\n';
  for (const auto& r : rows) {
    check_id(r.matrix);
    const auto& e = r.estimate;
    out << r.matrix << ',' << to_string(e.pattern) << ',' << r.n << ',' << r.nnz << ',' << e.d << ','
        << format_double(e.flops) << ',' << format_double(e.bytes) << ',' << format_double(e.ai) << ','
        << (e.bound_gflops ? format_double(*e.bound_gflops) : std::string()) << '\n';
  }
}

std::vector<ModelRow> read_model_csv(std::istream& in) {
  std::vector<ModelRow> out;
  for (const auto& [line_no, line] : read_table(in, kModelSchema, kModelHeader)) {
    const auto f = split(line, ',');
    if (f.size() != 9) throw ReportError("line " + std::to_string(line_no) + ": expected 9 fields");
    ModelRow r;
    r.matrix = f[0];
    try {
      r.estimate.pattern = parse_pattern(f[1]);
    } catch (const std::invalid_argument& e) {
      throw ReportError("line " + std::to_string(line_no) + ": " + e.what());
    }
    r.n = parse_number<std::uint64_t>(f[2], line_no);
    r.nnz = parse_number<std::uint64_t>(f[3], line_no);
    r.estimate.d = parse_number<std::size_t>(f[4], line_no);
    r.estimate.flops = parse_number<double>(f[5], line_no);
    r.estimate.bytes = parse_number<double>(f[6], line_no);
    r.estimate.ai = parse_number<double>(f[7], line_no);
    if (!f[8].empty()) r.estimate.bound_gflops = parse_number<double>(f[8], line_no);
    out.push_back(std::move(r));
  }
  return out;
}

RooflineReport build_report(std::vector<BenchResult> points, std::vector<ModelRow> verticals,
                            const MachineProfile& profile, std::optional<Pattern> marker_pattern) {
  profile.validate();
  if (points.empty()) throw ReportError("no bench results to report");
  if (verticals.empty()) throw ReportError("no model rows to report");

  RooflineReport r;
  r.profile = profile;
  r.matrix = verticals.front().matrix;
  r.n = verticals.front().n;
  r.nnz = verticals.front().nnz;
  std::set<Pattern> patterns;
  std::set<std::pair<Pattern, std::size_t>> seen;
  for (auto& v : verticals) {
    if (v.matrix != r.matrix) {
      throw ReportError("model rows mix matrices '" + r.matrix + "' and '" + v.matrix + "'");
    }
    if (!seen.insert({v.estimate.pattern, v.estimate.d}).second) {
      throw ReportError("duplicate model row for pattern '" + std::string(to_string(v.estimate.pattern)) +
                        "' at d=" + std::to_string(v.estimate.d));
    }
    patterns.insert(v.estimate.pattern);
    v.estimate = with_bound(v.estimate, profile);
  }
  for (const auto& p : points) {
    if (p.matrix_id != r.matrix) {
      throw ReportError("bench matrix '" + p.matrix_id + "' does not match model matrix '" + r.matrix +
                        "'");
    }
  }
  if (marker_pattern) {
    if (!patterns.contains(*marker_pattern)) {
      throw ReportError("no model rows for pattern '" + std::string(to_string(*marker_pattern)) + "'");
    }
    r.marker_pattern = *marker_pattern;
  } else if (patterns.size() == 1) {
    r.marker_pattern = *patterns.begin();
  } else {
    throw ReportError("model rows cover several patterns; choose one for the markers");
  }
  r.verticals = std::move(verticals);
  r.points = std::move(points);
  for (const auto& p : r.points) (void)marker_ai(r, p.d);
  return r;
}

double marker_ai(const RooflineReport& r, std::size_t d) {
  for (const auto& v : r.verticals) {
    if (v.estimate.pattern == r.marker_pattern && v.estimate.d == d) return v.estimate.ai;
  }
  throw ReportError("no " + std::string(to_string(r.marker_pattern)) + " model vertical for d=" +
                    std::to_string(d));
}

void write_report_csv(std::ostream& out, const RooflineReport& r) {
  out << kReportSchema << '\n' << kReportHeader << '\n';
  for (const auto& v : r.verticals) {
    out << r.matrix << ',' << to_string(v.estimate.pattern) << ",model," << v.estimate.d << ",0,"
        << format_double(v.estimate.ai) << ",,," << format_double(*v.estimate.bound_gflops) << '\n';
  }
  for (const auto& p : r.points) {
    const double ai = marker_ai(r, p.d);
    out << r.matrix << ',' << to_string(r.marker_pattern) << ',' << to_string(p.kernel) << ',' << p.d
        << ',' << p.threads << ',' << format_double(ai) << ',' << format_double(p.median_seconds) << ','
        << format_double(p.gflops) << ',' << format_double(roofline_bound(r.profile, ai)) << '\n';
  }
}

void write_report_svg(std::ostream& out, const RooflineReport& r) {
  const MachineProfile& prof = r.profile;
  double ai_min = r.verticals.front().estimate.ai;
  double ai_max = ai_min;
  for (const auto& v : r.verticals) {
    ai_min = std::min(ai_min, v.estimate.ai);
    ai_max = std::max(ai_max, v.estimate.ai);
  }
  const LogAxis xa = LogAxis::covering(ai_min, ai_max);
  const auto roof = [&](double x) { return roofline_bound(prof, x); };

  double y_min = roof(xa.min());
  double y_max = roof(xa.max());
  for (const auto& p : r.points) {
    const double g = std::min(p.gflops, prof.pi_gflops);
    if (g > 0.0) {
      y_min = std::min(y_min, g);
      y_max = std::max(y_max, g);
    }
  }
  const LogAxis ya = LogAxis::covering(y_min, y_max);
  const auto px = [&](double x) { return kLeft + xa.fraction(x) * (kRight - kLeft); };
  const auto py = [&](double y) { return kBottom - ya.fraction(y) * (kBottom - kTop); };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << printf_string(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, kHeight, kWidth, kHeight);
  out << printf_string("<rect x=\"0\" y=\"0\" width=\"%.0f\" height=\"%.0f\" fill=\"#ffffff\"/>\n", kWidth,
                       kHeight);
  out << "<text class=\"title\" x=\"" << printf_string("%.2f", (kLeft + kRight) / 2)
      << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(r.matrix) << " ("
      << to_string(r.marker_pattern) << "), beta = " << printf_string("%.6g", prof.beta_gbps)
      << " GB/s</text>\n";

  // Axes with one tick per decade.
  out << "<g class=\"axes\" stroke=\"#000000\" fill=\"none\">\n";
  out << printf_string("<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\"/>\n", kLeft, kTop,
                       kRight - kLeft, kBottom - kTop);
  for (int e = xa.lo; e <= xa.hi; ++e) {
    const double x = px(std::pow(10.0, e));
    out << printf_string("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>\n", x, kBottom, x,
                         kBottom + 5);
  }
  for (int e = ya.lo; e <= ya.hi; ++e) {
    const double y = py(std::pow(10.0, e));
    out << printf_string("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>\n", kLeft - 5, y, kLeft,
                         y);
  }
  out << "</g>\n<g class=\"tick-labels\" fill=\"#000000\">\n";
  for (int e = xa.lo; e <= xa.hi; ++e) {
    out << printf_string("<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">%g</text>\n",
                         px(std::pow(10.0, e)), kBottom + 20, std::pow(10.0, e));
  }
  for (int e = ya.lo; e <= ya.hi; ++e) {
    out << printf_string("<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">%g</text>\n", kLeft - 8,
                         py(std::pow(10.0, e)) + 4, std::pow(10.0, e));
  }
  out << "</g>\n";
  out << printf_string(
      "<text class=\"x-label\" x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">Arithmetic intensity "
      "(FLOP/byte)</text>\n",
      (kLeft + kRight) / 2, kHeight - 20);
  out << printf_string(
      "<text class=\"y-label\" x=\"20\" y=\"%.2f\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      "%.2f)\">Performance (GFLOP/s)</text>\n",
      (kTop + kBottom) / 2, (kTop + kBottom) / 2);

  // Bandwidth roof, bending at the ridge point when it is in range.
  std::string points = printf_string("%.2f,%.2f", px(xa.min()), py(roof(xa.min())));
  const double ridge = prof.ridge_point();
  if (ridge > xa.min() && ridge < xa.max()) {
    points += printf_string(" %.2f,%.2f", px(ridge), py(prof.pi_gflops));
  }
  points += printf_string(" %.2f,%.2f", px(xa.max()), py(roof(xa.max())));
  out << "<polyline class=\"roofline\" data-beta=\"" << printf_string("%.6g", prof.beta_gbps)
      << "\" data-pi=\"" << printf_string("%.6g", prof.pi_gflops) << "\" points=\"" << points
      << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>\n";

  for (const auto& v : r.verticals) {
    const auto& e = v.estimate;
    const double x = px(e.ai);
    out << "<line class=\"model-ai\" data-pattern=\"" << to_string(e.pattern) << "\" data-d=\"" << e.d
        << "\" data-ai=\"" << printf_string("%.6g", e.ai) << "\" data-bound=\""
        << printf_string("%.6g", *e.bound_gflops) << "\" "
        << printf_string("x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"", x, kBottom, x, kTop)
        << " stroke=\"" << pattern_colour(e.pattern) << "\" stroke-dasharray=\"4 3\"/>\n";
    out << printf_string("<text class=\"model-label\" x=\"%.2f\" y=\"%.2f\" font-size=\"10\" fill=\"%s\">",
                         x + 3, kTop + 12, pattern_colour(e.pattern))
        << "d=" << e.d << "</text>\n";
  }

  for (const auto& p : r.points) {
    const double g = std::min(p.gflops, prof.pi_gflops);
    const double x = px(marker_ai(r, p.d));
    const double y = py(g);
    const char* colour = kernel_colour(p.kernel);
    const std::string data = "class=\"marker kernel-" + std::string(to_string(p.kernel)) + "\" data-d=\"" +
                             std::to_string(p.d) + "\" data-threads=\"" + std::to_string(p.threads) +
                             "\" data-gflops=\"" + printf_string("%.6g", g) + "\"";
    switch (p.kernel) {
      case KernelId::csr:
        out << "<circle " << data << printf_string(" cx=\"%.2f\" cy=\"%.2f\" r=\"5\"", x, y);
        break;
      case KernelId::csb:
        out << "<rect " << data
            << printf_string(" x=\"%.2f\" y=\"%.2f\" width=\"10\" height=\"10\"", x - 5, y - 5);
        break;
      case KernelId::reference:
        out << "<polygon " << data
            << printf_string(" points=\"%.2f,%.2f %.2f,%.2f %.2f,%.2f\"", x, y - 6, x - 5.5, y + 4,
                             x + 5.5, y + 4);
        break;
    }
    out << " fill=\"" << colour << "\" stroke=\"#000000\" stroke-width=\"0.5\"/>\n";
  }

  // Legend: one entry per kernel present, in enum order.
  std::set<KernelId> kernels;
  for (const auto& p : r.points) kernels.insert(p.kernel);
  double ly = kTop + 16;
  out << "<g class=\"legend\">\n";
  for (const KernelId k : kernels) {
    out << printf_string("<rect x=\"%.2f\" y=\"%.2f\" width=\"10\" height=\"10\" fill=\"%s\"/>", kRight - 90,
                         ly - 9, kernel_colour(k))
        << printf_string("<text x=\"%.2f\" y=\"%.2f\">", kRight - 75, ly) << to_string(k) << "</text>\n";
    ly += 16;
  }
  out << "</g>\n</svg>\n";
}

void write_report_metadata(std::ostream& out, const RooflineReport& r, std::string_view timestamp,
                           std::string_view version) {
  out << kMetadataSchema << '\n' << "key,value\n";
  out << "matrix," << r.matrix << '\n';
  out << "n," << r.n << '\n';
  out << "nnz," << r.nnz << '\n';
  out << "pattern," << to_string(r.marker_pattern) << '\n';
  out << "beta_gbps," << format_double(r.profile.beta_gbps) << '\n';
  out << "pi_gflops," << format_double(r.profile.pi_gflops) << '\n';
  out << "timestamp," << timestamp << '\n';
  out << "version," << version << '\n';
}

}  // namespace sparoof
