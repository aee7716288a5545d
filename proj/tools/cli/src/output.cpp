#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "shoot/cli/cli.hpp"
#include "shoot/error.hpp"

namespace shoot::cli {

namespace {

std::string printf_string(const char* fmt, double v) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), fmt, v);
  return buf.data();
}

std::string g15(double v) { return printf_string("%.15g", v); }

std::string time_label(double t) { return printf_string("%g", t); }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  os << content;
  os.flush();
  if (!os) throw IoError("failed writing '" + path.string() + "'");
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string format_value(double v) {
  if (v != 0.0 && std::abs(v) < 1e-6) return printf_string("%.3e", v);
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  return printf_string("%.7f", v);
}

std::string boundary_table(const ExampleSpec& example, const SolveReport& report) {
  const auto& labels = example.labels;
  const std::string ta = time_label(example.problem.a());
  const std::string tb = time_label(example.problem.b());

  std::vector<std::string> left{"Initial values"};
  std::vector<std::string> right{"Final values"};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    left.push_back(labels[i] + "(" + ta + ")=" +
                   (i < report.initial_state.size() ? format_value(report.initial_state[i]) : "n/a"));
    right.push_back(labels[i] + "(" + tb + ")=" +
                    (i < report.final_state.size() ? format_value(report.final_state[i]) : "n/a"));
  }
  std::size_t width = 0;
  for (const auto& s : left) width = std::max(width, s.size());
  std::ostringstream os;
  for (std::size_t r = 0; r < left.size(); ++r) {
    os << left[r] << std::string(width + 4 - left[r].size(), ' ') << right[r] << '\n';
  }
  return os.str();
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream os;
  os << 't';
  for (std::size_t i = 0; i < traj.dimension(); ++i) os << ",x" << (i + 1);
  os << '\n';
  for (const auto& node : traj.nodes()) {
    os << g15(node.t);
    for (double v : node.x) os << ',' << g15(v);
    os << '\n';
  }
  return os.str();
}

std::string trace_csv(const SolveReport& report) {
  const std::size_t k = report.c_final.size();
  std::ostringstream os;
  os << 'k';
  for (std::size_t i = 0; i < k; ++i) os << ",c" << (i + 1);
  os << ",residual_inf,step_inf\n";
  for (const auto& it : report.iterations) {
    os << it.k;
    for (double v : it.c) os << ',' << g15(v);
    os << ',' << g15(it.residual_norm) << ',' << g15(it.step_norm) << '\n';
  }
  return os.str();
}

std::string render_svg(const Trajectory& traj, const std::vector<std::string>& labels,
                       std::string_view title) {
  constexpr double kWidth = 800, kHeight = 600;
  constexpr double kLeft = 80, kRight = 150, kTop = 50, kBottom = 60;
  constexpr std::array<const char*, 8> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                  "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double t0 = 0, t1 = 1, y0 = 0, y1 = 1;
  if (!traj.empty()) {
    t0 = traj.t_min();
    t1 = traj.t_max();
    y0 = std::numeric_limits<double>::infinity();
    y1 = -y0;
    for (const auto& node : traj.nodes())
      for (double v : node.x) {
        y0 = std::min(y0, v);
        y1 = std::max(y1, v);
      }
    if (!(y1 > y0)) {
      y0 -= 1.0;
      y1 += 1.0;
    }
  }
  const double tm = 0.05 * (t1 - t0), ym = 0.05 * (y1 - y0);
  t0 -= tm;
  t1 += tm;
  y0 -= ym;
  y1 += ym;
  auto px = [&](double t) { return kLeft + (t - t0) / (t1 - t0) * plot_w; };
  auto py = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * plot_h; };
  auto num = [](double v) { return printf_string("%.2f", v); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
        "viewBox=\"0 0 800 600\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"28\" font-family=\"sans-serif\" "
     << "font-size=\"16\" text-anchor=\"middle\">" << xml_escape(title) << "</text>\n";

  // axes
  os << "<g stroke=\"black\" stroke-width=\"1\">\n";
  os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\""
     << num(kLeft + plot_w) << "\" y2=\"" << num(kTop + plot_h) << "\"/>\n";
  os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft)
     << "\" y2=\"" << num(kTop + plot_h) << "\"/>\n";
  os << "</g>\n";

  os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int i = 0; i < 5; ++i) {
    const double f = i / 4.0;
    const double t = t0 + f * (t1 - t0);
    const double y = y0 + f * (y1 - y0);
    const double x = px(t);
    const double yy = py(y);
    os << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\"" << num(x)
       << "\" y2=\"" << num(kTop + plot_h + 5) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + plot_h + 20)
       << "\" text-anchor=\"middle\">" << printf_string("%.4g", t) << "</text>\n";
    os << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(yy) << "\" x2=\"" << num(kLeft)
       << "\" y2=\"" << num(yy) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(yy + 4)
       << "\" text-anchor=\"end\">" << printf_string("%.4g", y) << "</text>\n";
  }
  os << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 15)
     << "\" text-anchor=\"middle\">t</text>\n";
  os << "</g>\n";

  for (std::size_t c = 0; c < traj.dimension(); ++c) {
    os << "<polyline fill=\"none\" stroke=\"" << kColors[c % kColors.size()]
       << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& node : traj.nodes()) {
      if (!first) os << ' ';
      first = false;
      os << num(px(node.t)) << ',' << num(py(node.x[c]));
    }
    os << "\"/>\n";
  }

  // legend
  os << "<g font-family=\"sans-serif\" font-size=\"13\">\n";
  for (std::size_t c = 0; c < traj.dimension(); ++c) {
    const double ly = kTop + 10 + 22.0 * static_cast<double>(c);
    const double lx = kLeft + plot_w + 20;
    const std::string label = c < labels.size() ? labels[c] : "x" + std::to_string(c + 1);
    os << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 25)
       << "\" y2=\"" << num(ly) << "\" stroke=\"" << kColors[c % kColors.size()]
       << "\" stroke-width=\"3\"/>\n";
    os << "<text x=\"" << num(lx + 32) << "\" y=\"" << num(ly + 4) << "\">" << xml_escape(label)
       << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
  write_file(path, trajectory_csv(traj));
}

void write_trace_csv(const SolveReport& report, const std::filesystem::path& path) {
  write_file(path, trace_csv(report));
}

void write_svg(const Trajectory& traj, const std::vector<std::string>& labels,
               std::string_view title, const std::filesystem::path& path) {
  write_file(path, render_svg(traj, labels, title));
}

std::vector<CsvRow> read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(is, line) || line.rfind("t", 0) != 0) {
    throw IoError("'" + path.string() + "' is not a trajectory CSV");
  }
  std::vector<CsvRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    CsvRow row{};
    bool first = true;
    while (std::getline(ls, cell, ',')) {
      const double v = std::stod(cell);
      if (first) {
        row.t = v;
        first = false;
      } else {
        row.x.push_back(v);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace shoot::cli
