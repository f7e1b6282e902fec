#include "talkshare/viz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace talkshare {

namespace {

// Fixed-precision (trailing zeros trimmed) so output is byte-stable.
std::string num(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.4f", value);
  std::string out = buffer;
  const std::size_t dot = out.find('.');
  std::size_t last = out.find_last_not_of('0');
  if (last == dot) --last;
  out.erase(last + 1);
  return out;
}

std::string svg_open(double width, double height) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         num(width) + "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) +
         " " + num(height) + "\">\n";
}

double cell_opacity(const WindowResult& window, const RegimeSequence& regimes,
                    const StripStyle& style) {
  const double threshold =
      regimes.config_used.threshold_for(window.dominant_party.value_or(""));
  double t = 1.0;
  if (threshold < 1.0)
    t = (window.dominance_fraction - threshold) / (1.0 - threshold);
  t = std::clamp(t, 0.0, 1.0);
  return style.min_opacity + t * (style.max_opacity - style.min_opacity);
}

void append_strip_rects(std::string& out, const DynamicsReport& report,
                        const StripStyle& style, double y) {
  const auto& windows = report.regimes.windows;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const auto& window = windows[i];
    const double x = static_cast<double>(i) * style.cell_width;
    std::string fill = style.gray_color;
    double opacity = 1.0;
    if (window.label != Regime::Gray) {
      fill = window.label == Regime::Blue ? style.blue_hue : style.red_hue;
      opacity = cell_opacity(window, report.regimes, style);
    }
    out += "  <rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" +
           num(style.cell_width) + "\" height=\"" + num(style.cell_height) +
           "\" fill=\"" + fill + "\" fill-opacity=\"" + num(opacity) + "\"/>\n";
  }
}

}  // namespace

std::string render_strip(const DynamicsReport& report, const StripStyle& style) {
  const std::size_t n = report.regimes.windows.size();
  std::string out = svg_open(static_cast<double>(n) * style.cell_width, style.cell_height);
  append_strip_rects(out, report, style, 0.0);
  out += "</svg>\n";
  return out;
}

std::string render_pie(const Composition& comp, const StripStyle& style) {
  const double size = 200.0;
  const double cx = size / 2.0, cy = size / 2.0, radius = 80.0;
  std::string out = svg_open(size, size);

  struct Wedge {
    double fraction;
    const std::string* color;
    const char* name;
  };
  const Wedge wedges[] = {{comp.blue_frac, &style.blue_hue, "blue"},
                          {comp.red_frac, &style.red_hue, "red"},
                          {comp.gray_frac, &style.gray_color, "gray"}};

  double cumulative = 0.0;
  for (const auto& wedge : wedges) {
    if (wedge.fraction <= 0.0) continue;
    const int percent = static_cast<int>(std::floor(wedge.fraction * 100.0 + 0.5));
    if (wedge.fraction >= 1.0 - 1e-9) {
      out += "  <circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" +
             num(radius) + "\" fill=\"" + *wedge.color + "\"/>\n";
      out += "  <text x=\"" + num(cx) + "\" y=\"" + num(cy) +
             "\" text-anchor=\"middle\" font-size=\"14\">" + std::to_string(percent) +
             "%</text>\n";
      cumulative += wedge.fraction;
      continue;
    }
    // Angles start at 12 o'clock and run clockwise.
    const double a0 = 2.0 * M_PI * cumulative - M_PI / 2.0;
    const double a1 = 2.0 * M_PI * (cumulative + wedge.fraction) - M_PI / 2.0;
    const double x0 = cx + radius * std::cos(a0), y0 = cy + radius * std::sin(a0);
    const double x1 = cx + radius * std::cos(a1), y1 = cy + radius * std::sin(a1);
    const int large_arc = wedge.fraction > 0.5 ? 1 : 0;
    out += "  <path d=\"M " + num(cx) + " " + num(cy) + " L " + num(x0) + " " + num(y0) +
           " A " + num(radius) + " " + num(radius) + " 0 " + std::to_string(large_arc) +
           " 1 " + num(x1) + " " + num(y1) + " Z\" fill=\"" + *wedge.color + "\"/>\n";
    const double mid = (a0 + a1) / 2.0;
    const double lx = cx + radius * 0.6 * std::cos(mid);
    const double ly = cy + radius * 0.6 * std::sin(mid);
    out += "  <text x=\"" + num(lx) + "\" y=\"" + num(ly) +
           "\" text-anchor=\"middle\" font-size=\"14\">" + std::to_string(percent) +
           "%</text>\n";
    cumulative += wedge.fraction;
  }
  out += "</svg>\n";
  return out;
}

std::string render_corpus_grid(const std::vector<DynamicsReport>& reports,
                               GridSort sort, const StripStyle& style) {
  if (reports.empty()) throw DataError("render_corpus_grid: no reports");
  std::vector<const DynamicsReport*> ordered;
  ordered.reserve(reports.size());
  for (const auto& report : reports) ordered.push_back(&report);
  std::sort(ordered.begin(), ordered.end(),
            [&](const DynamicsReport* a, const DynamicsReport* b) {
              if (sort == GridSort::ImbalanceDesc &&
                  a->imbalance.value != b->imbalance.value)
                return a->imbalance.value > b->imbalance.value;
              return a->id < b->id;
            });

  std::size_t max_windows = 0;
  for (const auto* report : ordered)
    max_windows = std::max(max_windows, report->regimes.windows.size());
  const double width = static_cast<double>(max_windows) * style.cell_width;
  const double height =
      static_cast<double>(ordered.size()) * (style.cell_height + style.row_gap);

  std::string out = svg_open(width, height);
  for (std::size_t row = 0; row < ordered.size(); ++row)
    append_strip_rects(out, *ordered[row], style,
                       static_cast<double>(row) * (style.cell_height + style.row_gap));
  out += "</svg>\n";
  return out;
}

std::string render_terminal(const DynamicsReport& report) {
  const char* no_color = std::getenv("NO_COLOR");
  const bool plain = no_color != nullptr && no_color[0] != '\0';
  std::string out;
  for (const auto& window : report.regimes.windows) {
    if (plain) {
      switch (window.label) {
        case Regime::Blue: out += 'B'; break;
        case Regime::Red: out += 'R'; break;
        case Regime::Gray: out += 'G'; break;
      }
      continue;
    }
    switch (window.label) {
      case Regime::Blue: out += "\x1b[34m█"; break;
      case Regime::Red: out += "\x1b[31m█"; break;
      case Regime::Gray: out += "\x1b[90m█"; break;
    }
  }
  if (!plain && !report.regimes.windows.empty()) out += "\x1b[0m";
  return out;
}

}  // namespace talkshare
