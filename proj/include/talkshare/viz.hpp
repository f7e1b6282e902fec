// Renders regime strips, composition pies, corpus grids (SVG), and terminal
// strips (ANSI).
#pragma once

#include <string>
#include <vector>

#include "talkshare/dynamics.hpp"

namespace talkshare {

struct StripStyle {
  double cell_width = 14.0;   // px
  double cell_height = 28.0;  // px
  std::string blue_hue = "#2166ac";
  std::string red_hue = "#b2182b";
  std::string gray_color = "#bdbdbd";
  double min_opacity = 0.30;
  double max_opacity = 1.00;
  double row_gap = 4.0;  // px between corpus-grid rows
};

// One rectangle per window, abutting left-to-right (windows overlap in time,
// cells do not). Blue/Red opacity maps the dominance fraction linearly from
// [party threshold, 1] onto [min_opacity, max_opacity]; Gray is fixed.
std::string render_strip(const DynamicsReport& report, const StripStyle& style = {});

// Pie with up to three wedges (zero fractions omitted), labeled with integer
// percentages (rounded half-up; the labels may total 99 or 101).
std::string render_pie(const Composition& comp, const StripStyle& style = {});

enum class GridSort { ImbalanceDesc, Id };

// One strip row per conversation.
std::string render_corpus_grid(const std::vector<DynamicsReport>& reports,
                               GridSort sort, const StripStyle& style = {});

// One colored block character per window; plain B/R/G letters when the
// NO_COLOR environment variable is set (non-empty).
std::string render_terminal(const DynamicsReport& report);

}  // namespace talkshare
