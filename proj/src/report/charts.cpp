#include "ackcensus/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace ackcensus::report {

namespace {

constexpr double kWidth = 960;
constexpr double kHeight = 560;

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939"};

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

const char* color(std::size_t i) { return kPalette[i % std::size(kPalette)]; }

class Svg {
 public:
  explicit Svg(std::string_view title) {
    body_ += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n",
        kWidth, kHeight);
    body_ += fmt::format("<title>{}</title>\n", escape(title));
    body_ += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
    text(kWidth / 2, 24, title, "middle", 15);
  }

  void line(double x1, double y1, double x2, double y2, std::string_view stroke = "black", double width = 1) {
    body_ += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
                         x1, y1, x2, y2, stroke, width);
  }

  void rect(double x, double y, double w, double h, std::string_view fill) {
    body_ += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n", x, y,
                         std::max(w, 0.0), std::max(h, 0.0), fill);
  }

  void circle(double x, double y, double r, std::string_view fill) {
    body_ += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{}\" fill=\"{}\"/>\n", x, y, r, fill);
  }

  void polyline(const std::vector<std::pair<double, double>>& points, std::string_view stroke) {
    if (points.empty()) return;
    std::string coords;
    for (const auto& [x, y] : points) coords += fmt::format("{:.2f},{:.2f} ", x, y);
    coords.pop_back();
    body_ += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n", coords, stroke);
  }

  void text(double x, double y, std::string_view content, std::string_view anchor = "start", int size = 12) {
    body_ += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"{}\" font-size=\"{}\">{}</text>\n", x, y,
                         anchor, size, escape(content));
  }

  void vertical_text(double x, double y, std::string_view content) {
    body_ += fmt::format("<text x=\"{0:.2f}\" y=\"{1:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 {0:.2f} {1:.2f})\">{2}</text>\n",
                         x, y, escape(content));
  }

  std::string finish() && {
    body_ += "</svg>\n";
    return std::move(body_);
  }

 private:
  std::string body_;
};

struct Frame {
  double left, top, right, bottom;
  double width() const { return right - left; }
  double height() const { return bottom - top; }
};

// Linear axes with ticks; returns nothing, draws into svg.
void draw_axes(Svg& svg, const Frame& f, double x_min, double x_max, double y_min, double y_max, int x_ticks,
               int y_ticks, std::string_view x_label, std::string_view y_label, bool log_y = false) {
  svg.line(f.left, f.bottom, f.right, f.bottom);
  svg.line(f.left, f.top, f.left, f.bottom);
  for (int i = 0; i <= x_ticks; ++i) {
    const double v = x_min + (x_max - x_min) * i / x_ticks;
    const double x = f.left + f.width() * i / x_ticks;
    svg.line(x, f.bottom, x, f.bottom + 4);
    svg.text(x, f.bottom + 16, fmt::format("{:g}", std::round(v * 10) / 10), "middle");
  }
  for (int i = 0; i <= y_ticks; ++i) {
    const double v = y_min + (y_max - y_min) * i / y_ticks;
    const double y = f.bottom - f.height() * i / y_ticks;
    svg.line(f.left - 4, y, f.left, y);
    svg.line(f.left, y, f.right, y, "#e0e0e0", 0.5);
    const std::string label = log_y ? fmt::format("1e{:g}", v) : fmt::format("{:g}", std::round(v * 100) / 100);
    svg.text(f.left - 7, y + 4, label, "end");
  }
  svg.text((f.left + f.right) / 2, f.bottom + 36, x_label, "middle");
  svg.vertical_text(f.left - 46, (f.top + f.bottom) / 2, y_label);
}

void legend(Svg& svg, double x, double y, const std::vector<std::string>& labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double row = y + 18.0 * static_cast<double>(i);
    svg.rect(x, row - 9, 12, 10, color(i));
    svg.text(x + 18, row, labels[i]);
  }
}

std::string render_fig1(const Statistics& stats) {
  Svg svg("Cumulative distribution of papers with acknowledgements by number of authors");
  const Frame f{70, 50, 700, 500};
  int x_max = 2;
  for (const auto& agg : stats.disciplines)
    if (!agg.author_histogram().empty()) x_max = std::max(x_max, agg.author_histogram().rbegin()->first);
  x_max = std::min(x_max, 50);
  draw_axes(svg, f, 1, x_max, 0, 100, std::min(x_max - 1, 7), 5, "Number of authors", "Papers (%)");

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < stats.disciplines.size(); ++i) {
    const auto& agg = stats.disciplines[i];
    labels.push_back(agg.discipline());
    std::vector<std::pair<double, double>> points;
    for (const auto& p : metrics::cumulative_author_distribution(agg)) {
      if (p.authors > x_max) break;
      points.emplace_back(f.left + f.width() * (p.authors - 1) / (x_max - 1), f.bottom - f.height() * p.percent / 100);
    }
    svg.polyline(points, color(i));
  }
  legend(svg, 720, 70, labels);
  return std::move(svg).finish();
}

void histogram_panel(Svg& svg, const Frame& f, const metrics::Histogram& histogram, std::string_view label) {
  int x_max = 1;
  std::uint64_t y_top = 1;
  for (const auto& [k, n] : histogram) {
    x_max = std::max(x_max, k);
    y_top = std::max(y_top, n);
  }
  x_max = std::min(x_max, 100);
  const double decades = std::max(1.0, std::ceil(std::log10(static_cast<double>(y_top))));
  draw_axes(svg, f, 0, x_max, 0, decades, std::min(x_max, 5), static_cast<int>(decades), label, "Papers (log scale)",
            true);
  for (const auto& [k, n] : histogram) {
    if (k > x_max || n == 0) continue;
    const double x = f.left + f.width() * k / x_max;
    const double y = f.bottom - f.height() * std::log10(static_cast<double>(n)) / decades;
    svg.circle(x, y, 2.5, color(0));
  }
}

std::string render_fig2(const Statistics& stats) {
  Svg svg("Distribution of papers by number of authors (a) and acknowledgees (b)");
  const auto dist = metrics::count_distributions(stats.total);
  histogram_panel(svg, {80, 50, 450, 490}, dist.authors, "(a) Number of authors");
  histogram_panel(svg, {560, 50, 930, 490}, dist.acknowledgees, "(b) Number of acknowledgees");
  return std::move(svg).finish();
}

std::string render_fig3(const Statistics& stats) {
  Svg svg("Mean number of authors and acknowledgees by discipline");
  struct Row {
    std::string label;
    metrics::MeanCounts means;
  };
  std::vector<Row> rows;
  for (const auto& agg : stats.disciplines)
    if (auto m = metrics::mean_counts(agg)) rows.push_back({agg.discipline(), *m});
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.means.contributors > b.means.contributors; });

  const Frame f{190, 50, 760, 510};
  double x_max = 1;
  for (const auto& r : rows) x_max = std::max(x_max, r.means.contributors);
  x_max = std::ceil(x_max);
  draw_axes(svg, f, 0, x_max, 0, 0, static_cast<int>(std::min(x_max, 12.0)), 0, "Mean per paper", "");

  const double band = rows.empty() ? 0 : f.height() / static_cast<double>(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const double y = f.top + band * static_cast<double>(i) + band * 0.15;
    const double h = band * 0.7;
    const double wa = f.width() * r.means.authors / x_max;
    const double wk = f.width() * r.means.acknowledgees / x_max;
    svg.rect(f.left, y, wa, h, color(0));
    svg.rect(f.left + wa, y, wk, h, color(1));
    svg.text(f.left - 8, y + h * 0.7, r.label, "end");
    svg.text(f.left + wa + wk + 6, y + h * 0.7,
             fmt::format("{:.1f} [{}-{}] [{}-{}]", r.means.contributors, r.means.author_range.first,
                         r.means.author_range.second, r.means.acknowledgee_range.first,
                         r.means.acknowledgee_range.second));
  }
  legend(svg, 800, 70, {"Authors", "Acknowledgees"});
  return std::move(svg).finish();
}

std::string render_fig4(const Statistics& stats) {
  Svg svg("Mean number of acknowledgees by number of authors");
  const Frame f{70, 50, 700, 500};
  const int k_max = std::max(stats.k_max, 2);
  double y_max = 0;
  std::vector<std::vector<metrics::ConditionalMean>> tables;
  for (const auto& agg : stats.disciplines) {
    tables.push_back(metrics::mean_acks_by_author_count(agg, k_max));
    for (const auto& row : tables.back())
      if (row.mean_acknowledgees) y_max = std::max(y_max, *row.mean_acknowledgees);
  }
  y_max = std::max(1.0, std::ceil(y_max));
  draw_axes(svg, f, 1, k_max, 0, y_max, k_max - 1, 5, "Number of authors", "Mean acknowledgees");

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    labels.push_back(stats.disciplines[i].discipline());
    std::vector<std::pair<double, double>> segment;
    for (const auto& row : tables[i]) {
      if (!row.mean_acknowledgees) {
        svg.polyline(segment, color(i));
        segment.clear();
        continue;
      }
      const double x = f.left + f.width() * (row.authors - 1) / (k_max - 1);
      const double y = f.bottom - f.height() * *row.mean_acknowledgees / y_max;
      segment.emplace_back(x, y);
      svg.circle(x, y, 2.5, color(i));
    }
    svg.polyline(segment, color(i));
  }
  legend(svg, 720, 70, labels);
  return std::move(svg).finish();
}

}  // namespace

std::string render_figure_svg(FigureKind kind, const Statistics& stats) {
  switch (kind) {
    case FigureKind::Fig1:
      return render_fig1(stats);
    case FigureKind::Fig2:
      return render_fig2(stats);
    case FigureKind::Fig3:
      return render_fig3(stats);
    case FigureKind::Fig4:
      return render_fig4(stats);
  }
  return {};
}

}  // namespace ackcensus::report
