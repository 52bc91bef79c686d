#include "concord/report.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <tuple>

#include <fmt/format.h>

#include "concord/display.hpp"
#include "concord/error.hpp"
#include "concord/ingest.hpp"

namespace concord {

double plot_x(double p_expected) noexcept { return kPlotMargin + kPlotSpan * p_expected; }
double plot_y(double p_observed) noexcept {
  return kPlotSize - kPlotMargin - kPlotSpan * p_observed;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

namespace {

std::string num(double v) { return format_fixed(v, 2); }

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

// Box panel along one axis. `along` maps a data value to the panel's long
// coordinate; the panel spans [cross_lo, cross_hi] across.
void box_panel(std::string& svg, const BoxStats& b, bool horizontal, double cross_lo,
               double cross_hi, const char* css_class) {
  const double mid = (cross_lo + cross_hi) / 2.0;
  auto seg = [&](double a0, double c0, double a1, double c1, const char* cls) {
    if (horizontal) {
      svg += fmt::format("<line class=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", cls,
                         num(a0), num(c0), num(a1), num(c1));
    } else {
      svg += fmt::format("<line class=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", cls,
                         num(c0), num(a0), num(c1), num(a1));
    }
  };
  auto pos = [&](double v) { return horizontal ? plot_x(v) : plot_y(v); };

  svg += fmt::format("<g class=\"{}\">\n", css_class);
  const double lo = pos(b.q1);
  const double hi = pos(b.q3);
  if (horizontal) {
    svg += fmt::format(
        "<rect class=\"box\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#dde6f2\" "
        "stroke=\"#333\"/>\n",
        num(std::min(lo, hi)), num(cross_lo), num(std::abs(hi - lo)), num(cross_hi - cross_lo));
  } else {
    svg += fmt::format(
        "<rect class=\"box\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#dde6f2\" "
        "stroke=\"#333\"/>\n",
        num(cross_lo), num(std::min(lo, hi)), num(cross_hi - cross_lo), num(std::abs(hi - lo)));
  }
  seg(pos(b.median), cross_lo, pos(b.median), cross_hi, "median");
  seg(pos(b.lower_whisker), mid, pos(b.q1), mid, "whisker");
  seg(pos(b.q3), mid, pos(b.upper_whisker), mid, "whisker");
  seg(pos(b.lower_whisker), cross_lo + 4, pos(b.lower_whisker), cross_hi - 4, "whisker-cap");
  seg(pos(b.upper_whisker), cross_lo + 4, pos(b.upper_whisker), cross_hi - 4, "whisker-cap");
  for (double o : b.outliers) {
    const double x = horizontal ? pos(o) : mid;
    const double y = horizontal ? mid : pos(o);
    svg += fmt::format(
        "<circle class=\"outlier\" cx=\"{}\" cy=\"{}\" r=\"2\" fill=\"none\" stroke=\"#333\"/>\n",
        num(x), num(y));
  }
  svg += "</g>\n";
}

}  // namespace

std::string scatter_plot(const ScatterSpec& spec) {
  for (const auto& p : spec.points) {
    if (!in_unit(p.p_expected) || !in_unit(p.p_observed)) {
      throw Error(ErrorCode::InvalidArgument,
                  "point '" + p.label + "' lies outside the unit square");
    }
  }
  for (double k : spec.isolines) {
    if (!in_unit(k)) {
      throw Error(ErrorCode::InvalidArgument, "isoline kappa outside [0, 1]");
    }
  }

  const double lo = kPlotMargin;
  const double hi = kPlotSize - kPlotMargin;
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" "
      "viewBox=\"0 0 {0} {0}\" font-family=\"sans-serif\" font-size=\"10\">\n",
      static_cast<int>(kPlotSize));
  svg += fmt::format("<title>{}</title>\n", xml_escape(spec.title));
  svg += "<rect x=\"0\" y=\"0\" width=\"600\" height=\"600\" fill=\"white\"/>\n";
  svg += fmt::format("<text class=\"title\" x=\"{}\" y=\"14\" font-size=\"12\">{}</text>\n",
                     num(lo), xml_escape(spec.title));

  // Frame, ticks and axis labels.
  svg += fmt::format(
      "<rect class=\"frame\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" "
      "stroke=\"black\"/>\n",
      num(lo), num(lo), num(kPlotSpan), num(kPlotSpan));
  for (int t = 0; t <= 5; ++t) {
    const double v = t / 5.0;
    svg += fmt::format("<line class=\"tick\" x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" "
                       "stroke=\"black\"/>\n",
                       num(plot_x(v)), num(hi), num(hi + 5));
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                       num(plot_x(v)), num(hi + 17), format_fixed(v, 1));
    svg += fmt::format("<line class=\"tick\" x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" "
                       "stroke=\"black\"/>\n",
                       num(lo - 5), num(plot_y(v)), num(lo));
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", num(lo - 8),
                       num(plot_y(v) + 3), format_fixed(v, 1));
  }
  svg += fmt::format(
      "<text class=\"axis-label\" x=\"{}\" y=\"590\" text-anchor=\"middle\">Expected "
      "agreement</text>\n",
      num(plot_x(0.5)));
  svg += fmt::format(
      "<text class=\"axis-label\" x=\"14\" y=\"{0}\" text-anchor=\"middle\" "
      "transform=\"rotate(-90 14 {0})\">Observed agreement</text>\n",
      num(plot_y(0.5)));

  for (double k : spec.isolines) {
    const double y0 = kappa_isoline(k, 0.0);
    const double y1 = kappa_isoline(k, 1.0);
    svg += fmt::format(
        "<line class=\"isoline\" data-kappa=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" "
        "stroke=\"#b22\" stroke-dasharray=\"{}\"/>\n",
        format_fixed(k, 4), num(plot_x(0.0)), num(plot_y(y0)), num(plot_x(1.0)), num(plot_y(y1)),
        k == 0.0 ? "none" : "6 3");
    svg += fmt::format("<text class=\"isoline-label\" x=\"{}\" y=\"{}\" fill=\"#b22\">"
                       "&#954; = {}</text>\n",
                       num(plot_x(0.0) + 4), num(plot_y(y0) - 4), format_fixed(k, 2));
  }

  for (const auto& p : spec.points) {
    svg += fmt::format(
        "<circle class=\"point\" cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#1f4e9c\"><title>{}</title>"
        "</circle>\n",
        num(plot_x(p.p_expected)), num(plot_y(p.p_observed)), xml_escape(p.label));
  }

  if (!spec.points.empty()) {
    std::vector<double> expected;
    std::vector<double> observed;
    for (const auto& p : spec.points) {
      expected.push_back(p.p_expected);
      observed.push_back(p.p_observed);
    }
    box_panel(svg, box_stats(expected), true, 24.0, 52.0, "box-expected");
    box_panel(svg, box_stats(observed), false, hi + 8.0, hi + 36.0, "box-observed");
  }

  svg += "</svg>\n";
  return svg;
}

// ---------------------------------------------------------------------------

namespace {

struct Row {
  SummaryKey key;
  std::int64_t n = 0;
  double p_observed = 0.0;
  double p_expected = 0.0;
  std::optional<double> kappa;
};

std::string band_text(const std::optional<double>& kappa) {
  if (!kappa) {
    return std::string(kDegenerateBand);
  }
  return std::string(to_string(interpret_kappa(*kappa)));
}

using GroupKey = std::tuple<std::string, std::string, std::string>;  // material, stratum, scheme

std::vector<Row> ordered_rows(const std::map<SummaryKey, AgreementSummary>& analyses) {
  std::map<GroupKey, std::vector<Row>> groups;
  for (const auto& [key, s] : analyses) {
    groups[{key.material, key.stratum, key.scheme}].push_back(
        {key, s.n, s.p_observed, s.p_expected, s.kappa});
  }
  std::vector<Row> rows;
  for (auto& [group, members] : groups) {
    std::stable_partition(members.begin(), members.end(),
                          [](const Row& r) { return r.key.subject == kAllSubjects; });
    Row avg;
    avg.key = {std::string(kAverageSubject), std::get<1>(group), std::get<0>(group),
               std::get<2>(group)};
    std::size_t individuals = 0;
    std::size_t with_kappa = 0;
    double kappa_sum = 0.0;
    for (const auto& r : members) {
      rows.push_back(r);
      if (r.key.subject == kAllSubjects) {
        continue;
      }
      ++individuals;
      avg.n += r.n;
      avg.p_observed += r.p_observed;
      avg.p_expected += r.p_expected;
      if (r.kappa) {
        ++with_kappa;
        kappa_sum += *r.kappa;
      }
    }
    if (individuals > 0) {
      avg.p_observed /= static_cast<double>(individuals);
      avg.p_expected /= static_cast<double>(individuals);
      if (with_kappa > 0) {
        avg.kappa = kappa_sum / static_cast<double>(with_kappa);
      }
      rows.push_back(avg);
    }
  }
  return rows;
}

std::string render_text(const std::vector<Row>& rows, const DisplayOptions& opt) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"subject", "stratum", "material", "scheme", "n", "P_o", "P_e", "kappa", "band"});
  for (const auto& r : rows) {
    cells.push_back({r.key.subject, r.key.stratum, r.key.material, r.key.scheme,
                     std::to_string(r.n), format_percent(r.p_observed, opt.percent_decimals),
                     format_percent(r.p_expected, opt.percent_decimals),
                     r.kappa ? format_fixed(*r.kappa, opt.kappa_decimals) : "NA",
                     band_text(r.kappa)});
  }
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      width[c] = std::max(width[c], line[c].size());
    }
  }
  std::string out;
  for (const auto& line : cells) {
    std::string text;
    for (std::size_t c = 0; c < line.size(); ++c) {
      const bool numeric = c >= 4 && c <= 7;
      const auto pad = std::string(width[c] - line[c].size(), ' ');
      text += numeric ? pad + line[c] : line[c] + (c + 1 < line.size() ? pad : "");
      if (c + 1 < line.size()) {
        text += "  ";
      }
    }
    out += text + "\n";
  }
  return out;
}

std::string render_csv(const std::vector<Row>& rows) {
  std::string out(kSummaryCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.key.subject, r.key.stratum,
                       r.key.material, r.key.scheme, r.n, format_fixed(r.p_observed, 6),
                       format_fixed(r.p_expected, 6), r.kappa ? format_fixed(*r.kappa, 6) : "NA",
                       band_text(r.kappa));
  }
  return out;
}

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
    }
    out += c;
  }
  return out + "\"";
}

std::string render_json(const std::vector<Row>& rows) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out += fmt::format(
        "  {{\"subject\": {}, \"stratum\": {}, \"material\": {}, \"scheme\": {}, \"n\": {}, "
        "\"p_observed\": {:.17g}, \"p_expected\": {:.17g}, \"kappa\": {}, \"band\": {}}}{}\n",
        json_string(r.key.subject), json_string(r.key.stratum), json_string(r.key.material),
        json_string(r.key.scheme), r.n, r.p_observed, r.p_expected,
        r.kappa ? fmt::format("{:.17g}", *r.kappa) : "null", json_string(band_text(r.kappa)),
        i + 1 < rows.size() ? "," : "");
  }
  return out + "]\n";
}

}  // namespace

std::string render_summary(const std::map<SummaryKey, AgreementSummary>& analyses,
                           SummaryFormat format, const DisplayOptions& options) {
  if (analyses.empty()) {
    throw Error(ErrorCode::EmptyInput, "nothing to summarize");
  }
  const auto rows = ordered_rows(analyses);
  switch (format) {
    case SummaryFormat::Text: return render_text(rows, options);
    case SummaryFormat::Csv: return render_csv(rows);
    case SummaryFormat::Json: return render_json(rows);
  }
  return {};
}

std::string render_sign_test(const SignTestResult& r, std::string_view label) {
  std::string out;
  out += fmt::format("sign test: {}\n", label);
  out += "  alternative:  observed exceeds expected (one-sided)\n";
  out += fmt::format("  positive:     {}\n", r.n_positive);
  out += fmt::format("  negative:     {}\n", r.n_negative);
  out += fmt::format("  zero:         {} (dropped)\n", r.n_zero);
  out += fmt::format("  effective n:  {}\n", r.n_effective);
  out += fmt::format("  p-value:      {:.6g}\n", r.p_value);
  out += fmt::format(
      "SIGNTEST label={} n_positive={} n_negative={} n_zero={} n_effective={} p_value={:.17g} "
      "alternative=greater\n",
      label, r.n_positive, r.n_negative, r.n_zero, r.n_effective, r.p_value);
  return out;
}

}  // namespace concord
