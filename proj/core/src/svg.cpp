#include "optrack/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

#include "optrack/evaluation.hpp"

namespace optrack {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 52.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v, const char* spec = "%.2f") {
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), spec, v);
  return buffer;
}

struct Series {
  std::string name;
  std::vector<double> x, y, band_lo, band_hi;
};

struct AxisRange {
  double lo = 0.0, hi = 1.0;
  double map(double v, double pixel_lo, double pixel_hi) const {
    const double f = (v - lo) / (hi - lo);
    return pixel_lo + f * (pixel_hi - pixel_lo);
  }
};

AxisRange padded(double lo, double hi, double pad_fraction) {
  if (!(hi > lo)) {
    const double bump = std::max(1.0, std::fabs(hi)) * 0.05;
    lo -= bump;
    hi += bump;
  }
  const double pad = (hi - lo) * pad_fraction;
  return {lo - pad, hi + pad};
}

struct VLine {
  double x;
  std::string label;
};

class Chart {
 public:
  Chart(std::string title, std::string xlabel, std::string ylabel,
        AxisRange xr, AxisRange yr)
      : title_(std::move(title)),
        xlabel_(std::move(xlabel)),
        ylabel_(std::move(ylabel)),
        xr_(xr),
        yr_(yr) {}

  double px(double x) const { return xr_.map(x, kLeft, kWidth - kRight); }
  double py(double y) const { return yr_.map(y, kHeight - kBottom, kTop); }

  void add_series(const Series& series, const char* color) {
    if (!series.band_lo.empty()) {
      std::string points;
      for (std::size_t i = 0; i < series.x.size(); ++i) {
        points += fmt(px(series.x[i])) + "," + fmt(py(series.band_hi[i])) + " ";
      }
      for (std::size_t i = series.x.size(); i-- > 0;) {
        points += fmt(px(series.x[i])) + "," + fmt(py(series.band_lo[i])) + " ";
      }
      body_ += "<polygon points=\"" + points + "\" fill=\"" + color +
               "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
    }
    std::string points;
    for (std::size_t i = 0; i < series.x.size(); ++i) {
      points += fmt(px(series.x[i])) + "," + fmt(py(series.y[i])) + " ";
    }
    body_ += "<polyline points=\"" + points + "\" fill=\"none\" stroke=\"" +
             color + "\" stroke-width=\"1.8\"/>\n";
    for (std::size_t i = 0; i < series.x.size(); ++i) {
      body_ += "<circle cx=\"" + fmt(px(series.x[i])) + "\" cy=\"" +
               fmt(py(series.y[i])) + "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
    }
    legend_.emplace_back(series.name, color);
  }

  void add_vline(const VLine& line, const char* color) {
    body_ += "<line x1=\"" + fmt(px(line.x)) + "\" y1=\"" + fmt(kTop) +
             "\" x2=\"" + fmt(px(line.x)) + "\" y2=\"" +
             fmt(kHeight - kBottom) + "\" stroke=\"" + color +
             "\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
    body_ += "<text x=\"" + fmt(px(line.x) + 3.0) + "\" y=\"" +
             fmt(kTop + 14.0) + "\" font-size=\"11\" fill=\"" + color + "\">" +
             line.label + "</text>\n";
  }

  void add_hline(double y, const std::string& label, const char* color) {
    body_ += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(py(y)) +
             "\" x2=\"" + fmt(kWidth - kRight) + "\" y2=\"" + fmt(py(y)) +
             "\" stroke=\"" + color +
             "\" stroke-width=\"1\" stroke-dasharray=\"6 3\"/>\n";
    body_ += "<text x=\"" + fmt(kWidth - kRight - 4.0) + "\" y=\"" +
             fmt(py(y) - 4.0) +
             "\" font-size=\"11\" text-anchor=\"end\" fill=\"" + color + "\">" +
             label + "</text>\n";
  }

  std::string render() const {
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
           "width=\"" + fmt(kWidth, "%.0f") + "\" height=\"" +
           fmt(kHeight, "%.0f") + "\" viewBox=\"0 0 " + fmt(kWidth, "%.0f") +
           " " + fmt(kHeight, "%.0f") + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + fmt(kLeft) + "\" y=\"22\" font-size=\"14\" "
           "font-family=\"sans-serif\">" + title_ + "</text>\n";

    // Axes with five ticks per side.
    for (int i = 0; i <= 4; ++i) {
      const double fx = xr_.lo + (xr_.hi - xr_.lo) * i / 4.0;
      const double fy = yr_.lo + (yr_.hi - yr_.lo) * i / 4.0;
      const double gx = px(fx);
      const double gy = py(fy);
      out += "<line x1=\"" + fmt(gx) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" +
             fmt(gx) + "\" y2=\"" + fmt(kHeight - kBottom) +
             "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
      out += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(gy) + "\" x2=\"" +
             fmt(kWidth - kRight) + "\" y2=\"" + fmt(gy) +
             "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
      out += "<text x=\"" + fmt(gx) + "\" y=\"" + fmt(kHeight - kBottom + 16) +
             "\" font-size=\"11\" text-anchor=\"middle\">" + fmt(fx, "%.4g") +
             "</text>\n";
      out += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(gy + 4) +
             "\" font-size=\"11\" text-anchor=\"end\">" + fmt(fy, "%.4g") +
             "</text>\n";
    }
    out += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" +
           fmt(kWidth - kRight - kLeft) + "\" height=\"" +
           fmt(kHeight - kTop - kBottom) +
           "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + fmt((kLeft + kWidth - kRight) / 2.0) + "\" y=\"" +
           fmt(kHeight - 10.0) +
           "\" font-size=\"12\" text-anchor=\"middle\">" + xlabel_ +
           "</text>\n";
    out += "<text x=\"16\" y=\"" + fmt((kTop + kHeight - kBottom) / 2.0) +
           "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 "
           "16 " + fmt((kTop + kHeight - kBottom) / 2.0) + ")\">" + ylabel_ +
           "</text>\n";

    out += body_;

    double legend_y = kTop + 10.0;
    for (const auto& [name, color] : legend_) {
      const double lx = kWidth - kRight + 12.0;
      out += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(legend_y) + "\" x2=\"" +
             fmt(lx + 22.0) + "\" y2=\"" + fmt(legend_y) + "\" stroke=\"" +
             color + "\" stroke-width=\"2\"/>\n";
      out += "<text x=\"" + fmt(lx + 28.0) + "\" y=\"" + fmt(legend_y + 4.0) +
             "\" font-size=\"11\">" + name + "</text>\n";
      legend_y += 18.0;
    }
    out += "</svg>\n";
    return out;
  }

 private:
  std::string title_, xlabel_, ylabel_;
  AxisRange xr_, yr_;
  std::string body_;
  std::vector<std::pair<std::string, std::string>> legend_;
};

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("emit_plots: cannot open '" + path.string() + "'");
  }
  out << text;
}

std::string instance_label(double mu0, double mu1) {
  return "mu0_" + fmt(mu0, "%g") + "_mu1_" + fmt(mu1, "%g");
}

std::string mse_chart(const std::vector<ResultRow>& rows) {
  double x_lo = rows.front().horizon, x_hi = rows.front().horizon;
  double y_lo = rows.front().normalized_mse, y_hi = y_lo;
  std::map<std::string, Series> by_algorithm;
  for (const ResultRow& row : rows) {
    Series& series = by_algorithm[row.algorithm];
    series.name = row.algorithm;
    const double band = 2.0 * row.normalized_mse_se;
    series.x.push_back(static_cast<double>(row.horizon));
    series.y.push_back(row.normalized_mse);
    series.band_lo.push_back(row.normalized_mse - band);
    series.band_hi.push_back(row.normalized_mse + band);
    x_lo = std::min(x_lo, static_cast<double>(row.horizon));
    x_hi = std::max(x_hi, static_cast<double>(row.horizon));
    y_lo = std::min(y_lo, row.normalized_mse - band);
    y_hi = std::max(y_hi, row.normalized_mse + band);
  }

  Chart chart("normalized MSE (T x MSE), mu0=" + fmt(rows.front().instance_mu0, "%g") +
                  ", mu1=" + fmt(rows.front().instance_mu1, "%g"),
              "T", "T x MSE", padded(x_lo, x_hi, 0.04), padded(y_lo, y_hi, 0.08));
  int color = 0;
  for (const auto& [name, series] : by_algorithm) {
    chart.add_series(series, kPalette[color % 6]);
    ++color;
  }
  return chart.render();
}

std::string loss_chart(double mu0, double mu1) {
  const TruthContext truth = TruthContext::from(bernoulli_env(mu0, mu1));
  const RewardModel true_means{mu0, mu1};
  const double pi_star = truth.neyman;
  const double eps = std::max(0.02, std::min(pi_star, 1.0 - pi_star) / 3.0);

  Series curve;
  curve.name = "loss";
  const int samples = 601;
  double y_hi = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double pi = 0.08 + (0.92 - 0.08) * i / (samples - 1);
    const double loss = neyman_loss(pi, true_means, truth);
    curve.x.push_back(pi);
    curve.y.push_back(loss);
    y_hi = std::max(y_hi, loss);
  }

  AxisRange y_range = padded(0.0, y_hi, 0.06);
  y_range.lo = 0.0;
  Chart chart("Neyman loss over the allocation, mu0=" + fmt(mu0, "%g") +
                  ", mu1=" + fmt(mu1, "%g"),
              "pi", "loss(pi)", padded(0.08, 0.92, 0.02), y_range);
  chart.add_series(curve, kPalette[0]);
  chart.add_vline({pi_star, "pi* = " + fmt(pi_star, "%.4g")}, "#333333");
  chart.add_vline({pi_star - eps, "pi* - eps"}, "#d62728");
  chart.add_vline({pi_star + eps, "pi* + eps"}, "#2ca02c");
  chart.add_hline(truth.vstar, "V* = " + fmt(truth.vstar, "%.4g"), "#777777");
  return chart.render();
}

}  // namespace

std::vector<std::string> emit_plots(const std::vector<ResultRow>& rows,
                                    const std::string& out_dir) {
  if (rows.empty()) {
    throw std::invalid_argument("emit_plots: no rows");
  }
  std::filesystem::create_directories(out_dir);

  // Group rows per instance, preserving the sorted row order.
  std::vector<std::pair<std::pair<double, double>, std::vector<ResultRow>>>
      instances;
  for (const ResultRow& row : rows) {
    const std::pair<double, double> key{row.instance_mu0, row.instance_mu1};
    if (instances.empty() || instances.back().first != key) {
      instances.push_back({key, {}});
    }
    instances.back().second.push_back(row);
  }

  std::vector<std::string> written;
  for (const auto& [key, group] : instances) {
    const std::string name = "mse_" + instance_label(key.first, key.second) + ".svg";
    write_file(std::filesystem::path(out_dir) / name, mse_chart(group));
    written.push_back(name);
  }

  // Loss curve for the most asymmetric instance (pi* farthest from 1/2).
  const auto* chosen = &instances.front();
  double best_gap = -1.0;
  for (const auto& entry : instances) {
    const double pi_star =
        bernoulli_env(entry.first.first, entry.first.second).neyman();
    const double gap = std::fabs(pi_star - 0.5);
    if (gap > best_gap) {
      best_gap = gap;
      chosen = &entry;
    }
  }
  const std::string loss_name = "neyman_loss.svg";
  write_file(std::filesystem::path(out_dir) / loss_name,
             loss_chart(chosen->first.first, chosen->first.second));
  written.push_back(loss_name);
  return written;
}

}  // namespace optrack
