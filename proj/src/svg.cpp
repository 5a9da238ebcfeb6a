#include "obsdrop/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace obsdrop {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string hex2(int v) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%02x", std::clamp(v, 0, 255));
  return buf;
}

std::string rgb(double r, double g, double b) {
  return "#" + hex2(static_cast<int>(std::lround(r * 255))) +
         hex2(static_cast<int>(std::lround(g * 255))) +
         hex2(static_cast<int>(std::lround(b * 255)));
}

}  // namespace

SvgDoc::SvgDoc(double width, double height) : width_(width), height_(height) {}

void SvgDoc::rect(double x, double y, double w, double h,
                  const std::string& fill, const std::string& stroke,
                  double stroke_width) {
  body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" +
           num(w) + "\" height=\"" + num(h) + "\" fill=\"" + fill + "\"";
  if (!stroke.empty())
    body_ += " stroke=\"" + stroke + "\" stroke-width=\"" +
             num(stroke_width) + "\"";
  body_ += "/>\n";
}

void SvgDoc::line(double x1, double y1, double x2, double y2,
                  const std::string& stroke, double width) {
  body_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" +
           num(x2) + "\" y2=\"" + num(y2) + "\" stroke=\"" + stroke +
           "\" stroke-width=\"" + num(width) + "\"/>\n";
}

void SvgDoc::circle(double cx, double cy, double r, const std::string& fill) {
  body_ += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" +
           num(r) + "\" fill=\"" + fill + "\"/>\n";
}

void SvgDoc::polyline(const std::vector<double>& xs,
                      const std::vector<double>& ys, const std::string& stroke,
                      double width) {
  body_ += "<polyline fill=\"none\" stroke=\"" + stroke +
           "\" stroke-width=\"" + num(width) + "\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) body_ += ' ';
    body_ += num(xs[i]) + "," + num(ys[i]);
  }
  body_ += "\"/>\n";
}

void SvgDoc::text(double x, double y, const std::string& s, double size,
                  const std::string& anchor) {
  body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) +
           "\" font-family=\"monospace\" font-size=\"" + num(size) +
           "\" text-anchor=\"" + anchor + "\">" + s + "</text>\n";
}

std::string SvgDoc::str() const {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://"
         "www.w3.org/2000/svg\" width=\"" +
         num(width_) + "\" height=\"" + num(height_) + "\" viewBox=\"0 0 " +
         num(width_) + " " + num(height_) + "\">\n" + body_ + "</svg>\n";
}

void SvgDoc::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << str();
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string correlation_color(double v) {
  // [-1, 1] mapped through a dark -> violet -> orange -> light ramp.
  const double t = std::clamp(0.5 * (v + 1.0), 0.0, 1.0);
  struct Stop {
    double t, r, g, b;
  };
  static const Stop stops[] = {{0.00, 0.05, 0.03, 0.20},
                               {0.35, 0.35, 0.10, 0.42},
                               {0.65, 0.90, 0.40, 0.12},
                               {0.85, 0.99, 0.75, 0.18},
                               {1.00, 0.99, 0.98, 0.85}};
  for (std::size_t i = 1; i < std::size(stops); ++i) {
    if (t <= stops[i].t) {
      const auto& lo = stops[i - 1];
      const auto& hi = stops[i];
      const double f = (t - lo.t) / (hi.t - lo.t);
      return rgb(lo.r + f * (hi.r - lo.r), lo.g + f * (hi.g - lo.g),
                 lo.b + f * (hi.b - lo.b));
    }
  }
  return rgb(0.99, 0.98, 0.85);
}

void render_heatmap(const std::vector<double>& values,
                    const std::vector<std::uint8_t>& flags, int window,
                    const std::string& title, const std::string& path) {
  const double cell = 40.0;
  const double margin = 30.0;
  const double side = window * cell;
  SvgDoc doc(side + 2 * margin, side + 2 * margin + 10);
  doc.text(margin, margin - 10, title, 13.0);
  for (int r = 0; r < window; ++r) {
    for (int c = 0; c < window; ++c) {
      const int j = r * window + c;
      const bool flagged = !flags.empty() && flags[j];
      const std::string fill =
          flagged ? "#707070" : correlation_color(values[j]);
      doc.rect(margin + c * cell, margin + r * cell, cell, cell, fill,
               "#202020", 0.5);
    }
  }
  doc.save(path);
}

void render_lineplot(const std::vector<PlotSeries>& series,
                     const std::string& x_label, const std::string& y_label,
                     const std::string& path) {
  const double w = 560, h = 400, ml = 70, mr = 30, mt = 30, mb = 50;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      const double lo = s.ys[i] - (i < s.yerr.size() ? s.yerr[i] : 0.0);
      const double hi = s.ys[i] + (i < s.yerr.size() ? s.yerr[i] : 0.0);
      if (first) {
        xmin = xmax = s.xs[i];
        ymin = lo;
        ymax = hi;
        first = false;
      }
      xmin = std::min(xmin, s.xs[i]);
      xmax = std::max(xmax, s.xs[i]);
      ymin = std::min(ymin, lo);
      ymax = std::max(ymax, hi);
    }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const auto px = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr);
  };
  const auto py = [&](double y) {
    return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb);
  };

  SvgDoc doc(w, h);
  doc.line(ml, h - mb, w - mr, h - mb, "#303030");
  doc.line(ml, mt, ml, h - mb, "#303030");
  for (int k = 0; k <= 4; ++k) {
    const double xv = xmin + k * (xmax - xmin) / 4;
    const double yv = ymin + k * (ymax - ymin) / 4;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", xv);
    doc.text(px(xv), h - mb + 18, buf, 10.0, "middle");
    doc.line(px(xv), h - mb, px(xv), h - mb + 4, "#303030");
    std::snprintf(buf, sizeof(buf), "%.3g", yv);
    doc.text(ml - 8, py(yv) + 4, buf, 10.0, "end");
    doc.line(ml - 4, py(yv), ml, py(yv), "#303030");
  }
  doc.text((ml + w - mr) / 2, h - 12, x_label, 12.0, "middle");
  doc.text(14, mt - 8, y_label, 12.0);

  double legend_y = mt + 6;
  for (const auto& s : series) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      xs.push_back(px(s.xs[i]));
      ys.push_back(py(s.ys[i]));
      if (i < s.yerr.size() && s.yerr[i] > 0) {
        doc.line(px(s.xs[i]), py(s.ys[i] - s.yerr[i]), px(s.xs[i]),
                 py(s.ys[i] + s.yerr[i]), s.color, 1.0);
        doc.line(px(s.xs[i]) - 3, py(s.ys[i] - s.yerr[i]), px(s.xs[i]) + 3,
                 py(s.ys[i] - s.yerr[i]), s.color, 1.0);
        doc.line(px(s.xs[i]) - 3, py(s.ys[i] + s.yerr[i]), px(s.xs[i]) + 3,
                 py(s.ys[i] + s.yerr[i]), s.color, 1.0);
      }
    }
    doc.polyline(xs, ys, s.color);
    for (std::size_t i = 0; i < xs.size(); ++i)
      doc.circle(xs[i], ys[i], 2.5, s.color);
    doc.line(w - mr - 120, legend_y, w - mr - 100, legend_y, s.color, 2.0);
    doc.text(w - mr - 94, legend_y + 4, s.label, 10.0);
    legend_y += 16;
  }
  doc.save(path);
}

void render_cartpole_strip(const std::vector<TraceStep>& trace,
                           const CartpoleParams& params, int frames,
                           const std::string& path) {
  frames = std::max(1, frames);
  const double fw = 140, fh = 110;
  SvgDoc doc(fw * frames, fh);
  const double scale = 0.45 * fw / params.x_limit;
  const double ground = fh - 25;

  for (int f = 0; f < frames; ++f) {
    const double ox = fw * f + fw / 2;
    doc.rect(fw * f, 0, fw, fh, "#ffffff", "#c0c0c0", 0.5);
    doc.line(fw * f + 5, ground, fw * (f + 1) - 5, ground, "#909090");
    if (trace.empty()) continue;
    const std::size_t idx =
        trace.size() <= 1 ? 0
                          : (trace.size() - 1) * static_cast<std::size_t>(f) /
                                std::max(1, frames - 1);
    const auto& step = trace[idx];
    // model_obs holds what the policy saw: [x, x_dot, cos, sin, theta_dot]
    const auto& o = step.peeked ? step.real_obs : step.model_obs;
    const double cx = ox + o[0] * scale;
    const double pole_len = 38.0;
    doc.rect(cx - 12, ground - 8, 24, 8, step.peeked ? "#404040" : "#b0b0c8");
    doc.line(cx, ground - 8, cx - o[3] * pole_len, ground - 8 - o[2] * pole_len,
             step.peeked ? "#c04000" : "#e0a080", 3.0);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "t=%zu", idx);
    doc.text(fw * f + 6, 14, buf, 9.0);
  }
  doc.save(path);
}

void render_grid_frame(const std::vector<double>& obs, int window,
                       const std::string& path) {
  const double cell = 28.0;
  SvgDoc doc(window * cell, window * cell);
  const int cells = window * window;
  for (int r = 0; r < window; ++r)
    for (int c = 0; c < window; ++c) {
      const bool apple = obs[r * window + c] != 0.0;
      const bool fire = obs[cells + r * window + c] != 0.0;
      std::string fill = "#f4f4f4";
      if (apple) fill = "#3aa35c";
      if (fire) fill = "#cc3b2f";
      doc.rect(c * cell, r * cell, cell, cell, fill, "#606060", 0.5);
    }
  const int mid = window / 2;
  doc.rect(mid * cell + 4, mid * cell + 4, cell - 8, cell - 8, "none",
           "#2255cc", 2.5);
  doc.save(path);
}

}  // namespace obsdrop
