#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "obsdrop/analysis.hpp"
#include "obsdrop/cartpole.hpp"
#include "obsdrop/dropout.hpp"

namespace obsdrop {

// Minimal deterministic SVG emitter: identical inputs produce byte-identical
// files (fixed-precision coordinates, no timestamps).
class SvgDoc {
 public:
  SvgDoc(double width, double height);
  void rect(double x, double y, double w, double h, const std::string& fill,
            const std::string& stroke = "", double stroke_width = 1.0);
  void line(double x1, double y1, double x2, double y2,
            const std::string& stroke, double width = 1.0);
  void circle(double cx, double cy, double r, const std::string& fill);
  void polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                const std::string& stroke, double width = 1.5);
  void text(double x, double y, const std::string& s, double size = 12.0,
            const std::string& anchor = "start");
  void save(const std::string& path) const;
  std::string str() const;

 private:
  double width_, height_;
  std::string body_;
};

// Correlation color scale: dark at -1, bright yellow-white at +1; flagged
// cells render gray.
std::string correlation_color(double v);

void render_heatmap(const std::vector<double>& values,
                    const std::vector<std::uint8_t>& flags, int window,
                    const std::string& title, const std::string& path);

struct PlotSeries {
  std::string label;
  std::string color;
  std::vector<double> xs, ys, yerr;  // yerr optional (empty = no bars)
};

void render_lineplot(const std::vector<PlotSeries>& series,
                     const std::string& x_label, const std::string& y_label,
                     const std::string& path);

// Frame strip of a cart-pole trace (cart rectangle + pole line), sampled at
// a fixed stride.
void render_cartpole_strip(const std::vector<TraceStep>& trace,
                           const CartpoleParams& params, int frames,
                           const std::string& path);

// One grid frame: apples green, fires red, agent blue outline at center ring.
void render_grid_frame(const std::vector<double>& obs, int window,
                       const std::string& path);

}  // namespace obsdrop
