#include "obsdrop/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "obsdrop/checkpoint.hpp"
#include "obsdrop/rng.hpp"

namespace obsdrop {

PearsonResult pearson(const std::vector<double>& xs,
                      const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("pearson: length mismatch");
  if (xs.size() < 2) throw std::invalid_argument("pearson: need >= 2 points");
  const std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return {0.0, true};
  return {sxy / std::sqrt(sxx * syy), false};
}

CorrelationMap direction_correlation(const GridWmRawFn& wm,
                                     const GridConfig& config, GridAction dir,
                                     int n, std::uint64_t seed) {
  const int w = config.window;
  const int cells = w * w;
  const int d = config.width;

  CorrelationMap map;
  map.direction = dir;
  map.window = w;
  map.samples = n;

  // preds/truths[plane*cells + cell][sample]
  std::vector<std::vector<double>> preds(2 * cells), truths(2 * cells);
  for (auto& v : preds) v.reserve(n);
  for (auto& v : truths) v.reserve(n);

  GridWorld env(config);
  std::vector<double> obs(config.obs_dim()), raw(config.obs_dim()),
      next(config.obs_dim());

  const int ai = static_cast<int>(dir);
  const int dr = ai == 0 ? -1 : ai == 1 ? 1 : 0;
  const int dc = ai == 2 ? -1 : ai == 3 ? 1 : 0;

  for (int i = 0; i < n; ++i) {
    // Resample until the move is not blocked by the boundary.
    for (int attempt = 0;; ++attempt) {
      env.reset(seed_chain(seed, i, attempt));
      const int nr = env.state().agent_row + dr;
      const int nc = env.state().agent_col + dc;
      if (nr >= 0 && nr < d && nc >= 0 && nc < d) break;
    }
    env.observe(obs.data());
    wm(obs.data(), dir, raw.data());
    env.step(dir);
    env.observe(next.data());
    for (int j = 0; j < 2 * cells; ++j) {
      preds[j].push_back(raw[j]);
      truths[j].push_back(next[j]);
    }
  }

  map.per_plane.resize(2 * cells);
  map.per_plane_flag.resize(2 * cells);
  for (int j = 0; j < 2 * cells; ++j) {
    const auto r = pearson(preds[j], truths[j]);
    map.per_plane[j] = r.value;
    map.per_plane_flag[j] = r.flagged ? 1 : 0;
  }

  map.combined.resize(cells);
  map.combined_flag.resize(cells);
  std::vector<double> px, tx;
  for (int c = 0; c < cells; ++c) {
    px.clear();
    tx.clear();
    for (int plane = 0; plane < 2; ++plane) {
      const int j = plane * cells + c;
      px.insert(px.end(), preds[j].begin(), preds[j].end());
      tx.insert(tx.end(), truths[j].begin(), truths[j].end());
    }
    const auto r = pearson(px, tx);
    map.combined[c] = r.value;
    map.combined_flag[c] = r.flagged ? 1 : 0;
  }
  return map;
}

std::vector<SweepAggregate> aggregate_sweep(const std::vector<SweepRow>& rows) {
  std::map<std::pair<double, std::string>, std::vector<double>> groups;
  for (const auto& row : rows) groups[{row.p, row.metric}].push_back(row.value);

  std::vector<SweepAggregate> out;
  for (const auto& [key, values] : groups) {
    SweepAggregate a;
    a.p = key.first;
    a.metric = key.second;
    a.n = static_cast<int>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    a.mean = sum / a.n;
    if (a.n >= 2) {
      double ss = 0.0;
      for (double v : values) ss += (v - a.mean) * (v - a.mean);
      a.stderr_mean = std::sqrt(ss / (a.n - 1) / a.n);
      a.stderr_available = true;
    }
    out.push_back(a);
  }
  return out;
}

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "p,run_id,metric,value\n";
  for (const auto& r : rows)
    out << format_double(r.p) << ',' << r.run_id << ',' << r.metric << ','
        << format_double(r.value) << '\n';
}

std::vector<SweepRow> read_sweep_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<SweepRow> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    SweepRow r;
    std::string p, value;
    if (!std::getline(ls, p, ',') || !std::getline(ls, r.run_id, ',') ||
        !std::getline(ls, r.metric, ',') || !std::getline(ls, value, ','))
      throw std::runtime_error("bad sweep row: " + line);
    r.p = std::stod(p);
    r.value = std::stod(value);
    rows.push_back(r);
  }
  return rows;
}

void write_aggregate_csv(const std::string& path,
                         const std::vector<SweepAggregate>& aggs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "p,metric,mean,stderr,n\n";
  for (const auto& a : aggs) {
    out << format_double(a.p) << ',' << a.metric << ','
        << format_double(a.mean) << ',';
    if (a.stderr_available) out << format_double(a.stderr_mean);
    out << ',' << a.n << '\n';
  }
}

void write_correlation_csv(const std::string& path, const CorrelationMap& map) {
  static const char* kNames[] = {"up", "down", "left", "right", "noop"};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "direction,plane,row,col,correlation,flagged,samples\n";
  const int w = map.window;
  const auto emit = [&](const char* plane, double v, bool flag, int r, int c) {
    out << kNames[static_cast<int>(map.direction)] << ',' << plane << ',' << r
        << ',' << c << ',' << format_double(v) << ',' << (flag ? 1 : 0) << ','
        << map.samples << '\n';
  };
  for (int r = 0; r < w; ++r)
    for (int c = 0; c < w; ++c)
      emit("combined", map.combined[r * w + c], map.combined_flag[r * w + c],
           r, c);
  for (int plane = 0; plane < 2; ++plane)
    for (int r = 0; r < w; ++r)
      for (int c = 0; c < w; ++c) {
        const int j = plane * w * w + r * w + c;
        emit(plane == 0 ? "apples" : "fires", map.per_plane[j],
             map.per_plane_flag[j], r, c);
      }
}

}  // namespace obsdrop
