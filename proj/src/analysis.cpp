#include "lp/analysis.hpp"

#include <cmath>

namespace lp {

InflationAnalysis inflation_analysis(const TraceRecord& trace, double s,
                                     double t_fit,
                                     std::span<const double> predictions) {
  const auto& rows = trace.rows;
  InflationAnalysis out;
  out.t_fit = t_fit;
  std::vector<double> ts;
  for (const TraceRow& r : rows)
    if (r.t <= t_fit * (1 + 1e-12)) ts.push_back(r.t);
  out.fit_samples = int(ts.size());
  if (ts.size() < 3)
    throw std::invalid_argument("need >= 3 early-time samples for the fit");

  const auto& ks = trace.config.tracked_k;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    std::vector<double> g;
    const double w = std::pow(2.0, ks[i] * s);
    for (std::size_t r = 0; r < ts.size(); ++r) {
      const double mag = std::hypot(std::abs(rows[r].uhat1[i]),
                                    std::abs(rows[r].uhat2[i]));
      g.push_back(w * mag);
    }
    InflationAnalysis::PerK pk;
    pk.k = ks[i];
    pk.g0 = g.front();
    pk.sigma = std::abs(ls_slope(ts, g));
    if (!predictions.empty()) {
      pk.prediction = predictions[i];
      pk.rel_err = pk.prediction > 0
                       ? std::abs(pk.sigma - pk.prediction) / pk.prediction
                       : 0.0;
    }
    out.per_k.push_back(pk);
  }
  for (std::size_t i = 0; i + 1 < out.per_k.size(); ++i)
    out.ratios.push_back(out.per_k[i + 1].sigma /
                         std::max(out.per_k[i].sigma, 1e-300));
  return out;
}

ContinuityReport continuity_report(const TraceRecord& trace) {
  ContinuityReport rep;
  double sxx = 0, sxy = 0;
  for (const DiffNormRow& d : trace.diffs) {
    const double x = std::abs(d.t2 - d.t1);
    if (x == 0) continue;
    sxx += x * x;
    sxy += x * d.f_s_one;
  }
  rep.lipschitz_rate = sxx > 0 ? sxy / sxx : 0.0;
  double num = 0, den = 0;
  for (const DiffNormRow& d : trace.diffs) {
    const double x = std::abs(d.t2 - d.t1);
    if (x == 0) continue;
    const double r = d.f_s_one - rep.lipschitz_rate * x;
    num += r * r;
    den += d.f_s_one * d.f_s_one;
  }
  rep.lipschitz_residual = den > 0 ? std::sqrt(num / den) : 0.0;

  for (const DiffNormRow& d : trace.diffs)
    if (d.t1 == 0 && d.t2 > 0) rep.dyadic.emplace_back(d.t2, d.f_s_half);
  std::sort(rep.dyadic.begin(), rep.dyadic.end());
  rep.monotone = rep.dyadic.size() >= 2;
  for (std::size_t i = 1; i < rep.dyadic.size(); ++i)
    if (rep.dyadic[i].second <= rep.dyadic[i - 1].second)
      rep.monotone = false;
  return rep;
}

JumpReport weak_jump_report(const TraceRecord& trace) {
  JumpReport rep;
  const auto& rows = trace.rows;
  for (std::size_t i = 1; i < rows.size(); ++i)
    rep.max_jump_fine = std::max(
        rep.max_jump_fine, std::abs(rows[i].weak_n - rows[i - 1].weak_n));
  for (std::size_t i = 2; i < rows.size(); i += 2)
    rep.max_jump_coarse = std::max(
        rep.max_jump_coarse, std::abs(rows[i].weak_n - rows[i - 2].weak_n));
  return rep;
}

}  // namespace lp
