// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qinterf/csv.hpp"
#include "qinterf/errors.hpp"
#include "qinterf/histogram.hpp"
#include "qinterf/spectral.hpp"

namespace qinterf {

/// Squared Hellinger-type distance 2 (1 - sum_b sqrt(p_b q_b)) between two
/// binned probability vectors. Either vector may carry total mass below
/// one (out-of-range mass); the result stays in [0, 2].
inline double hellinger_sq(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size() || p.empty()) throw BinningMismatch("probability vectors differ in length");
  double affinity = 0.0;
  for (std::size_t b = 0; b < p.size(); ++b) {
    if (p[b] < 0.0 || q[b] < 0.0) throw InvalidArgument("negative bin probability");
    affinity += std::sqrt(p[b] * q[b]);
  }
  return std::clamp(2.0 * (1.0 - affinity), 0.0, 2.0);
}

inline double hellinger_sq(const Histogram& p, const Histogram& q) {
  if (!p.same_binning(q)) throw BinningMismatch("histograms have different binning");
  const auto pp = p.probabilities();
  const auto qq = q.probabilities();
  return hellinger_sq(pp, qq);
}

/// Exact per-bin masses of a distribution with the given CDF.
inline std::vector<double> bin_probabilities_from_cdf(const Histogram& binning,
                                                      const std::function<double(double)>& cdf) {
  std::vector<double> q(binning.bins());
  double prev = cdf(binning.edge(0));
  for (std::size_t b = 0; b < q.size(); ++b) {
    const double next = cdf(binning.edge(b + 1));
    q[b] = std::max(0.0, next - prev);
    prev = next;
  }
  return q;
}

/// Distance between a histogram and an analytic law given by its CDF.
inline double hellinger_sq(const Histogram& p, const std::function<double(double)>& cdf) {
  const auto pp = p.probabilities();
  const auto qq = bin_probabilities_from_cdf(p, cdf);
  return hellinger_sq(pp, qq);
}

/// First-order (delta-method) standard error of hellinger_sq when p was
/// estimated from n_p multinomial draws and q from n_q draws. Pass
/// n_q = 0 for an exact reference.
inline double hellinger_stderr(std::span<const double> p, std::span<const double> q,
                               std::uint64_t n_p, std::uint64_t n_q = 0) {
  if (p.size() != q.size()) throw BinningMismatch("probability vectors differ in length");
  double affinity = 0.0;
  double q_on_p_support = 0.0;
  double p_on_q_support = 0.0;
  for (std::size_t b = 0; b < p.size(); ++b) {
    affinity += std::sqrt(p[b] * q[b]);
    if (p[b] > 0.0) q_on_p_support += q[b];
    if (q[b] > 0.0) p_on_q_support += p[b];
  }
  double var = 0.0;
  if (n_p > 0) var += std::max(0.0, q_on_p_support - affinity * affinity) / static_cast<double>(n_p);
  if (n_q > 0) var += std::max(0.0, p_on_q_support - affinity * affinity) / static_cast<double>(n_q);
  return std::sqrt(var);
}

inline constexpr std::size_t kDefaultBins = 100;
inline constexpr double kSpacingUpper = 5.0;
inline constexpr std::size_t kMinSpacingValues = 1000;

struct DistanceEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

inline Histogram spacing_histogram(std::span<const double> spacings, std::size_t bins = kDefaultBins) {
  Histogram h(0.0, kSpacingUpper, bins);
  h.add(spacings);
  return h;
}

/// F_s: distance of pooled spacings from the Wigner surmise, binned on
/// [0, 5]. Surmise mass beyond 5 stays outside the bin sum.
inline DistanceEstimate spacing_distance_estimate(std::span<const double> spacings,
                                                  std::size_t bins = kDefaultBins) {
  if (spacings.size() < kMinSpacingValues)
    throw InsufficientData("spacing_distance needs at least " + std::to_string(kMinSpacingValues) +
                           " spacing values");
  const Histogram h = spacing_histogram(spacings, bins);
  const auto p = h.probabilities();
  const auto q = bin_probabilities_from_cdf(h, [](double s) { return wigner_cdf(s); });
  return {hellinger_sq(p, q), hellinger_stderr(p, q, h.total())};
}

inline double spacing_distance(std::span<const double> spacings, std::size_t bins = kDefaultBins) {
  return spacing_distance_estimate(spacings, bins).value;
}

inline double spacing_distance(std::span<const SpacingSample> samples, std::size_t bins = kDefaultBins) {
  std::vector<double> pooled;
  for (const auto& s : samples) pooled.insert(pooled.end(), s.spacings.begin(), s.spacings.end());
  return spacing_distance(pooled, bins);
}

/// F_I between a circuit-ensemble histogram and a circular-ensemble
/// reference histogram of identical binning.
inline DistanceEstimate interference_distance_estimate(const Histogram& circuit,
                                                       const Histogram& reference) {
  if (!circuit.same_binning(reference)) throw BinningMismatch("histograms have different binning");
  const auto p = circuit.probabilities();
  const auto q = reference.probabilities();
  return {hellinger_sq(p, q), hellinger_stderr(p, q, circuit.total(), reference.total())};
}

inline double interference_distance(const Histogram& circuit, const Histogram& reference) {
  return interference_distance_estimate(circuit, reference).value;
}

// ---------------------------------------------------------------------------
// Distance curves and rate fits

struct DistancePoint {
  std::uint64_t gates = 0;
  double distance = 0.0;
  double std_error = 0.0;
};

struct DistanceCurve {
  std::vector<DistancePoint> points;
  Provenance metadata;

  void validate() const {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (i > 0 && points[i].gates <= points[i - 1].gates)
        throw InvalidArgument("distance curve gate counts must be strictly increasing");
      if (!(points[i].distance >= 0.0 && points[i].distance <= 2.0))
        throw InvalidArgument("distance values must lie in [0, 2]");
    }
  }
};

enum class FitKind { Exponential, Gaussian };

inline const char* to_string(FitKind k) {
  return k == FitKind::Exponential ? "exponential" : "gaussian";
}

/// ln F = intercept - rate * x with x = n_g (exponential) or n_g^2
/// (Gaussian), fitted over the points with F_low <= F <= F_high.
struct RateFit {
  FitKind kind = FitKind::Exponential;
  double rate = 0.0;
  double intercept = 0.0;
  double rate_stderr = 0.0;
  double residual = 0.0;  // RMS of ln F residuals
  std::size_t points_used = 0;
  double f_high = 2.0;
  double f_low = 0.0;
};

inline constexpr double kExponentialWindowLow = 0.1;
inline constexpr double kGaussianWindowLow = 0.01;
inline constexpr double kWindowHigh = 2.0;

namespace detail {

inline RateFit fit_log_linear(const DistanceCurve& curve, FitKind kind, double f_high, double f_low) {
  curve.validate();
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& pt : curve.points) {
    if (pt.distance < f_low || pt.distance > f_high || pt.distance <= 0.0) continue;
    const double g = static_cast<double>(pt.gates);
    xs.push_back(kind == FitKind::Exponential ? g : g * g);
    ys.push_back(std::log(pt.distance));
  }
  const std::size_t m = xs.size();
  if (m < 2) throw InsufficientData("rate fit needs at least two points inside the window");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw InsufficientData("rate fit needs distinct gate counts");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    ssr += r * r;
  }

  RateFit fit;
  fit.kind = kind;
  fit.rate = -slope;
  fit.intercept = intercept;
  fit.residual = std::sqrt(ssr / static_cast<double>(m));
  fit.rate_stderr = m > 2 ? std::sqrt(ssr / static_cast<double>(m - 2) / sxx) : 0.0;
  fit.points_used = m;
  fit.f_high = f_high;
  fit.f_low = f_low;
  return fit;
}

}  // namespace detail

/// b in F ~ exp(-b n_g), from points with 0.1 <= F <= 2.
inline RateFit fit_exponential_rate(const DistanceCurve& curve) {
  return detail::fit_log_linear(curve, FitKind::Exponential, kWindowHigh, kExponentialWindowLow);
}

/// (a, c) in ln F = a - c n_g^2, from points with 0.01 <= F <= 2.
inline RateFit fit_gaussian_rate(const DistanceCurve& curve) {
  return detail::fit_log_linear(curve, FitKind::Gaussian, kWindowHigh, kGaussianWindowLow);
}

inline void write_curve_csv(std::ostream& os, const DistanceCurve& curve) {
  write_provenance(os, curve.metadata);
  os << "n_g,F,stderr\n";
  for (const auto& pt : curve.points)
    os << pt.gates << ',' << format_double(pt.distance) << ',' << format_double(pt.std_error) << '\n';
}

inline DistanceCurve read_curve_csv(std::istream& in) {
  const CsvTable t = read_csv(in);
  DistanceCurve curve;
  for (const auto& [k, v] : t.provenance) curve.metadata.emplace_back(k, v);
  for (const auto& row : t.rows) {
    if (row.fields.size() < 2) throw ParseError("curve row needs n_g and F", row.line);
    const double g = parse_double(row.fields[0], row.line);
    if (g < 0 || g != std::floor(g)) throw ParseError("n_g must be a non-negative integer", row.line);
    DistancePoint pt;
    pt.gates = static_cast<std::uint64_t>(g);
    pt.distance = parse_double(row.fields[1], row.line);
    if (row.fields.size() > 2) pt.std_error = parse_double(row.fields[2], row.line);
    curve.points.push_back(pt);
  }
  curve.validate();
  return curve;
}

/// RateFit CSV row. param1 is the rate (b or c), param2 the intercept
/// (ln amplitude or a).
inline void write_fit_csv(std::ostream& os, const RateFit* fit, FitKind kind, double f_high,
                          double f_low, const Provenance& prov = {}) {
  write_provenance(os, prov);
  if (fit) {
    write_provenance(os, {{"fit_status", "ok"}, {"rate_stderr", format_double(fit->rate_stderr)}});
  } else {
    write_provenance(os, {{"fit_status", "insufficient_points"}});
  }
  os << "kind,param1,param2,residual,points_used,F_high,F_low\n";
  if (fit) {
    os << to_string(fit->kind) << ',' << format_double(fit->rate) << ','
       << format_double(fit->intercept) << ',' << format_double(fit->residual) << ','
       << fit->points_used << ',' << format_double(fit->f_high) << ','
       << format_double(fit->f_low) << '\n';
  } else {
    os << to_string(kind) << ",nan,nan,nan,0," << format_double(f_high) << ','
       << format_double(f_low) << '\n';
  }
}

}  // namespace qinterf
