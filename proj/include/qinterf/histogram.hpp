// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qinterf/csv.hpp"
#include "qinterf/errors.hpp"

namespace qinterf {

/// Fixed-width histogram on [lower, upper]. The upper edge belongs to the
/// last bin. Values outside the range are tallied separately and count
/// toward total(), so bin probabilities sum to the in-range fraction.
class Histogram {
 public:
  Histogram(double lower, double upper, std::size_t bins)
      : lower_(lower), upper_(upper), counts_(bins, 0) {
    if (bins == 0) throw InvalidArgument("histogram needs at least one bin");
    if (!(std::isfinite(lower) && std::isfinite(upper) && lower < upper))
      throw InvalidArgument("histogram range must be finite with lower < upper");
  }

  void add(double x) {
    if (std::isnan(x)) throw InvalidArgument("cannot histogram NaN");
    if (x < lower_) {
      ++underflow_;
    } else if (x > upper_) {
      ++overflow_;
    } else {
      ++counts_[bin_index(x)];
    }
  }

  void add(std::span<const double> xs) {
    for (double x : xs) add(x);
  }

  /// Bin holding x, for lower <= x <= upper.
  [[nodiscard]] std::size_t bin_index(double x) const {
    const auto b = static_cast<std::size_t>(std::floor((x - lower_) * static_cast<double>(bins()) /
                                                       (upper_ - lower_)));
    return b >= bins() ? bins() - 1 : b;
  }

  /// Element-wise sum with a histogram of identical binning.
  void merge(const Histogram& other) {
    if (!same_binning(other)) throw BinningMismatch("cannot merge histograms with different bins");
    for (std::size_t b = 0; b < counts_.size(); ++b) counts_[b] += other.counts_[b];
    underflow_ += other.underflow_;
    overflow_ += other.overflow_;
  }

  [[nodiscard]] bool same_binning(const Histogram& other) const {
    return lower_ == other.lower_ && upper_ == other.upper_ && bins() == other.bins();
  }

  [[nodiscard]] double lower() const noexcept { return lower_; }
  [[nodiscard]] double upper() const noexcept { return upper_; }
  [[nodiscard]] std::size_t bins() const noexcept { return counts_.size(); }
  [[nodiscard]] const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  [[nodiscard]] std::uint64_t underflow() const noexcept { return underflow_; }
  [[nodiscard]] std::uint64_t overflow() const noexcept { return overflow_; }
  [[nodiscard]] std::uint64_t total() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), underflow_ + overflow_);
  }

  [[nodiscard]] double edge(std::size_t b) const {
    if (b == bins()) return upper_;
    return lower_ + static_cast<double>(b) * (upper_ - lower_) / static_cast<double>(bins());
  }
  [[nodiscard]] double width() const { return (upper_ - lower_) / static_cast<double>(bins()); }

  /// count_b / total for every bin.
  [[nodiscard]] std::vector<double> probabilities() const {
    const auto t = total();
    if (t == 0) throw InsufficientData("histogram is empty");
    std::vector<double> p(bins());
    for (std::size_t b = 0; b < bins(); ++b)
      p[b] = static_cast<double>(counts_[b]) / static_cast<double>(t);
    return p;
  }

  /// Probability density per bin; integrates to the in-range fraction.
  [[nodiscard]] std::vector<double> density() const {
    auto p = probabilities();
    for (std::size_t b = 0; b < p.size(); ++b) p[b] /= (edge(b + 1) - edge(b));
    return p;
  }

  /// Rebuilds a histogram from raw tallies, e.g. one read from disk.
  static Histogram from_counts(double lower, double upper, std::vector<std::uint64_t> counts,
                               std::uint64_t underflow = 0, std::uint64_t overflow = 0) {
    Histogram h(lower, upper, counts.size());
    h.counts_ = std::move(counts);
    h.underflow_ = underflow;
    h.overflow_ = overflow;
    return h;
  }

 private:
  double lower_;
  double upper_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t underflow_ = 0;
  std::uint64_t overflow_ = 0;
};

/// CSV form: provenance comments, binning metadata comments, then
/// `bin_lower,bin_upper,count,density` rows.
inline void write_histogram_csv(std::ostream& os, const Histogram& h, const Provenance& prov = {}) {
  write_provenance(os, prov);
  write_provenance(os, {{"lower", format_double(h.lower())},
                        {"upper", format_double(h.upper())},
                        {"bins", std::to_string(h.bins())},
                        {"underflow", std::to_string(h.underflow())},
                        {"overflow", std::to_string(h.overflow())},
                        {"total", std::to_string(h.total())}});
  os << "bin_lower,bin_upper,count,density\n";
  const auto t = h.total();
  for (std::size_t b = 0; b < h.bins(); ++b) {
    const double lo = h.edge(b);
    const double hi = h.edge(b + 1);
    const double dens =
        t == 0 ? 0.0 : static_cast<double>(h.counts()[b]) / (static_cast<double>(t) * (hi - lo));
    os << format_double(lo) << ',' << format_double(hi) << ',' << h.counts()[b] << ','
       << format_double(dens) << '\n';
  }
}

inline Histogram read_histogram_csv(std::istream& in) {
  const CsvTable table = read_csv(in);
  if (table.rows.empty()) throw IoError("histogram file has no bins");
  std::vector<std::uint64_t> counts;
  double lower = 0.0;
  double upper = 0.0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    if (row.fields.size() < 3) throw ParseError("histogram row needs at least 3 fields", row.line);
    const double lo = parse_double(row.fields[0], row.line);
    const double hi = parse_double(row.fields[1], row.line);
    const double c = parse_double(row.fields[2], row.line);
    if (c < 0 || c != std::floor(c)) throw ParseError("count must be a non-negative integer", row.line);
    if (i == 0) lower = lo;
    upper = hi;
    counts.push_back(static_cast<std::uint64_t>(c));
  }
  // Prefer exact edges from metadata when present.
  if (const auto* v = table.meta("lower")) lower = parse_double(*v, 0);
  if (const auto* v = table.meta("upper")) upper = parse_double(*v, 0);
  std::uint64_t under = 0;
  std::uint64_t over = 0;
  if (const auto* v = table.meta("underflow")) under = std::stoull(*v);
  if (const auto* v = table.meta("overflow")) over = std::stoull(*v);
  return Histogram::from_counts(lower, upper, std::move(counts), under, over);
}

}  // namespace qinterf
