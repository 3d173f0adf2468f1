// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qinterf/circuit.hpp"
#include "qinterf/convergence.hpp"
#include "qinterf/errors.hpp"
#include "qinterf/haar.hpp"
#include "qinterf/histogram.hpp"
#include "qinterf/interference.hpp"
#include "qinterf/random_stream.hpp"
#include "qinterf/spectral.hpp"

namespace qinterf {

/// Runs fn(i) for i in [0, count) on up to `threads` workers, each taking a
/// contiguous block of indices. fn must only write state owned by index i.
/// The first exception thrown by any worker is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  const std::size_t workers = std::clamp<std::size_t>(threads == 0 ? 1 : threads, 1,
                                                      std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

enum class Ensemble { CUE, HOE, UCE, OCE };
enum class Observable { Interference, Spacings };

inline bool is_circuit(Ensemble e) { return e == Ensemble::UCE || e == Ensemble::OCE; }

inline CircuitKind circuit_kind(Ensemble e) {
  return e == Ensemble::UCE ? CircuitKind::UCE : CircuitKind::OCE;
}

/// Circular ensemble a circuit ensemble converges to.
inline CircularEnsemble limit_of(CircuitKind k) {
  return k == CircuitKind::UCE ? CircularEnsemble::CUE : CircularEnsemble::HOE;
}

inline const char* to_string(Ensemble e) {
  switch (e) {
    case Ensemble::CUE: return "cue";
    case Ensemble::HOE: return "hoe";
    case Ensemble::UCE: return "uce";
    case Ensemble::OCE: return "oce";
  }
  return "?";
}

// Substream tags: one per ensemble so that, e.g., the CUE reference of a
// convergence scan never shares random numbers with its circuits.
inline constexpr std::uint64_t stream_tag(Ensemble e) {
  return 0x7161000000000000ULL + static_cast<std::uint64_t>(e);
}

/// One ensemble configuration. For CUE/HOE `dim` is used; for UCE/OCE the
/// circuit fields are used and the dimension is 2^qubits.
struct SampleConfig {
  Ensemble ensemble = Ensemble::CUE;
  std::size_t dim = 0;
  std::size_t qubits = 0;
  std::size_t gates = 0;
  double p = 0.5;
  std::size_t realizations = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::size_t qubit_cap = kDefaultQubitCap;

  [[nodiscard]] std::size_t operator_dim() const {
    return is_circuit(ensemble) ? (std::size_t{1} << qubits) : dim;
  }

  [[nodiscard]] CircuitEnsembleConfig circuit_config() const {
    return {circuit_kind(ensemble), qubits, gates, p, realizations, seed};
  }

  void validate() const {
    if (is_circuit(ensemble)) {
      validate_config(circuit_config());
      if (qubits > qubit_cap)
        throw DimensionCapExceeded("qubit count " + std::to_string(qubits) + " exceeds cap " +
                                   std::to_string(qubit_cap));
    } else if (dim == 0) {
      throw InvalidArgument("dimension must be positive");
    }
  }
};

/// Stream for realization `index`. Keyed by (seed, ensemble, gate count or
/// dimension, index), never by worker.
inline RandomStream realization_stream(const SampleConfig& cfg, std::size_t index) {
  const std::uint64_t outer = is_circuit(cfg.ensemble) ? cfg.gates : cfg.dim;
  return RandomStream(cfg.seed, substream_id(stream_tag(cfg.ensemble), outer, index));
}

/// Draws realization `index` and passes the operator to `visit` as either a
/// UnitaryOperator or an OrthogonalOperator.
template <typename Visit>
auto with_realization(const SampleConfig& cfg, std::size_t index, Visit&& visit) {
  RandomStream stream = realization_stream(cfg, index);
  switch (cfg.ensemble) {
    case Ensemble::CUE:
      return visit(sample_cue(cfg.dim, stream));
    case Ensemble::HOE:
      return visit(sample_hoe(cfg.dim, stream));
    case Ensemble::UCE:
      return visit(realize_circuit(draw_circuit(cfg.circuit_config(), stream), cfg.qubit_cap));
    case Ensemble::OCE:
    default:
      return visit(realize_circuit_real(draw_circuit(cfg.circuit_config(), stream), cfg.qubit_cap));
  }
}

/// Interference of every realization, indexed by realization.
inline std::vector<double> sample_interference(const SampleConfig& cfg) {
  cfg.validate();
  std::vector<double> out(cfg.realizations);
  parallel_for(cfg.realizations, cfg.threads, [&](std::size_t i) {
    out[i] = with_realization(cfg, i, [](const auto& op) { return interference(op); });
  });
  return out;
}

namespace detail {
inline PhaseSpectrum phases_of(const UnitaryOperator& u) { return eigenphases(u); }
inline PhaseSpectrum phases_of(const OrthogonalOperator& o) { return eigenphases(o.to_unitary()); }
}  // namespace detail

/// Normalized spacings, N per realization, realization-major.
inline std::vector<double> sample_spacings(const SampleConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.operator_dim();
  if (n < 2) throw InvalidArgument("spacings need dimension at least 2");
  std::vector<double> out(cfg.realizations * n);
  parallel_for(cfg.realizations, cfg.threads, [&](std::size_t i) {
    const SpacingSample s =
        with_realization(cfg, i, [](const auto& op) { return spacings(detail::phases_of(op)); });
    std::copy(s.spacings.begin(), s.spacings.end(), out.begin() + static_cast<std::ptrdiff_t>(i * n));
  });
  return out;
}

inline Histogram interference_histogram(std::size_t dim, std::size_t bins) {
  if (dim < 2) throw InvalidArgument("interference histogram needs N >= 2");
  return Histogram(0.0, static_cast<double>(dim - 1), bins);
}

/// Interference histogram of a circular ensemble on [0, N - 1].
inline Histogram reference_histogram(CircularEnsemble e, std::size_t dim, std::size_t bins,
                                     std::size_t realizations, std::uint64_t seed,
                                     unsigned threads) {
  SampleConfig cfg;
  cfg.ensemble = e == CircularEnsemble::CUE ? Ensemble::CUE : Ensemble::HOE;
  cfg.dim = dim;
  cfg.realizations = realizations;
  cfg.seed = seed;
  cfg.threads = threads;
  Histogram h = interference_histogram(dim, bins);
  h.add(sample_interference(cfg));
  return h;
}

struct ConvergeConfig {
  CircuitKind kind = CircuitKind::UCE;
  std::size_t qubits = 4;
  std::vector<std::size_t> gate_list;
  double p = 0.5;
  std::size_t realizations = 1000;
  std::uint64_t seed = 0;
  std::size_t bins = kDefaultBins;
  Observable observable = Observable::Spacings;
  unsigned threads = 1;
  std::size_t qubit_cap = kDefaultQubitCap;

  [[nodiscard]] SampleConfig sample_config(std::size_t gates) const {
    SampleConfig s;
    s.ensemble = kind == CircuitKind::UCE ? Ensemble::UCE : Ensemble::OCE;
    s.qubits = qubits;
    s.gates = gates;
    s.p = p;
    s.realizations = realizations;
    s.seed = seed;
    s.threads = threads;
    s.qubit_cap = qubit_cap;
    return s;
  }
};

/// F_s or F_I for every gate count in cfg.gate_list. Interference mode
/// requires `reference` (binned on [0, N - 1] with cfg.bins bins).
inline DistanceCurve distance_curve(const ConvergeConfig& cfg,
                                    const Histogram* reference = nullptr) {
  if (cfg.gate_list.empty()) throw InvalidArgument("gate list is empty");
  const std::size_t dim = std::size_t{1} << cfg.qubits;
  if (cfg.observable == Observable::Interference) {
    if (!reference) throw InvalidArgument("interference mode needs a reference histogram");
    if (!reference->same_binning(interference_histogram(dim, cfg.bins)))
      throw BinningMismatch("reference histogram binning does not match [0, N-1] with " +
                            std::to_string(cfg.bins) + " bins");
  }
  DistanceCurve curve;
  for (const std::size_t gates : cfg.gate_list) {
    const SampleConfig s = cfg.sample_config(gates);
    DistanceEstimate est;
    if (cfg.observable == Observable::Spacings) {
      est = spacing_distance_estimate(sample_spacings(s), cfg.bins);
    } else {
      Histogram h = interference_histogram(dim, cfg.bins);
      h.add(sample_interference(s));
      est = interference_distance_estimate(h, *reference);
    }
    curve.points.push_back({gates, est.value, est.std_error});
  }
  curve.validate();
  return curve;
}

/// Applies the fit protocol matching the observable: exponential in n_g
/// for spacings, Gaussian in n_g for interference. Empty when the window
/// holds fewer than two points.
inline std::optional<RateFit> fit_curve(const DistanceCurve& curve, Observable obs) {
  try {
    return obs == Observable::Spacings ? fit_exponential_rate(curve) : fit_gaussian_rate(curve);
  } catch (const InsufficientData&) {
    return std::nullopt;
  }
}

}  // namespace qinterf
