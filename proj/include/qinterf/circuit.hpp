// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "qinterf/errors.hpp"
#include "qinterf/haar.hpp"
#include "qinterf/operators.hpp"
#include "qinterf/random_stream.hpp"

namespace qinterf {

using Qubit = std::size_t;

struct SingleQubitUnitary {
  Qubit target = 0;
  U2Params params;
  friend bool operator==(const SingleQubitUnitary&, const SingleQubitUnitary&) = default;
};

struct Hadamard {
  Qubit target = 0;
  friend bool operator==(const Hadamard&, const Hadamard&) = default;
};

struct Cnot {
  Qubit control = 0;
  Qubit target = 0;
  friend bool operator==(const Cnot&, const Cnot&) = default;
};

struct Toffoli {
  Qubit control1 = 0;
  Qubit control2 = 0;
  Qubit target = 0;
  friend bool operator==(const Toffoli&, const Toffoli&) = default;
};

using GateSpec = std::variant<SingleQubitUnitary, Hadamard, Cnot, Toffoli>;

/// A random algorithm: an ordered gate list on `qubits` qubits. Gate 0 acts
/// first.
struct CircuitSpec {
  std::size_t qubits = 0;
  std::vector<GateSpec> gates;
  friend bool operator==(const CircuitSpec&, const CircuitSpec&) = default;
};

enum class CircuitKind { UCE, OCE };

struct CircuitEnsembleConfig {
  CircuitKind kind = CircuitKind::UCE;
  std::size_t qubits = 0;
  std::size_t gates = 0;
  double p = 0.5;
  std::size_t realizations = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kDefaultQubitCap = 12;

inline bool is_single_qubit(const GateSpec& g) {
  return std::holds_alternative<SingleQubitUnitary>(g) || std::holds_alternative<Hadamard>(g);
}

/// True when every gate has a real matrix (Hadamard, CNOT, Toffoli).
inline bool is_real_circuit(const CircuitSpec& c) {
  for (const auto& g : c.gates)
    if (std::holds_alternative<SingleQubitUnitary>(g)) return false;
  return true;
}

inline void validate_gate(const GateSpec& gate, std::size_t qubits) {
  auto in_range = [qubits](Qubit q) {
    if (q >= qubits)
      throw InvalidArgument("gate qubit index " + std::to_string(q) +
                            " out of range for " + std::to_string(qubits) + " qubits");
  };
  std::visit(
      [&](const auto& g) {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, SingleQubitUnitary> || std::is_same_v<G, Hadamard>) {
          in_range(g.target);
        } else if constexpr (std::is_same_v<G, Cnot>) {
          in_range(g.control);
          in_range(g.target);
          if (g.control == g.target) throw InvalidArgument("CNOT control equals target");
        } else {
          in_range(g.control1);
          in_range(g.control2);
          in_range(g.target);
          if (g.control1 == g.control2 || g.control1 == g.target || g.control2 == g.target)
            throw InvalidArgument("Toffoli qubit indices must be pairwise distinct");
        }
      },
      gate);
}

inline void validate_circuit(const CircuitSpec& c) {
  if (c.qubits == 0 || c.qubits > 62) throw InvalidArgument("circuit qubit count out of range");
  for (const auto& g : c.gates) validate_gate(g, c.qubits);
}

inline void validate_config(const CircuitEnsembleConfig& cfg) {
  if (cfg.kind == CircuitKind::UCE && cfg.qubits < 2)
    throw InvalidArgument("UCE requires at least 2 qubits");
  if (cfg.kind == CircuitKind::OCE && cfg.qubits < 3)
    throw InvalidArgument("OCE requires at least 3 qubits");
  if (cfg.qubits > 62) throw InvalidArgument("qubit count too large");
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0))
    throw InvalidArgument("single-qubit gate probability must lie in [0, 1]");
}

/// Draw one random algorithm. For every gate: with probability p a
/// single-qubit gate on a uniform qubit (random U(2) for UCE, Hadamard for
/// OCE), otherwise a CNOT (UCE) or Toffoli (OCE) on uniformly chosen
/// distinct qubits.
inline CircuitSpec draw_circuit(const CircuitEnsembleConfig& cfg, RandomStream& stream) {
  validate_config(cfg);
  const std::uint64_t n = cfg.qubits;
  CircuitSpec c{cfg.qubits, {}};
  c.gates.reserve(cfg.gates);
  for (std::size_t i = 0; i < cfg.gates; ++i) {
    const bool single = stream.uniform() < cfg.p;
    if (single) {
      const Qubit q = stream.below(n);
      if (cfg.kind == CircuitKind::UCE)
        c.gates.emplace_back(SingleQubitUnitary{q, sample_u2_params(stream)});
      else
        c.gates.emplace_back(Hadamard{q});
    } else if (cfg.kind == CircuitKind::UCE) {
      const Qubit control = stream.below(n);
      Qubit target = stream.below(n - 1);
      if (target >= control) ++target;
      c.gates.emplace_back(Cnot{control, target});
    } else {
      // Partial Fisher-Yates over the qubit labels.
      std::vector<Qubit> labels(n);
      for (std::size_t k = 0; k < n; ++k) labels[k] = k;
      for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t j = k + stream.below(n - k);
        std::swap(labels[k], labels[j]);
      }
      c.gates.emplace_back(Toffoli{labels[0], labels[1], labels[2]});
    }
  }
  return c;
}

namespace detail {

inline std::size_t qubits_for_dim(Eigen::Index dim) {
  std::size_t n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim)
    throw InvalidArgument("accumulator dimension is not a power of two");
  return n;
}

// Qubit 0 is the most significant bit of the basis-state index.
inline std::size_t bit_mask(Qubit q, std::size_t qubits) {
  return std::size_t{1} << (qubits - 1 - q);
}

template <typename Matrix>
void swap_rows_where(Matrix& m, std::size_t control_mask, std::size_t target_mask) {
  const auto dim = static_cast<std::size_t>(m.rows());
  for (std::size_t r = 0; r < dim; ++r) {
    if ((r & control_mask) == control_mask && (r & target_mask) == 0)
      m.row(static_cast<Eigen::Index>(r)).swap(m.row(static_cast<Eigen::Index>(r | target_mask)));
  }
}

template <typename Matrix, typename Scalar>
void combine_rows(Matrix& m, std::size_t mask, Scalar g00, Scalar g01, Scalar g10, Scalar g11) {
  const auto dim = static_cast<std::size_t>(m.rows());
  const auto cols = m.cols();
  for (std::size_t r = 0; r < dim; ++r) {
    if (r & mask) continue;
    auto* a = m.row(static_cast<Eigen::Index>(r)).data();
    auto* b = m.row(static_cast<Eigen::Index>(r | mask)).data();
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto x = a[c];
      const auto y = b[c];
      a[c] = g00 * x + g01 * y;
      b[c] = g10 * x + g11 * y;
    }
  }
}

// Unnormalized Hadamard: rows (x, y) -> (x + y, x - y). Exact on the
// dyadic-rational entries produced by Hadamard/Toffoli circuits.
template <typename Matrix>
void butterfly_rows(Matrix& m, std::size_t mask) {
  const auto dim = static_cast<std::size_t>(m.rows());
  const auto cols = m.cols();
  for (std::size_t r = 0; r < dim; ++r) {
    if (r & mask) continue;
    auto* a = m.row(static_cast<Eigen::Index>(r)).data();
    auto* b = m.row(static_cast<Eigen::Index>(r | mask)).data();
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto x = a[c];
      const auto y = b[c];
      a[c] = x + y;
      b[c] = x - y;
    }
  }
}

template <typename Matrix>
void apply_permutation_gate(Matrix& m, const GateSpec& gate, std::size_t qubits) {
  if (const auto* g = std::get_if<Cnot>(&gate)) {
    swap_rows_where(m, bit_mask(g->control, qubits), bit_mask(g->target, qubits));
  } else if (const auto* t = std::get_if<Toffoli>(&gate)) {
    swap_rows_where(m, bit_mask(t->control1, qubits) | bit_mask(t->control2, qubits),
                    bit_mask(t->target, qubits));
  }
}

template <typename Matrix>
void apply_u2(Matrix& m, const SingleQubitUnitary& g, std::size_t qubits) {
  if constexpr (std::is_same_v<typename Matrix::Scalar, double>) {
    throw InvalidArgument("random U(2) gate cannot act on a real accumulator");
  } else {
    const ComplexMatrix u = u2_matrix(g.params);
    combine_rows(m, bit_mask(g.target, qubits), u(0, 0), u(0, 1), u(1, 0), u(1, 1));
  }
}

}  // namespace detail

/// accumulator <- G * accumulator for the full-space embedding G of `gate`,
/// without materializing G. Works on ComplexMatrix and, for real gates, on
/// RealMatrix.
template <typename Matrix>
void apply_gate_in_place(Matrix& accumulator, const GateSpec& gate) {
  const std::size_t qubits = detail::qubits_for_dim(accumulator.rows());
  if (accumulator.cols() != accumulator.rows())
    throw InvalidArgument("accumulator must be square");
  validate_gate(gate, qubits);
  if (const auto* u = std::get_if<SingleQubitUnitary>(&gate)) {
    detail::apply_u2(accumulator, *u, qubits);
  } else if (const auto* h = std::get_if<Hadamard>(&gate)) {
    const double s = std::numbers::sqrt2 / 2.0;
    using Scalar = typename Matrix::Scalar;
    detail::combine_rows(accumulator, detail::bit_mask(h->target, qubits), Scalar(s), Scalar(s),
                         Scalar(s), Scalar(-s));
  } else {
    detail::apply_permutation_gate(accumulator, gate, qubits);
  }
}

/// Builds the product G_last ... G_1 of a circuit.
///
/// Hadamards are applied unnormalized and their 1/sqrt(2) factors are
/// folded into exact halvings, with at most one multiplication by 1/sqrt(2)
/// at the end. Hadamard/Toffoli circuits therefore carry no rounding beyond
/// that single factor, and the real and complex accumulators produce
/// bit-identical real parts.
template <typename Matrix>
class GateAccumulator {
 public:
  using Scalar = typename Matrix::Scalar;

  explicit GateAccumulator(std::size_t qubits)
      : qubits_(qubits), m_(Matrix::Identity(dim(qubits), dim(qubits))) {}

  void apply(const GateSpec& gate) {
    validate_gate(gate, qubits_);
    if (const auto* u = std::get_if<SingleQubitUnitary>(&gate)) {
      detail::apply_u2(m_, *u, qubits_);
    } else if (const auto* h = std::get_if<Hadamard>(&gate)) {
      detail::butterfly_rows(m_, detail::bit_mask(h->target, qubits_));
      if (++pending_hadamards_ == 2) {
        m_ *= 0.5;
        pending_hadamards_ = 0;
      }
    } else {
      detail::apply_permutation_gate(m_, gate, qubits_);
    }
  }

  Matrix finish() && {
    if (pending_hadamards_ == 1) m_ *= std::numbers::sqrt2 / 2.0;
    pending_hadamards_ = 0;
    return std::move(m_);
  }

 private:
  static Eigen::Index dim(std::size_t qubits) { return Eigen::Index{1} << qubits; }

  std::size_t qubits_;
  Matrix m_;
  int pending_hadamards_ = 0;
};

namespace detail {

inline void check_cap(const CircuitSpec& c, std::size_t cap) {
  validate_circuit(c);
  if (c.qubits > cap)
    throw DimensionCapExceeded("circuit has " + std::to_string(c.qubits) +
                               " qubits, above the cap of " + std::to_string(cap));
}

}  // namespace detail

/// Full 2^n x 2^n operator of a circuit.
inline UnitaryOperator realize_circuit(const CircuitSpec& c, std::size_t cap = kDefaultQubitCap) {
  detail::check_cap(c, cap);
  GateAccumulator<ComplexMatrix> acc(c.qubits);
  for (const auto& g : c.gates) acc.apply(g);
  return UnitaryOperator(std::move(acc).finish());
}

/// Real-arithmetic realization of a circuit without U(2) gates.
inline OrthogonalOperator realize_circuit_real(const CircuitSpec& c,
                                               std::size_t cap = kDefaultQubitCap) {
  detail::check_cap(c, cap);
  if (!is_real_circuit(c)) throw InvalidArgument("circuit contains complex U(2) gates");
  GateAccumulator<RealMatrix> acc(c.qubits);
  for (const auto& g : c.gates) acc.apply(g);
  return OrthogonalOperator(std::move(acc).finish());
}

// ---------------------------------------------------------------------------
// Plain-text serialization: one gate per line,
//   H q | U2 q alpha psi chi phi | CNOT c t | TOFF c1 c2 t
// preceded by a "# qubits=n" line.

inline std::string format_gate(const GateSpec& gate) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  std::visit(
      [&](const auto& g) {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, SingleQubitUnitary>)
          os << "U2 " << g.target << ' ' << g.params.alpha << ' ' << g.params.psi << ' '
             << g.params.chi << ' ' << g.params.phi;
        else if constexpr (std::is_same_v<G, Hadamard>)
          os << "H " << g.target;
        else if constexpr (std::is_same_v<G, Cnot>)
          os << "CNOT " << g.control << ' ' << g.target;
        else
          os << "TOFF " << g.control1 << ' ' << g.control2 << ' ' << g.target;
      },
      gate);
  return os.str();
}

inline std::string format_circuit(const CircuitSpec& c) {
  std::string out = "# qubits=" + std::to_string(c.qubits) + "\n";
  for (const auto& g : c.gates) out += format_gate(g) + "\n";
  return out;
}

inline CircuitSpec parse_circuit(std::string_view text) {
  CircuitSpec c;
  bool have_qubits = false;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.front() == '#') {
      const auto pos = line.find("qubits=");
      if (pos != std::string::npos) {
        try {
          c.qubits = std::stoul(line.substr(pos + 7));
        } catch (const std::exception&) {
          throw ParseError("bad qubits header", line_no);
        }
        have_qubits = true;
      }
      continue;
    }
    std::istringstream ls(line);
    std::string op;
    ls >> op;
    GateSpec gate;
    if (op == "H") {
      Hadamard h;
      ls >> h.target;
      gate = h;
    } else if (op == "U2") {
      SingleQubitUnitary u;
      ls >> u.target >> u.params.alpha >> u.params.psi >> u.params.chi >> u.params.phi;
      gate = u;
    } else if (op == "CNOT") {
      Cnot g;
      ls >> g.control >> g.target;
      gate = g;
    } else if (op == "TOFF") {
      Toffoli g;
      ls >> g.control1 >> g.control2 >> g.target;
      gate = g;
    } else {
      throw ParseError("unknown gate '" + op + "'", line_no);
    }
    std::string rest;
    if (ls.fail() || (ls >> rest)) throw ParseError("malformed gate operands", line_no);
    c.gates.push_back(gate);
  }
  if (!have_qubits) throw ParseError("missing '# qubits=n' header", line_no == 0 ? 1 : line_no);
  try {
    validate_circuit(c);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), line_no);
  }
  return c;
}

}  // namespace qinterf
