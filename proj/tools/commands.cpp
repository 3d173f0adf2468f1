// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qinterf/qinterf.hpp"

namespace qinterf::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string ensemble;
  std::size_t dim = 0;
  std::size_t qubits = 0;
  std::vector<std::size_t> gates;
  std::vector<double> prob;
  std::size_t realizations = 0;
  std::optional<std::uint64_t> seed;
  std::size_t bins = kDefaultBins;
  unsigned threads = 1;
  std::string observable;
  std::string reference;
  std::size_t reference_realizations = 0;
  std::string cache_dir;
  std::string input;
  std::string column;
  std::vector<double> range;
  std::string curve;
  std::string out;
  std::string fit_out;
  std::size_t qubit_cap = kDefaultQubitCap;
};

// ---------------------------------------------------------------------------
// Helpers

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  os << content;
  os.flush();
  if (!os) throw IoError("error while writing '" + path + "'");
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    out.flush();
  } else {
    write_file(path, content);
  }
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

Ensemble parse_ensemble(const std::string& name) {
  if (name == "cue") return Ensemble::CUE;
  if (name == "hoe") return Ensemble::HOE;
  if (name == "uce") return Ensemble::UCE;
  if (name == "oce") return Ensemble::OCE;
  throw InvalidArgument("--ensemble must be one of cue, hoe, uce, oce");
}

CircularEnsemble parse_circular(const std::string& name) {
  const Ensemble e = parse_ensemble(name);
  if (e == Ensemble::CUE) return CircularEnsemble::CUE;
  if (e == Ensemble::HOE) return CircularEnsemble::HOE;
  throw InvalidArgument("--ensemble must be cue or hoe for this command");
}

Observable parse_observable(const std::string& name) {
  if (name == "interference") return Observable::Interference;
  if (name == "spacings") return Observable::Spacings;
  throw InvalidArgument("--observable must be interference or spacings");
}

std::uint64_t require_seed(const Options& o) {
  if (!o.seed) throw InvalidArgument("--seed is required");
  return *o.seed;
}

double single_prob(const Options& o) {
  if (o.prob.size() != 1) throw InvalidArgument("--prob takes a single value here");
  return o.prob.front();
}

/// Ensemble-shape portion of the provenance; mirrors the command-line flags
/// so that a file can be regenerated from its header.
void add_ensemble_provenance(Provenance& prov, const Options& o, Ensemble e) {
  prov.emplace_back("ensemble", to_string(e));
  if (is_circuit(e)) {
    prov.emplace_back("qubits", std::to_string(o.qubits));
    prov.emplace_back("gates", join_sizes(o.gates));
    prov.emplace_back("prob", join_doubles(o.prob));
  } else {
    prov.emplace_back("dim", std::to_string(o.dim));
  }
}

SampleConfig sample_config_from(const Options& o) {
  SampleConfig cfg;
  cfg.ensemble = parse_ensemble(o.ensemble);
  cfg.realizations = o.realizations;
  cfg.seed = require_seed(o);
  cfg.threads = o.threads;
  cfg.qubit_cap = o.qubit_cap;
  if (is_circuit(cfg.ensemble)) {
    if (o.qubits == 0) throw InvalidArgument("--qubits is required for uce/oce");
    if (o.gates.size() != 1) throw InvalidArgument("--gates takes a single value here");
    cfg.qubits = o.qubits;
    cfg.gates = o.gates.front();
    cfg.p = single_prob(o);
  } else {
    if (o.dim == 0) throw InvalidArgument("--dim is required for cue/hoe");
    cfg.dim = o.dim;
  }
  cfg.validate();
  return cfg;
}

// ---------------------------------------------------------------------------
// moments

int cmd_moments(const Options& o, std::ostream& out) {
  const CircularEnsemble e = parse_circular(o.ensemble);
  if (o.dim < 2) throw InvalidArgument("--dim must be at least 2");
  const double mean = exact_mean(e, o.dim);
  const double var = exact_variance(e, o.dim);
  const double second = second_moment_s(e, o.dim);

  std::ostringstream os;
  write_provenance(os, {{"command", "moments"}, {"ensemble", o.ensemble}, {"dim", std::to_string(o.dim)}});
  os << "ensemble,N,mean,variance,std,second_moment\n";
  os << o.ensemble << ',' << o.dim << ',' << format_double(mean) << ',' << format_double(var) << ','
     << format_double(std::sqrt(var)) << ',' << format_double(second) << '\n';
  emit(o.out, os.str(), out);
  return kSuccess;
}

// ---------------------------------------------------------------------------
// sample

int cmd_sample(const Options& o, std::ostream& out) {
  const SampleConfig cfg = sample_config_from(o);
  const Observable obs = parse_observable(o.observable.empty() ? "interference" : o.observable);

  Provenance prov{{"command", "sample"}};
  add_ensemble_provenance(prov, o, cfg.ensemble);
  prov.emplace_back("realizations", std::to_string(cfg.realizations));
  prov.emplace_back("seed", std::to_string(cfg.seed));
  prov.emplace_back("observable", obs == Observable::Interference ? "interference" : "spacings");

  std::ostringstream os;
  write_provenance(os, prov);
  if (obs == Observable::Interference) {
    const auto values = sample_interference(cfg);
    os << "index,interference\n";
    for (std::size_t i = 0; i < values.size(); ++i) os << i << ',' << format_double(values[i]) << '\n';
  } else {
    const auto values = sample_spacings(cfg);
    const std::size_t n = cfg.operator_dim();
    os << "index,spacing\n";
    for (std::size_t i = 0; i < values.size(); ++i) os << i / n << ',' << format_double(values[i]) << '\n';
  }
  emit(o.out, os.str(), out);
  return kSuccess;
}

// ---------------------------------------------------------------------------
// hist

struct ColumnData {
  std::vector<double> values;
  std::map<std::string, std::string> provenance;
};

ColumnData read_column(const std::string& path, const std::string& column) {
  std::istringstream in(read_file(path));
  const CsvTable t = read_csv(in);
  if (t.rows.empty()) throw IoError("input '" + path + "' contains no data rows");
  std::size_t col = std::numeric_limits<std::size_t>::max();
  if (!column.empty()) {
    const auto it = std::find(t.header.begin(), t.header.end(), column);
    if (it == t.header.end()) throw InvalidArgument("column '" + column + "' not found in header");
    col = static_cast<std::size_t>(it - t.header.begin());
  }
  ColumnData data;
  data.provenance = t.provenance;
  data.values.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    const std::size_t c = col == std::numeric_limits<std::size_t>::max() ? row.fields.size() - 1 : col;
    if (c >= row.fields.size()) throw ParseError("row has too few fields", row.line);
    data.values.push_back(parse_double(row.fields[c], row.line));
  }
  return data;
}

/// Histogram range: --range if given, else the convention implied by the
/// input's provenance, else the data extent.
std::pair<double, double> hist_range(const Options& o, const ColumnData& d) {
  if (!o.range.empty()) {
    if (o.range.size() != 2) throw InvalidArgument("--range takes LO,HI");
    return {o.range[0], o.range[1]};
  }
  const auto get = [&](const char* k) -> const std::string* {
    const auto it = d.provenance.find(k);
    return it == d.provenance.end() ? nullptr : &it->second;
  };
  if (const auto* obs = get("observable")) {
    if (*obs == "spacings") return {0.0, kSpacingUpper};
    std::size_t dim = 0;
    if (const auto* v = get("dim")) dim = std::stoul(*v);
    if (const auto* v = get("qubits")) dim = std::size_t{1} << std::stoul(*v);
    if (dim >= 2) return {0.0, static_cast<double>(dim - 1)};
  }
  const auto [lo, hi] = std::minmax_element(d.values.begin(), d.values.end());
  if (*lo == *hi) return {*lo - 0.5, *hi + 0.5};
  return {*lo, *hi};
}

int cmd_hist(const Options& o, std::ostream& out) {
  if (o.input.empty()) throw InvalidArgument("--input is required");
  const ColumnData d = read_column(o.input, o.column);
  const auto [lo, hi] = hist_range(o, d);
  Histogram h(lo, hi, o.bins);
  h.add(d.values);

  Provenance prov{{"command", "hist"}};
  for (const char* k : {"ensemble", "dim", "qubits", "gates", "prob", "realizations", "seed", "observable"}) {
    const auto it = d.provenance.find(k);
    if (it != d.provenance.end()) prov.emplace_back(std::string("source_") + k, it->second);
  }
  prov.emplace_back("input", o.input);
  prov.emplace_back("bins", std::to_string(o.bins));
  prov.emplace_back("range", format_double(lo) + "," + format_double(hi));
  if (!o.column.empty()) prov.emplace_back("column", o.column);

  std::ostringstream os;
  write_histogram_csv(os, h, prov);
  emit(o.out, os.str(), out);
  return kSuccess;
}

// ---------------------------------------------------------------------------
// distance

Histogram load_histogram(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_histogram_csv(in);
}

int cmd_distance(const Options& o, std::ostream& out) {
  if (o.input.empty()) throw InvalidArgument("--input is required");
  if (o.reference.empty()) throw InvalidArgument("--reference is required");
  const Histogram h = load_histogram(o.input);
  const auto p = h.probabilities();
  std::vector<double> q;
  std::uint64_t n_q = 0;
  if (o.reference == "wigner") {
    q = bin_probabilities_from_cdf(h, [](double s) { return wigner_cdf(s); });
  } else if (o.reference == "cue2" || o.reference == "hoe2") {
    if (h.lower() < 0.0 || h.upper() > 1.0) throw InvalidArgument("N = 2 laws need a range within [0, 1]");
    const CircularEnsemble e = o.reference == "cue2" ? CircularEnsemble::CUE : CircularEnsemble::HOE;
    q = bin_probabilities_from_cdf(h, [e](double x) { return analytic_cdf_n2(e, x); });
  } else {
    const Histogram r = load_histogram(o.reference);
    if (!h.same_binning(r)) throw BinningMismatch("input and reference histograms differ in binning");
    q = r.probabilities();
    n_q = r.total();
  }
  std::ostringstream os;
  write_provenance(os, {{"command", "distance"}, {"input", o.input}, {"reference", o.reference}});
  os << "F,stderr\n"
     << format_double(hellinger_sq(p, q)) << ',' << format_double(hellinger_stderr(p, q, h.total(), n_q))
     << '\n';
  emit(o.out, os.str(), out);
  return kSuccess;
}

// ---------------------------------------------------------------------------
// converge / pscan

ConvergeConfig converge_config_from(const Options& o, double p) {
  const Ensemble e = parse_ensemble(o.ensemble);
  if (!is_circuit(e)) throw InvalidArgument("--ensemble must be uce or oce for this command");
  if (o.qubits == 0) throw InvalidArgument("--qubits is required");
  if (o.gates.size() < 2) throw InvalidArgument("--gates needs at least two values");
  ConvergeConfig c;
  c.kind = circuit_kind(e);
  c.qubits = o.qubits;
  c.gate_list = o.gates;
  std::sort(c.gate_list.begin(), c.gate_list.end());
  c.gate_list.erase(std::unique(c.gate_list.begin(), c.gate_list.end()), c.gate_list.end());
  c.p = p;
  c.realizations = o.realizations;
  c.seed = require_seed(o);
  c.bins = o.bins;
  c.observable = parse_observable(o.observable.empty() ? "spacings" : o.observable);
  c.threads = o.threads;
  c.qubit_cap = o.qubit_cap;
  // Fails early on bad qubit counts or probabilities.
  c.sample_config(c.gate_list.front()).validate();
  return c;
}

std::size_t reference_count(const Options& o) {
  return o.reference_realizations ? o.reference_realizations : 10 * o.realizations;
}

void check_reference_meta(const std::string& path, const CsvTable& t, const std::string& ensemble,
                          std::size_t dim) {
  const auto* e = t.meta("ensemble");
  const auto* n = t.meta("dim");
  if ((e && *e != ensemble) || (n && *n != std::to_string(dim)))
    throw InvalidArgument("reference '" + path + "' was built for a different ensemble or dimension");
}

/// Interference reference of the limiting circular ensemble. Loaded from
/// --reference when that file exists, otherwise sampled (10x the circuit
/// realizations by default) and written to --reference or the cache
/// directory.
Histogram obtain_reference(const Options& o, const ConvergeConfig& c) {
  const CircularEnsemble limit = limit_of(c.kind);
  const std::string name = limit == CircularEnsemble::CUE ? "cue" : "hoe";
  const std::size_t dim = std::size_t{1} << c.qubits;
  const std::size_t count = reference_count(o);

  std::string path = o.reference;
  if (path.empty() && !o.cache_dir.empty()) {
    path = (fs::path(o.cache_dir) / ("reference_" + name + "_N" + std::to_string(dim) + "_bins" +
                                     std::to_string(c.bins) + "_nr" + std::to_string(count) +
                                     "_seed" + std::to_string(c.seed) + ".csv"))
               .string();
  }
  if (!path.empty() && fs::exists(path)) {
    std::istringstream in(read_file(path));
    const CsvTable t = read_csv(in);
    check_reference_meta(path, t, name, dim);
    std::istringstream again(read_file(path));
    return read_histogram_csv(again);
  }

  Histogram h = reference_histogram(limit, dim, c.bins, count, c.seed, c.threads);
  if (!path.empty()) {
    if (!o.cache_dir.empty()) fs::create_directories(o.cache_dir);
    std::ostringstream os;
    write_histogram_csv(os, h,
                        {{"command", "reference"},
                         {"ensemble", name},
                         {"dim", std::to_string(dim)},
                         {"bins", std::to_string(c.bins)},
                         {"realizations", std::to_string(count)},
                         {"seed", std::to_string(c.seed)}});
    write_file(path, os.str());
  }
  return h;
}

Provenance converge_provenance(const char* command, const Options& o, const ConvergeConfig& c) {
  Provenance prov{{"command", command}};
  add_ensemble_provenance(prov, o, parse_ensemble(o.ensemble));
  prov.emplace_back("realizations", std::to_string(c.realizations));
  prov.emplace_back("seed", std::to_string(c.seed));
  prov.emplace_back("bins", std::to_string(c.bins));
  prov.emplace_back("observable", c.observable == Observable::Spacings ? "spacings" : "interference");
  if (c.observable == Observable::Interference)
    prov.emplace_back("reference_realizations", std::to_string(reference_count(o)));
  return prov;
}

std::string fit_path_for(const Options& o) {
  if (!o.fit_out.empty()) return o.fit_out;
  if (o.out.empty() || o.out == "-") return "-";
  fs::path p(o.out);
  return (p.parent_path() / (p.stem().string() + ".fit.csv")).string();
}

int cmd_converge(const Options& o, std::ostream& out) {
  const Observable obs = parse_observable(o.observable.empty() ? "spacings" : o.observable);
  const FitKind kind = obs == Observable::Spacings ? FitKind::Exponential : FitKind::Gaussian;
  const double f_low = kind == FitKind::Exponential ? kExponentialWindowLow : kGaussianWindowLow;

  DistanceCurve curve;
  Provenance prov;
  if (!o.curve.empty()) {
    // Fit a supplied curve instead of simulating one.
    std::istringstream in(read_file(o.curve));
    curve = read_curve_csv(in);
    prov = {{"command", "converge"}, {"curve", o.curve},
            {"observable", obs == Observable::Spacings ? "spacings" : "interference"}};
  } else {
    const ConvergeConfig c = converge_config_from(o, single_prob(o));
    std::optional<Histogram> reference;
    if (c.observable == Observable::Interference) reference = obtain_reference(o, c);
    curve = distance_curve(c, reference ? &*reference : nullptr);
    prov = converge_provenance("converge", o, c);
  }
  curve.metadata = prov;
  const std::optional<RateFit> fit = fit_curve(curve, obs);

  std::ostringstream curve_os;
  write_curve_csv(curve_os, curve);
  std::ostringstream fit_os;
  write_fit_csv(fit_os, fit ? &*fit : nullptr, kind, kWindowHigh, f_low, prov);

  const std::string fit_path = fit_path_for(o);
  emit(o.out, curve_os.str(), out);
  if (fit_path == "-" && (o.out.empty() || o.out == "-")) out << '\n';
  emit(fit_path, fit_os.str(), out);
  return kSuccess;
}

int cmd_pscan(const Options& o, std::ostream& out) {
  if (o.prob.empty()) throw InvalidArgument("--prob needs at least one value");
  for (double p : o.prob)
    if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("pscan probabilities must lie in (0, 1)");
  const ConvergeConfig first = converge_config_from(o, o.prob.front());
  std::optional<Histogram> reference;
  if (first.observable == Observable::Interference) reference = obtain_reference(o, first);

  std::ostringstream os;
  write_provenance(os, converge_provenance("pscan", o, first));
  os << "p,rate,stderr\n";
  for (double p : o.prob) {
    const ConvergeConfig c = converge_config_from(o, p);
    const DistanceCurve curve = distance_curve(c, reference ? &*reference : nullptr);
    const auto fit = fit_curve(curve, c.observable);
    os << format_double(p) << ',';
    if (fit)
      os << format_double(fit->rate) << ',' << format_double(fit->rate_stderr) << '\n';
    else
      os << "nan,nan\n";
  }
  emit(o.out, os.str(), out);
  return kSuccess;
}

// ---------------------------------------------------------------------------
// replay

/// Rebuilds the argument list from a file's `# key=value` header.
std::vector<std::string> replay_args(const std::string& program, const std::string& path) {
  std::istringstream in(read_file(path));
  const CsvTable t = read_csv(in);
  const auto* command = t.meta("command");
  if (!command) throw InvalidArgument("'" + path + "' has no '# command=' provenance line");
  static const char* const kFlags[] = {"ensemble", "dim",  "qubits",   "gates",  "prob",
                                       "realizations", "seed", "bins", "observable",
                                       "reference_realizations", "input", "range",
                                       "column", "reference", "curve"};
  std::vector<std::string> args{program, *command};
  for (const char* flag : kFlags) {
    if (const auto* v = t.meta(flag)) {
      args.push_back(std::string("--") + flag);
      args.push_back(*v);
    }
  }
  return args;
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "Output path (default: stdout)");
}

void add_ensemble_flags(CLI::App* sub, Options& o) {
  sub->add_option("--ensemble", o.ensemble, "cue, hoe, uce or oce");
  sub->add_option("--dim", o.dim, "Matrix dimension N (cue, hoe)");
  sub->add_option("--qubits", o.qubits, "Qubit count n (uce, oce)");
  sub->add_option("--gates", o.gates, "Gate count(s), comma separated")->delimiter(',');
  sub->add_option("--prob", o.prob, "Single-qubit gate probability p, comma separated")->delimiter(',');
  sub->add_option("--seed", o.seed, "Random seed (required)");
  sub->add_option("--threads", o.threads, "Worker threads; output does not depend on it");
  sub->add_option("--qubit-cap", o.qubit_cap, "Largest qubit count accepted");
}

void add_scan_flags(CLI::App* sub, Options& o) {
  sub->add_option("--observable", o.observable, "spacings (default) or interference");
  sub->add_option("--bins", o.bins, "Histogram bins");
  sub->add_option("--reference", o.reference, "Reference histogram CSV; created if missing");
  sub->add_option("--reference-realizations,--reference_realizations", o.reference_realizations,
                  "Reference sample count (default 10x realizations)");
  sub->add_option("--cache-dir", o.cache_dir, "Directory for cached reference histograms");
}

int dispatch(const std::vector<std::string>& raw, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = raw;
  std::string replay_out;
  unsigned replay_threads = 0;
  if (args.size() >= 3 && args[1] == "replay") {
    for (std::size_t i = 3; i + 1 < args.size(); i += 2) {
      if (args[i] == "--out") replay_out = args[i + 1];
      else if (args[i] == "--threads") replay_threads = static_cast<unsigned>(std::stoul(args[i + 1]));
      else throw InvalidArgument("replay accepts only --out and --threads");
    }
    args = replay_args(args[0], args[2]);
    if (!replay_out.empty()) args.insert(args.end(), {"--out", replay_out});
    if (replay_threads) args.insert(args.end(), {"--threads", std::to_string(replay_threads)});
  }

  Options o;
  CLI::App app{"Random quantum algorithms: interference and spectral statistics"};
  app.name("qinterf");
  app.require_subcommand(1);
  app.footer("Also: qinterf replay FILE [--out PATH] [--threads T] reruns the command recorded in FILE's header.");

  auto* moments = app.add_subcommand("moments", "Exact interference moments of CUE/HOE");
  moments->add_option("--ensemble", o.ensemble, "cue or hoe")->required();
  moments->add_option("--dim", o.dim, "Matrix dimension N")->required();
  add_common(moments, o);

  auto* sample = app.add_subcommand("sample", "Sample interference or spacings per realization");
  add_ensemble_flags(sample, o);
  o.realizations = 100000;
  sample->add_option("--realizations", o.realizations, "Realization count")->capture_default_str();
  sample->add_option("--observable", o.observable, "interference (default) or spacings");
  add_common(sample, o);

  auto* hist = app.add_subcommand("hist", "Histogram one column of a CSV file");
  hist->add_option("--input", o.input, "Input CSV")->required();
  hist->add_option("--column", o.column, "Column name (default: last column)");
  hist->add_option("--bins", o.bins, "Bin count");
  hist->add_option("--range", o.range, "LO,HI")->delimiter(',');
  add_common(hist, o);

  auto* distance = app.add_subcommand("distance", "Squared Hellinger distance between histograms");
  distance->add_option("--input", o.input, "Histogram CSV")->required();
  distance->add_option("--reference", o.reference, "Histogram CSV, or wigner, cue2, hoe2")->required();
  add_common(distance, o);

  auto* converge = app.add_subcommand("converge", "Distance curve over gate counts and rate fit");
  add_ensemble_flags(converge, o);
  add_scan_flags(converge, o);
  std::size_t scan_realizations = 10000;
  converge->add_option("--realizations", scan_realizations, "Circuits per gate count")->capture_default_str();
  converge->add_option("--curve", o.curve, "Fit this distance-curve CSV instead of simulating");
  converge->add_option("--fit-out", o.fit_out, "Rate-fit CSV path (default: <out>.fit.csv)");
  add_common(converge, o);

  auto* pscan = app.add_subcommand("pscan", "Convergence rate as a function of p");
  add_ensemble_flags(pscan, o);
  add_scan_flags(pscan, o);
  pscan->add_option("--realizations", scan_realizations, "Circuits per gate count")->capture_default_str();
  add_common(pscan, o);

  std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
  try {
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  if (*converge || *pscan) o.realizations = scan_realizations;
  if (*moments) return cmd_moments(o, out);
  if (*sample) return cmd_sample(o, out);
  if (*hist) return cmd_hist(o, out);
  if (*distance) return cmd_distance(o, out);
  if (*converge) return cmd_converge(o, out);
  return cmd_pscan(o, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace qinterf::cli
