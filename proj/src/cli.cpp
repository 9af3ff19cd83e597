#include "rabi/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <variant>

#include "rabi/acceptance.hpp"
#include "rabi/chrw.hpp"
#include "rabi/errors.hpp"
#include "rabi/floquet.hpp"
#include "rabi/gvv.hpp"
#include "rabi/open_system.hpp"

namespace rabi::cli {

namespace {

using json = nlohmann::json;
using Cell = std::variant<std::monostate, double, std::string>;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Output {
  std::string path = "-";
  std::string format = "csv";
};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (const auto* d = std::get_if<double>(&row[i])) os << format_double(*d);
      if (const auto* s = std::get_if<std::string>(&row[i])) os << *s;
    }
    os << '\n';
  }
}

void write_json(const Table& t, const json& config, std::ostream& os) {
  json data = json::object();
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    json col = json::array();
    for (const auto& row : t.rows) {
      if (const auto* d = std::get_if<double>(&row[c])) {
        col.push_back(*d);
      } else if (const auto* s = std::get_if<std::string>(&row[c])) {
        col.push_back(*s);
      } else {
        col.push_back(nullptr);
      }
    }
    data[t.columns[c]] = std::move(col);
  }
  json doc = {{"meta", {{"config", config}, {"version", kVersion}, {"columns", t.columns}}},
              {"data", std::move(data)}};
  os << doc.dump(2) << '\n';
}

void emit(const Table& t, const json& config, const Output& o, const std::vector<std::string>& warnings,
          std::ostream& out, std::ostream& err) {
  auto write = [&](std::ostream& os) {
    if (o.format == "json") {
      write_json(t, config, os);
    } else {
      write_csv(t, os);
    }
  };
  if (o.path == "-") {
    write(out);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw Error("cannot open output file " + o.path);
  write(f);
  const std::string sidecar = o.path + ".warnings.txt";
  std::filesystem::remove(sidecar);
  if (!warnings.empty()) {
    std::ofstream w(sidecar, std::ios::binary);
    for (const auto& line : warnings) w << line << '\n';
  }
}

struct Range {
  double lo, hi, step;
};

Range parse_range(const std::string& text, const char* flag) {
  Range r{};
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &r.lo, &r.hi, &r.step, &tail) != 3 ||
      !std::isfinite(r.lo) || !std::isfinite(r.hi) || !std::isfinite(r.step) || !(r.step > 0.0) ||
      r.hi < r.lo) {
    throw UsageError(std::string(flag) + " expects lo:hi:step with lo <= hi and step > 0, got '" +
                     text + "'");
  }
  return r;
}

std::vector<double> axis(const Range& r) {
  std::vector<double> a = make_axis(r.lo, r.hi, r.step);
  // Snap to the decimal grid the user typed so 0.05 + 95 * 0.01 prints as 1.
  for (double& v : a) v = std::round(v * 1e12) / 1e12;
  return a;
}

const CLI::Validator kFinite(
    [](std::string& s) {
      try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) return std::string("must be a finite number");
      } catch (const std::exception&) {
        return std::string("must be a finite number");
      }
      return std::string();
    },
    "FINITE");

std::vector<double> time_grid(const DriveParams& p, double periods, int samples) {
  const auto n = static_cast<std::size_t>(std::llround(periods * samples));
  return uniform_grid(p.period() / samples, n);
}

// --- subcommands -----------------------------------------------------------

struct DynamicsArgs {
  double omega = 0.6, amp = 2.0, periods = 20.0;
  int samples = 50, truncation = kDefaultTruncation;
};

int run_dynamics(const DynamicsArgs& a, const Output& o, std::ostream& out, std::ostream& err) {
  const DriveParams p = make_drive(1.0, a.amp, a.omega);
  const auto t = time_grid(p, a.periods, a.samples);
  const TimeSeries direct = p1_direct(p, t);
  const TimeSeries floq = p1_floquet(p, a.truncation, t);
  std::vector<std::string> warnings;
  std::optional<TimeSeries> chrw;
  try {
    const ChrwSolution sol = chrw_solution(p);
    chrw = p1_chrw(chrw_coefficients(sol, p), t);
  } catch (const NoSolutionError& e) {
    warnings.push_back(std::string("p1_chrw left empty: ") + e.what());
  } catch (const AmbiguousSolutionError& e) {
    warnings.push_back(std::string("p1_chrw left empty: ") + e.what());
  } catch (const DegenerateInputError& e) {
    warnings.push_back(std::string("p1_chrw left empty: ") + e.what());
  }

  Table table{{"t", "p1_numeric", "p1_chrw", "p1_floquet"}, {}};
  for (std::size_t i = 0; i < t.size(); ++i) {
    table.rows.push_back({t[i], direct.p1[i], chrw ? Cell(chrw->p1[i]) : Cell(), floq.p1[i]});
  }
  const json config = {{"subcommand", "dynamics"}, {"omega", a.omega},          {"amp", a.amp},
                       {"periods", a.periods},     {"samples", a.samples},      {"truncation", a.truncation}};
  emit(table, config, o, warnings, out, err);
  return 0;
}

struct SpectrumArgs {
  double omega = 0.6;
  std::string amp_range = "0.5:8:0.5";
  int nmax = 2, truncation = kDefaultTruncation, ksum = 0;
};

int run_spectrum(const SpectrumArgs& a, const Output& o, std::ostream& out, std::ostream& err) {
  const auto amps = axis(parse_range(a.amp_range, "--amp-range"));
  Table table{{"A_over_omega0", "line_frequency", "label", "source"}, {}};
  std::vector<std::string> warnings;
  auto add = [&](double amp, const FrequencyComb& comb, const char* source) {
    for (const auto& line : comb.lines) table.rows.push_back({amp, line.frequency, line.label, std::string(source)});
  };
  for (double amp : amps) {
    const DriveParams p = make_drive(1.0, amp, a.omega);
    add(amp, numeric_comb(p, a.truncation, a.nmax), "numeric");
    try {
      add(amp, analytic_comb(chrw_solution(p).Omega_tilde, p.omega, a.nmax), "chrw");
    } catch (const Error& e) {
      warnings.push_back("A = " + format_double(amp) + ": no chrw lines: " + e.what());
    }
    try {
      const GvvEffective g = gvv_effective(p, a.ksum);
      add(amp, analytic_comb(g.Omega, p.omega, a.nmax), "gvv");
      add(amp, analytic_comb(g.Omega_grwa, p.omega, a.nmax), "grwa");
    } catch (const MultiphotonResonanceError& e) {
      warnings.push_back("A = " + format_double(amp) + ": no gvv lines: " + e.what());
    }
  }
  const json config = {{"subcommand", "spectrum"}, {"omega", a.omega},           {"amp-range", a.amp_range},
                       {"nmax", a.nmax},           {"truncation", a.truncation}, {"ksum", a.ksum}};
  emit(table, config, o, warnings, out, err);
  return 0;
}

struct MapArgs {
  std::string omega_range = "0.05:3:0.01";
  std::string amp_range = "0:10:0.01";
  int scan = kXiScanPoints;
};

int run_map(const MapArgs& a, const Output& o, std::ostream& out, std::ostream& err) {
  const auto omegas = axis(parse_range(a.omega_range, "--omega-range"));
  const auto amps = axis(parse_range(a.amp_range, "--amp-range"));
  if (omegas.front() <= 0.0) throw UsageError("--omega-range must stay above zero");
  if (amps.front() < 0.0) throw UsageError("--amp-range must not go below zero");
  const SolutionCountMap map = solution_count_map(omegas, amps, 1.0, a.scan);
  Table table{{"omega_over_omega0", "A_over_omega0", "count"}, {}};
  table.rows.reserve(omegas.size() * amps.size());
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    for (std::size_t j = 0; j < amps.size(); ++j) {
      table.rows.push_back({omegas[i], amps[j],
                            static_cast<double>(map.counts(static_cast<Eigen::Index>(i),
                                                           static_cast<Eigen::Index>(j)))});
    }
  }
  const json config = {{"subcommand", "chrw-map"},
                       {"omega-range", a.omega_range},
                       {"amp-range", a.amp_range},
                       {"scan", a.scan}};
  emit(table, config, o, {}, out, err);
  return 0;
}

struct OpenArgs {
  double omega = 1.0, amp = 10.0, periods = 6.0;
  double gamma10 = 1.0, gamma11 = 0.2, gamma01 = 0.0, gamma00 = 0.0;
  int samples = 100, ksum = 0;
};

int run_open(const OpenArgs& a, const Output& o, std::ostream& out, std::ostream& err) {
  const DriveParams p = make_drive(1.0, a.amp, a.omega);
  const DecayRates rates{a.gamma10 * a.omega, a.gamma11 * a.omega, a.gamma01 * a.omega,
                         a.gamma00 * a.omega};
  rates.validate();
  const auto t = time_grid(p, a.periods, a.samples);
  const auto lab = evolve_lab_lindblad(p, rates, DensityMatrix::ground(), t);
  const auto gvv = evolve_gvv_lindblad(p, rates, t, a.ksum);
  Table table{{"t", "p1_lab_lindblad", "p1_gvv_lindblad"}, {}};
  for (std::size_t i = 0; i < t.size(); ++i) table.rows.push_back({t[i], lab.series.p1[i], gvv.series.p1[i]});
  const json config = {{"subcommand", "open"}, {"omega", a.omega},     {"amp", a.amp},
                       {"gamma10", a.gamma10}, {"gamma11", a.gamma11}, {"gamma01", a.gamma01},
                       {"gamma00", a.gamma00}, {"periods", a.periods}, {"samples", a.samples},
                       {"ksum", a.ksum}};
  emit(table, config, o, {}, out, err);
  return 0;
}

int run_validate(const Output& o, std::ostream& out, std::ostream& err) {
  const auto results = run_acceptance(&err);
  int failures = 0;
  if (o.path == "-") {
    failures = print_acceptance_report(results, out);
  } else {
    std::ofstream f(o.path, std::ios::binary);
    if (!f) throw Error("cannot open output file " + o.path);
    failures = print_acceptance_report(results, f);
    print_acceptance_report(results, out);
  }
  return failures == 0 ? 0 : 1;
}

// Turns {"key": value} from a config file into "--key value" pairs placed before
// the command-line flags, so that flags given explicitly win.
std::vector<std::string> expand_config(const std::vector<std::string>& args, CLI::App& app) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path) return args;
  if (args.empty()) throw UsageError("a subcommand must precede --config");

  CLI::App* sub = nullptr;
  for (auto* s : app.get_subcommands({})) {
    if (s->get_name() == args.front()) sub = s;
  }
  if (!sub) throw UsageError("a subcommand must precede --config");

  std::ifstream f(*path);
  if (!f) throw UsageError("cannot read config file " + *path);
  json cfg;
  try {
    cfg = json::parse(f);
  } catch (const json::parse_error& e) {
    throw UsageError("config file " + *path + " is not valid JSON: " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");

  std::vector<std::string> expanded{args.front()};
  for (const auto& [key, value] : cfg.items()) {
    if (key == "config" || key == "help" || sub->get_option_no_throw("--" + key) == nullptr) {
      throw UsageError("unknown config key '" + key + "' for " + sub->get_name());
    }
    std::string text;
    if (value.is_number()) {
      text = format_double(value.get<double>());
    } else if (value.is_string()) {
      text = value.get<std::string>();
    } else {
      throw UsageError("config key '" + key + "' must be a number or a string");
    }
    expanded.push_back("--" + key);
    expanded.push_back(text);
  }
  expanded.insert(expanded.end(), args.begin() + 1, args.end());
  return expanded;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Floquet dynamics of the driven Rabi model", "rabi-floquet"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Output o;
  std::string config_path;
  auto common = [&](CLI::App* s, bool tabular) {
    s->add_option("--out", o.path, "Output file, - for standard output");
    if (tabular) s->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--config", config_path, "JSON file whose keys are option names");
  };

  DynamicsArgs dyn;
  auto* s_dyn = app.add_subcommand("dynamics", "P1(t) from direct integration, CHRW and Floquet");
  s_dyn->add_option("--omega", dyn.omega, "Drive frequency / omega0")->check(kFinite & CLI::PositiveNumber);
  s_dyn->add_option("--amp", dyn.amp, "Drive amplitude / omega0")->check(kFinite & CLI::NonNegativeNumber);
  s_dyn->add_option("--periods", dyn.periods, "Drive periods")->check(kFinite & CLI::PositiveNumber);
  s_dyn->add_option("--samples", dyn.samples, "Samples per period")->check(CLI::Range(1, 100000));
  s_dyn->add_option("--truncation", dyn.truncation, "Fourier truncation N")->check(CLI::Range(1, 2000));
  common(s_dyn, true);

  SpectrumArgs spectrum_args;
  auto* s_spectrum = app.add_subcommand("spectrum", "Frequency lines versus A from four routes");
  s_spectrum->add_option("--omega", spectrum_args.omega, "Drive frequency / omega0")->check(kFinite & CLI::PositiveNumber);
  s_spectrum->add_option("--amp-range", spectrum_args.amp_range, "lo:hi:step in A / omega0");
  s_spectrum->add_option("--nmax", spectrum_args.nmax, "Highest n in 2n omega")->check(CLI::Range(0, 1000));
  s_spectrum->add_option("--truncation", spectrum_args.truncation, "Fourier truncation N")->check(CLI::Range(1, 2000));
  s_spectrum->add_option("--ksum", spectrum_args.ksum, "GVV sum cutoff K, 0 for automatic")->check(CLI::Range(0, 100000));
  common(s_spectrum, true);

  MapArgs map;
  auto* s_map = app.add_subcommand("chrw-map", "Number of CHRW xi roots over a grid");
  s_map->add_option("--omega-range", map.omega_range, "lo:hi:step in omega / omega0");
  s_map->add_option("--amp-range", map.amp_range, "lo:hi:step in A / omega0");
  s_map->add_option("--scan", map.scan, "Scan points per root search")->check(CLI::Range(2, 10000000));
  common(s_map, true);

  OpenArgs open;
  auto* s_open = app.add_subcommand("open", "Lab-frame and GVV-frame Lindblad traces");
  s_open->add_option("--omega", open.omega, "Drive frequency / omega0")->check(kFinite & CLI::PositiveNumber);
  s_open->add_option("--amp", open.amp, "Drive amplitude / omega0")->check(kFinite & CLI::NonNegativeNumber);
  s_open->add_option("--gamma10", open.gamma10, "Decay |1> -> |0>, units of omega")->check(kFinite & CLI::NonNegativeNumber);
  s_open->add_option("--gamma11", open.gamma11, "Dephasing of |1>, units of omega")->check(kFinite & CLI::NonNegativeNumber);
  s_open->add_option("--gamma01", open.gamma01, "Excitation |0> -> |1>, units of omega")->check(kFinite & CLI::NonNegativeNumber);
  s_open->add_option("--gamma00", open.gamma00, "Dephasing of |0>, units of omega")->check(kFinite & CLI::NonNegativeNumber);
  s_open->add_option("--periods", open.periods, "Drive periods")->check(kFinite & CLI::PositiveNumber);
  s_open->add_option("--samples", open.samples, "Samples per period")->check(CLI::Range(1, 100000));
  s_open->add_option("--ksum", open.ksum, "GVV sum cutoff K, 0 for automatic")->check(CLI::Range(0, 100000));
  common(s_open, true);

  auto* s_val = app.add_subcommand("validate", "Run the acceptance checks");
  common(s_val, false);

  try {
    std::vector<std::string> argv = expand_config(args, app);
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return 0;
    err << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (s_dyn->parsed()) return run_dynamics(dyn, o, out, err);
    if (s_spectrum->parsed()) return run_spectrum(spectrum_args, o, out, err);
    if (s_map->parsed()) return run_map(map, o, out, err);
    if (s_open->parsed()) return run_open(open, o, out, err);
    if (s_val->parsed()) return run_validate(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace rabi::cli
