// mirrorrad command-line front end: parameter intake, regime dispatch and
// tabulated CSV/JSON output for the library observables.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mirrorrad/mirrorrad.hpp"

namespace {

using mirrorrad::BetaCoefficient;
using mirrorrad::CollapseTrajectory;
using mirrorrad::Complex;
using mirrorrad::FieldType;
using mirrorrad::Method;
using mirrorrad::MirrorKind;
using mirrorrad::QuadratureConfig;
using mirrorrad::QuadStatus;
using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest round-trip decimal representation.
std::string fmt_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<double> parse_grid(const std::string& spec, const char* flag) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : spec) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);

  auto num = [&](const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size()) {
      throw ValidationError(std::string(flag) + ": '" + s +
                            "' is not a number (grid spec is "
                            "value or min:max:count[:log])");
    }
    return v;
  };

  if (parts.size() == 1) return {num(parts[0])};
  if (parts.size() < 3 || parts.size() > 4) {
    throw ValidationError(std::string(flag) +
                          ": grid spec is value or min:max:count[:log]");
  }
  const double lo = num(parts[0]);
  const double hi = num(parts[1]);
  const long count = std::lround(num(parts[2]));
  bool log_spaced = false;
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      log_spaced = true;
    } else if (parts[3] != "lin") {
      throw ValidationError(std::string(flag) + ": unknown spacing '" +
                            parts[3] + "' (use log or lin)");
    }
  }
  if (count < 1) {
    throw ValidationError(std::string(flag) + ": grid count must be >= 1");
  }
  if (count == 1) return {lo};
  if (!(hi > lo)) {
    throw ValidationError(std::string(flag) + ": grid needs max > min");
  }
  if (log_spaced && !(lo > 0.0)) {
    throw ValidationError(std::string(flag) + ": log grid needs min > 0");
  }
  std::vector<double> pts(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    pts[static_cast<std::size_t>(i)] =
        log_spaced ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
  }
  return pts;
}

std::string join_warnings(const std::vector<std::string>& w) {
  std::string out;
  for (const auto& s : w) {
    if (!out.empty()) out += "; ";
    out += s;
  }
  return out;
}

// One output table: fixed header, json-typed cells, metadata object.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;
  json metadata = json::object();

  void emit_csv(std::ostream& os) const {
    auto cell = [](const json& v) -> std::string {
      std::string s;
      if (v.is_null()) {
        return "";
      } else if (v.is_string()) {
        s = v.get<std::string>();
      } else if (v.is_boolean()) {
        s = v.get<bool>() ? "true" : "false";
      } else if (v.is_number_float()) {
        s = fmt_double(v.get<double>());
      } else {
        s = v.dump();
      }
      if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char ch : s) {
          if (ch == '"') q += '"';
          q += ch;
        }
        q += '"';
        return q;
      }
      return s;
    };
    for (std::size_t i = 0; i < header.size(); ++i) {
      os << (i ? "," : "") << header[i];
    }
    os << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << (i ? "," : "") << cell(row[i]);
      }
      os << '\n';
    }
  }

  void emit_json(std::ostream& os) const {
    json doc;
    doc["metadata"] = metadata;
    doc["rows"] = json::array();
    for (const auto& row : rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = row[i];
      doc["rows"].push_back(std::move(obj));
    }
    os << doc.dump(2) << '\n';
  }
};

struct CommonOpts {
  std::string field = "scalar";
  std::string mirror = "perfect";
  double k = 1.0;
  double u0 = 0.0;
  double alpha = 0.0;
  bool alpha_set = false;
  std::string method = "numeric";
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  bool rel_tol_set = false;
  std::string output;
  std::string format = "csv";
  int jobs = 0;
  bool stamp = false;
};

void add_io_opts(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--output", c.output, "Output path (default: stdout)");
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--jobs", c.jobs,
                  "Worker threads for grid rows (default: hardware)");
  cmd->add_flag("--stamp", c.stamp, "Record a timestamp in the metadata");
}

void add_tol_opts(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--rel-tol", c.rel_tol, "Quadrature relative tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str()
      ->trigger_on_parse();  // so we can tell flag from env default
  cmd->add_option("--abs-tol", c.abs_tol, "Quadrature absolute tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--method", c.method, "numeric, asymptotic or both")
      ->check(CLI::IsMember({"numeric", "asymptotic", "both"}))
      ->capture_default_str();
}

FieldType parse_field(const CommonOpts& c) {
  return c.field == "dirac" ? FieldType::Dirac : FieldType::Scalar;
}

MirrorKind parse_mirror(const CommonOpts& c) {
  return c.mirror == "semitransparent" ? MirrorKind::SemiTransparent
                                       : MirrorKind::Perfect;
}

void require_alpha(const CommonOpts& c) {
  if (parse_mirror(c) == MirrorKind::SemiTransparent && !c.alpha_set) {
    throw ValidationError(
        "--alpha is required when --mirror semitransparent");
  }
  if (parse_mirror(c) == MirrorKind::Perfect && c.alpha_set) {
    throw ValidationError("--alpha only applies to --mirror semitransparent");
  }
}

QuadratureConfig quad_config(const CommonOpts& c) {
  QuadratureConfig cfg;
  cfg.rel_tol = c.rel_tol;
  cfg.abs_tol = c.abs_tol;
  if (!c.rel_tol_set) {
    if (const char* env = std::getenv("MIRRORRAD_RTOL")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end && *end == '\0' && v > 0.0) cfg.rel_tol = v;
    }
  }
  return cfg;
}

json base_metadata(const char* command, const CommonOpts& c) {
  json m;
  m["tool"] = "mirrorrad";
  m["version"] = kVersion;
  m["command"] = command;
  m["field"] = c.field;
  m["mirror"] = c.mirror;
  m["method"] = c.method;
  m["hbar"] = 1.0;
  if (c.stamp) {
    const auto now = std::chrono::system_clock::now();
    m["generated_at"] =
        std::chrono::duration_cast<std::chrono::seconds>(
            now.time_since_epoch())
            .count();
  }
  return m;
}

void write_table(const Table& table, const CommonOpts& c) {
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!c.output.empty() && c.output != "-") {
    file.open(c.output, std::ios::binary);
    if (!file) throw ValidationError("cannot open output path " + c.output);
    os = &file;
  }
  if (c.format == "json") {
    table.emit_json(*os);
  } else {
    table.emit_csv(*os);
  }
}

// Compute grid rows in a worker pool; rows land in grid order regardless of
// completion order. The first exception wins and is rethrown.
template <typename Fn>
void parallel_rows(std::size_t n, int jobs, Fn&& fn) {
  int workers = jobs > 0 ? jobs
                         : static_cast<int>(std::max(
                               1u, std::thread::hardware_concurrency()));
  workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(workers), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto body = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(n);
        break;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

bool row_numeric_ok(const BetaCoefficient& b) {
  return b.quad_status != QuadStatus::SubdivisionLimit &&
         std::isfinite(b.value.real()) && std::isfinite(b.value.imag());
}

// ---------------------------------------------------------------------------
// beta subcommand

struct BetaOpts {
  CommonOpts common;
  std::string omega_spec;
  std::string omega_prime_spec;
  std::string channel = "rr";
};

int run_beta(const BetaOpts& opt) {
  const CommonOpts& c = opt.common;
  require_alpha(c);
  const FieldType field = parse_field(c);
  const MirrorKind mirror = parse_mirror(c);
  const bool rl = opt.channel == "rl";
  if (rl && mirror == MirrorKind::Perfect) {
    throw ValidationError(
        "--channel rl needs --mirror semitransparent (a perfect mirror has "
        "no transmitted channel)");
  }
  const bool want_numeric = c.method != "asymptotic";
  const bool want_asymptotic = c.method != "numeric";
  if (rl && want_asymptotic) {
    throw ValidationError(
        "--channel rl has no asymptotic closed form; use --method numeric");
  }

  const auto omegas = parse_grid(opt.omega_spec, "--omega");
  const auto omega_primes = parse_grid(opt.omega_prime_spec, "--omega-prime");
  const auto traj = CollapseTrajectory::finite(c.k, c.u0);
  const QuadratureConfig cfg = quad_config(c);

  auto numeric = [&](double w, double wp) {
    if (rl) {
      return field == FieldType::Scalar
                 ? mirrorrad::beta_rl_semi_numeric(traj, c.alpha, w, wp, cfg)
                 : mirrorrad::beta_rl_semi_fermion_numeric(traj, c.alpha, w,
                                                           wp, cfg);
    }
    if (mirror == MirrorKind::Perfect) {
      return field == FieldType::Scalar
                 ? mirrorrad::beta_rr_perfect_numeric(traj, w, wp, cfg)
                 : mirrorrad::beta_rr_perfect_fermion_numeric(traj, w, wp,
                                                              cfg);
    }
    return field == FieldType::Scalar
               ? mirrorrad::beta_rr_semi_numeric(traj, c.alpha, w, wp, cfg)
               : mirrorrad::beta_rr_semi_fermion_numeric(traj, c.alpha, w, wp,
                                                         cfg);
  };
  auto asymptotic = [&](double w, double wp) {
    if (mirror == MirrorKind::Perfect) {
      return field == FieldType::Scalar
                 ? mirrorrad::beta_rr_perfect_asymptotic(c.k, w, wp)
                 : mirrorrad::beta_rr_perfect_fermion_asymptotic(c.k, w, wp);
    }
    return field == FieldType::Scalar
               ? mirrorrad::beta_rr_semi_asymptotic(c.k, c.alpha, w, wp)
               : mirrorrad::beta_rr_semi_fermion_asymptotic(c.k, c.alpha, w,
                                                            wp);
  };

  Table table;
  table.header = {"omega",          "omega_prime",
                  "re_beta",        "im_beta",
                  "beta_sq_numeric", "beta_sq_asymptotic",
                  "rel_gap",        "warnings"};
  table.metadata = base_metadata("beta", c);
  table.metadata["channel"] = opt.channel;
  table.metadata["k"] = c.k;
  table.metadata["u0"] = c.u0;
  if (c.alpha_set) table.metadata["alpha"] = c.alpha;
  table.metadata["rel_tol"] = cfg.rel_tol;
  table.metadata["abs_tol"] = cfg.abs_tol;

  const std::size_t n = omegas.size() * omega_primes.size();
  table.rows.assign(n, {});
  std::atomic<bool> numeric_ok{true};
  parallel_rows(n, c.jobs, [&](std::size_t i) {
    const double w = omegas[i / omega_primes.size()];
    const double wp = omega_primes[i % omega_primes.size()];
    std::vector<json> row(8, nullptr);
    row[0] = w;
    row[1] = wp;
    std::vector<std::string> warnings;
    double sq_num = 0.0, sq_asym = 0.0;
    if (want_numeric) {
      const BetaCoefficient b = numeric(w, wp);
      sq_num = b.abs_sq();
      row[2] = b.value.real();
      row[3] = b.value.imag();
      row[4] = sq_num;
      warnings.insert(warnings.end(), b.warnings.begin(), b.warnings.end());
      if (!row_numeric_ok(b)) numeric_ok.store(false);
    }
    if (want_asymptotic) {
      const BetaCoefficient b = asymptotic(w, wp);
      sq_asym = b.abs_sq();
      row[5] = sq_asym;
      if (!want_numeric) {
        row[2] = b.value.real();
        row[3] = b.value.imag();
      }
      warnings.insert(warnings.end(), b.warnings.begin(), b.warnings.end());
    }
    if (want_numeric && want_asymptotic) {
      row[6] = sq_asym != 0.0
                   ? std::abs(sq_num - sq_asym) / std::abs(sq_asym)
                   : 0.0;
    }
    std::sort(warnings.begin(), warnings.end());
    warnings.erase(std::unique(warnings.begin(), warnings.end()),
                   warnings.end());
    row[7] = join_warnings(warnings);
    table.rows[i] = std::move(row);
  });
  write_table(table, c);
  return numeric_ok.load() ? kExitOk : kExitNumeric;
}

// ---------------------------------------------------------------------------
// spectrum subcommand: |beta|^2 against omega' at fixed omega

struct SpectrumOpts {
  CommonOpts common;
  double omega = 0.0;
  std::string omega_prime_spec;
};

int run_spectrum(const SpectrumOpts& opt) {
  const CommonOpts& c = opt.common;
  require_alpha(c);
  const FieldType field = parse_field(c);
  const MirrorKind mirror = parse_mirror(c);
  const auto omega_primes = parse_grid(opt.omega_prime_spec, "--omega-prime");
  const auto traj = CollapseTrajectory::finite(c.k, c.u0);
  const QuadratureConfig cfg = quad_config(c);
  const bool asymptotic = c.method == "asymptotic";
  if (c.method == "both") {
    throw ValidationError(
        "spectrum emits one method per table; use beta --method both for "
        "side-by-side columns");
  }

  Table table;
  table.header = {"omega",  "omega_prime", "beta_sq",
                  "err_estimate", "regime", "warnings"};
  table.metadata = base_metadata("spectrum", c);
  table.metadata["k"] = c.k;
  table.metadata["u0"] = c.u0;
  table.metadata["omega"] = opt.omega;
  if (c.alpha_set) table.metadata["alpha"] = c.alpha;
  table.metadata["rel_tol"] = cfg.rel_tol;
  table.metadata["abs_tol"] = cfg.abs_tol;

  const std::size_t n = omega_primes.size();
  table.rows.assign(n, {});
  std::atomic<bool> numeric_ok{true};
  parallel_rows(n, c.jobs, [&](std::size_t i) {
    const double wp = omega_primes[i];
    BetaCoefficient b;
    if (asymptotic) {
      if (mirror == MirrorKind::Perfect) {
        b = field == FieldType::Scalar
                ? mirrorrad::beta_rr_perfect_asymptotic(c.k, opt.omega, wp)
                : mirrorrad::beta_rr_perfect_fermion_asymptotic(c.k, opt.omega,
                                                                wp);
      } else {
        b = field == FieldType::Scalar
                ? mirrorrad::beta_rr_semi_asymptotic(c.k, c.alpha, opt.omega,
                                                     wp)
                : mirrorrad::beta_rr_semi_fermion_asymptotic(c.k, c.alpha,
                                                             opt.omega, wp);
      }
    } else {
      if (mirror == MirrorKind::Perfect) {
        b = field == FieldType::Scalar
                ? mirrorrad::beta_rr_perfect_numeric(traj, opt.omega, wp, cfg)
                : mirrorrad::beta_rr_perfect_fermion_numeric(traj, opt.omega,
                                                             wp, cfg);
      } else {
        b = field == FieldType::Scalar
                ? mirrorrad::beta_rr_semi_numeric(traj, c.alpha, opt.omega,
                                                  wp, cfg)
                : mirrorrad::beta_rr_semi_fermion_numeric(traj, c.alpha,
                                                          opt.omega, wp, cfg);
      }
      if (!row_numeric_ok(b)) numeric_ok.store(false);
    }
    const char* regime =
        mirror == MirrorKind::Perfect
            ? "perfect"
            : mirrorrad::regime_name(mirrorrad::classify_regime(c.alpha, wp));
    table.rows[i] = {opt.omega, wp, b.abs_sq(), b.err_estimate, regime,
                     join_warnings(b.warnings)};
  });
  write_table(table, c);
  return numeric_ok.load() ? kExitOk : kExitNumeric;
}

// ---------------------------------------------------------------------------
// nomega subcommand

struct NOmegaOpts {
  CommonOpts common;
  std::string omega_spec;
};

int run_nomega(const NOmegaOpts& opt) {
  const CommonOpts& c = opt.common;
  require_alpha(c);
  const FieldType field = parse_field(c);
  const MirrorKind mirror = parse_mirror(c);
  const auto omegas = parse_grid(opt.omega_spec, "--omega");
  const auto traj = CollapseTrajectory::finite(c.k, c.u0);
  const QuadratureConfig cfg = quad_config(c);
  const bool want_numeric = c.method != "asymptotic";
  const bool want_asymptotic = c.method != "numeric";
  if (want_asymptotic && mirror == MirrorKind::Perfect) {
    throw ValidationError(
        "perfect-mirror N_omega has no finite closed form; use --method "
        "numeric (the value grows with u0 and is flagged)");
  }

  Table table;
  table.header = {"omega",           "n_omega_numeric", "n_omega_asymptotic",
                  "rel_gap",         "err_estimate",    "infrared_part",
                  "rl_included",     "warnings"};
  table.metadata = base_metadata("nomega", c);
  table.metadata["k"] = c.k;
  table.metadata["u0"] = c.u0;
  if (c.alpha_set) table.metadata["alpha"] = c.alpha;
  table.metadata["rel_tol"] = cfg.rel_tol;
  table.metadata["abs_tol"] = cfg.abs_tol;

  const std::size_t n = omegas.size();
  table.rows.assign(n, {});
  std::atomic<bool> numeric_ok{true};
  parallel_rows(n, c.jobs, [&](std::size_t i) {
    const double w = omegas[i];
    std::vector<json> row(8, nullptr);
    row[0] = w;
    std::vector<std::string> warnings;
    double v_num = 0.0, v_asym = 0.0;
    if (want_numeric) {
      const auto r = mirrorrad::particle_number(w, field, traj, c.alpha,
                                                mirror, cfg, Method::Numeric);
      v_num = r.value;
      row[1] = r.value;
      row[4] = r.err_estimate;
      row[5] = r.infrared_part;
      row[6] = r.rl_included;
      warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
      if (!std::isfinite(r.value)) numeric_ok.store(false);
    }
    if (want_asymptotic) {
      const auto r = mirrorrad::particle_number(
          w, field, traj, c.alpha, mirror, cfg, Method::Asymptotic);
      v_asym = r.value;
      row[2] = r.value;
      warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
    }
    if (want_numeric && want_asymptotic && v_asym != 0.0) {
      row[3] = std::abs(v_num - v_asym) / std::abs(v_asym);
    }
    std::sort(warnings.begin(), warnings.end());
    warnings.erase(std::unique(warnings.begin(), warnings.end()),
                   warnings.end());
    row[7] = join_warnings(warnings);
    table.rows[i] = std::move(row);
  });
  write_table(table, c);
  return numeric_ok.load() ? kExitOk : kExitNumeric;
}

// ---------------------------------------------------------------------------
// energy subcommand (scalar semi-transparent only)

int run_energy(const CommonOpts& c) {
  if (parse_field(c) != FieldType::Scalar) {
    throw ValidationError(
        "radiated energy is defined for --field scalar only (the Dirac "
        "omega-integrand diverges at omega -> 0)");
  }
  if (!c.alpha_set) {
    throw ValidationError("--alpha is required for the energy command");
  }
  const auto traj = CollapseTrajectory::finite(c.k, c.u0);
  const QuadratureConfig cfg = quad_config(c);
  const bool want_numeric = c.method != "asymptotic";
  const bool want_asymptotic = c.method != "numeric";

  Table table;
  table.header = {"alpha",           "k",
                  "energy_numeric",  "energy_asymptotic",
                  "rel_gap",         "warnings"};
  table.metadata = base_metadata("energy", c);
  table.metadata["k"] = c.k;
  table.metadata["alpha"] = c.alpha;
  table.metadata["rel_tol"] = cfg.rel_tol;
  table.metadata["abs_tol"] = cfg.abs_tol;

  std::vector<json> row(6, nullptr);
  row[0] = c.alpha;
  row[1] = c.k;
  std::vector<std::string> warnings;
  bool ok = true;
  double e_num = 0.0, e_asym = 0.0;
  if (want_numeric) {
    const auto r = mirrorrad::radiated_energy(traj, c.alpha,
                                              FieldType::Scalar, cfg,
                                              Method::Numeric);
    e_num = r.value;
    row[2] = r.value;
    warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
    ok = ok && std::isfinite(r.value);
  }
  if (want_asymptotic) {
    const auto r = mirrorrad::radiated_energy(traj, c.alpha,
                                              FieldType::Scalar, cfg,
                                              Method::Asymptotic);
    e_asym = r.value;
    row[3] = r.value;
  }
  if (want_numeric && want_asymptotic && e_asym != 0.0) {
    row[4] = std::abs(e_num - e_asym) / std::abs(e_asym);
  }
  row[5] = join_warnings(warnings);
  table.rows.push_back(std::move(row));
  write_table(table, c);
  return ok ? kExitOk : kExitNumeric;
}

// ---------------------------------------------------------------------------
// detector subcommand: F(omega) plus the per-unit-time Planckian P(omega)

struct DetectorOpts {
  CommonOpts common;
  std::string omega_spec;
};

int run_detector(const DetectorOpts& opt) {
  const CommonOpts& c = opt.common;
  require_alpha(c);
  const FieldType field = parse_field(c);
  const MirrorKind mirror = parse_mirror(c);
  const auto omegas = parse_grid(opt.omega_spec, "--omega");
  const auto traj = CollapseTrajectory::finite(c.k, c.u0);
  const QuadratureConfig cfg = quad_config(c);
  if (c.method == "both") {
    throw ValidationError("detector emits one method per table");
  }
  const Method method =
      c.method == "numeric" ? Method::Numeric : Method::Asymptotic;
  if (method == Method::Asymptotic && mirror == MirrorKind::Perfect) {
    throw ValidationError(
        "perfect-mirror detector response diverges; use --method numeric "
        "(computed at fixed u0 and flagged)");
  }

  Table table;
  table.header = {"omega", "response_f", "response_p", "divergence_flag",
                  "warnings"};
  table.metadata = base_metadata("detector", c);
  table.metadata["k"] = c.k;
  table.metadata["u0"] = c.u0;
  if (c.alpha_set) table.metadata["alpha"] = c.alpha;
  table.metadata["rel_tol"] = cfg.rel_tol;
  table.metadata["abs_tol"] = cfg.abs_tol;

  const std::size_t n = omegas.size();
  table.rows.assign(n, {});
  std::atomic<bool> numeric_ok{true};
  parallel_rows(n, c.jobs, [&](std::size_t i) {
    const double w = omegas[i];
    const auto f = mirrorrad::detector_response(w, field, traj, c.alpha,
                                                mirror, cfg, method);
    if (!std::isfinite(f.value)) numeric_ok.store(false);
    table.rows[i] = {w, f.value, mirrorrad::detector_response_rate(w, c.k),
                     f.divergence_flag, join_warnings(f.warnings)};
  });
  write_table(table, c);
  return numeric_ok.load() ? kExitOk : kExitNumeric;
}

// ---------------------------------------------------------------------------
// modes subcommand: mode functions sampled on a u grid

struct ModesOpts {
  CommonOpts common;
  double omega = 0.0;
  std::string u_spec;
  std::string mode = "refl";
};

int run_modes(const ModesOpts& opt) {
  const CommonOpts& c = opt.common;
  if (parse_mirror(c) != MirrorKind::SemiTransparent) {
    throw ValidationError(
        "modes samples the semi-transparent phi^refl/phi^trans displays; "
        "use --mirror semitransparent");
  }
  require_alpha(c);
  const FieldType field = parse_field(c);
  const auto us = parse_grid(opt.u_spec, "--u");
  const auto traj = CollapseTrajectory::finite(c.k, c.u0);
  const QuadratureConfig cfg = quad_config(c);
  const bool refl = opt.mode == "refl";

  Table table;
  table.header = {"u", "re_value", "im_value", "err_estimate", "warnings"};
  table.metadata = base_metadata("modes", c);
  table.metadata["mode"] = opt.mode;
  table.metadata["k"] = c.k;
  table.metadata["u0"] = c.u0;
  table.metadata["alpha"] = c.alpha;
  table.metadata["omega"] = opt.omega;
  table.metadata["rel_tol"] = cfg.rel_tol;
  table.metadata["abs_tol"] = cfg.abs_tol;

  const std::size_t n = us.size();
  table.rows.assign(n, {});
  std::atomic<bool> numeric_ok{true};
  parallel_rows(n, c.jobs, [&](std::size_t i) {
    const double u = us[i];
    mirrorrad::ModeValue m;
    if (field == FieldType::Scalar) {
      m = refl ? mirrorrad::mode_refl_scalar(traj, c.alpha, opt.omega, u, cfg)
               : mirrorrad::mode_trans_scalar(traj, c.alpha, opt.omega, u,
                                              cfg);
    } else {
      m = refl
              ? mirrorrad::mode_refl_fermion(traj, c.alpha, opt.omega, u, cfg)
              : mirrorrad::mode_trans_fermion(traj, c.alpha, opt.omega, u,
                                              cfg);
    }
    if (m.status == QuadStatus::SubdivisionLimit ||
        !std::isfinite(m.value.real())) {
      numeric_ok.store(false);
    }
    table.rows[i] = {u, m.value.real(), m.value.imag(), m.err_estimate, ""};
  });
  write_table(table, c);
  return numeric_ok.load() ? kExitOk : kExitNumeric;
}

// ---------------------------------------------------------------------------
// check-trajectory subcommand

struct CheckOpts {
  CommonOpts common;
  bool eternal = false;
};

int run_check(const CheckOpts& opt) {
  const CommonOpts& c = opt.common;
  const auto traj = opt.eternal ? CollapseTrajectory::eternal(c.k)
                                : CollapseTrajectory::finite(c.k, c.u0);
  const auto rep = mirrorrad::classify(traj);

  Table table;
  table.header = {"b1",
                  "b2",
                  "integral_neg",
                  "integral_pos",
                  "asymptotically_inertial",
                  "condition_c",
                  "infrared_safe",
                  "acceleration_jumps"};
  table.metadata = base_metadata("check-trajectory", c);
  table.metadata["k"] = c.k;
  table.metadata["variant"] = opt.eternal ? "eternal" : "finite";
  if (!opt.eternal) table.metadata["u0"] = c.u0;

  json jumps = json::array();
  std::string jumps_csv;
  for (double j : rep.acceleration_jumps) {
    jumps.push_back(j);
    if (!jumps_csv.empty()) jumps_csv += ";";
    jumps_csv += fmt_double(j);
  }
  table.rows.push_back({rep.b1, rep.b2, rep.integral_neg, rep.integral_pos,
                        rep.asymptotically_inertial, rep.condition_c,
                        rep.infrared_safe,
                        c.format == "json" ? jumps : json(jumps_csv)});
  write_table(table, c);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radiation from a collapse-simulating moving mirror: "
               "Bogoliubov coefficients, spectra and detector response"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("mirrorrad ") + kVersion);

  BetaOpts beta;
  auto* cmd_beta = app.add_subcommand(
      "beta", "One Bogoliubov coefficient or a grid of them");
  cmd_beta->add_option("--field", beta.common.field)
      ->check(CLI::IsMember({"scalar", "dirac"}))
      ->capture_default_str();
  cmd_beta->add_option("--mirror", beta.common.mirror)
      ->check(CLI::IsMember({"perfect", "semitransparent"}))
      ->capture_default_str();
  cmd_beta->add_option("--channel", beta.channel)
      ->check(CLI::IsMember({"rr", "rl"}))
      ->capture_default_str();
  cmd_beta->add_option("--k", beta.common.k, "Collapse rate")->required();
  cmd_beta->add_option("--u0", beta.common.u0, "End of the accelerating stretch")
      ->required();
  cmd_beta->add_option("--alpha", beta.common.alpha, "Mirror coupling")
      ->check(CLI::NonNegativeNumber);
  cmd_beta->add_option("--omega", beta.omega_spec, "Out frequency (grid spec)")
      ->required();
  cmd_beta
      ->add_option("--omega-prime", beta.omega_prime_spec,
                   "In frequency (grid spec)")
      ->required();
  add_tol_opts(cmd_beta, beta.common);
  add_io_opts(cmd_beta, beta.common);

  SpectrumOpts spectrum;
  auto* cmd_spectrum = app.add_subcommand(
      "spectrum", "|beta|^2 against omega' at fixed omega");
  cmd_spectrum->add_option("--field", spectrum.common.field)
      ->check(CLI::IsMember({"scalar", "dirac"}))
      ->capture_default_str();
  cmd_spectrum->add_option("--mirror", spectrum.common.mirror)
      ->check(CLI::IsMember({"perfect", "semitransparent"}))
      ->capture_default_str();
  cmd_spectrum->add_option("--k", spectrum.common.k)->required();
  cmd_spectrum->add_option("--u0", spectrum.common.u0)->required();
  cmd_spectrum->add_option("--alpha", spectrum.common.alpha)
      ->check(CLI::NonNegativeNumber);
  cmd_spectrum->add_option("--omega", spectrum.omega, "Out frequency")
      ->required();
  cmd_spectrum
      ->add_option("--omega-prime", spectrum.omega_prime_spec,
                   "In-frequency grid spec")
      ->required();
  add_tol_opts(cmd_spectrum, spectrum.common);
  add_io_opts(cmd_spectrum, spectrum.common);

  NOmegaOpts nomega;
  auto* cmd_nomega =
      app.add_subcommand("nomega", "Produced particles N_omega over a grid");
  cmd_nomega->add_option("--field", nomega.common.field)
      ->check(CLI::IsMember({"scalar", "dirac"}))
      ->capture_default_str();
  cmd_nomega->add_option("--mirror", nomega.common.mirror)
      ->check(CLI::IsMember({"perfect", "semitransparent"}))
      ->capture_default_str();
  cmd_nomega->add_option("--k", nomega.common.k)->required();
  cmd_nomega->add_option("--u0", nomega.common.u0)->required();
  cmd_nomega->add_option("--alpha", nomega.common.alpha)
      ->check(CLI::NonNegativeNumber);
  cmd_nomega->add_option("--omega", nomega.omega_spec, "Frequency grid spec")
      ->required();
  add_tol_opts(cmd_nomega, nomega.common);
  add_io_opts(cmd_nomega, nomega.common);

  CommonOpts energy;
  auto* cmd_energy = app.add_subcommand(
      "energy", "Total radiated energy, scalar semi-transparent");
  cmd_energy->add_option("--alpha", energy.alpha, "Mirror coupling")
      ->check(CLI::NonNegativeNumber);
  cmd_energy->add_option("--k", energy.k, "Collapse rate")->required();
  cmd_energy->add_option("--u0", energy.u0)->capture_default_str();
  add_tol_opts(cmd_energy, energy);
  add_io_opts(cmd_energy, energy);

  DetectorOpts detector;
  detector.common.method = "asymptotic";
  auto* cmd_detector = app.add_subcommand(
      "detector", "Inertial detector response F(omega) and rate P(omega)");
  cmd_detector->add_option("--field", detector.common.field)
      ->check(CLI::IsMember({"scalar", "dirac"}))
      ->capture_default_str();
  cmd_detector->add_option("--mirror", detector.common.mirror)
      ->check(CLI::IsMember({"perfect", "semitransparent"}))
      ->capture_default_str();
  cmd_detector->add_option("--k", detector.common.k)->required();
  cmd_detector->add_option("--u0", detector.common.u0)->capture_default_str();
  cmd_detector->add_option("--alpha", detector.common.alpha)
      ->check(CLI::NonNegativeNumber);
  cmd_detector
      ->add_option("--omega", detector.omega_spec, "Frequency grid spec")
      ->required();
  add_tol_opts(cmd_detector, detector.common);
  add_io_opts(cmd_detector, detector.common);

  ModesOpts modes;
  auto* cmd_modes = app.add_subcommand(
      "modes", "Sample a reflected/transmitted mode function over u");
  cmd_modes->add_option("--field", modes.common.field)
      ->check(CLI::IsMember({"scalar", "dirac"}))
      ->capture_default_str();
  cmd_modes->add_option("--mirror", modes.common.mirror)
      ->check(CLI::IsMember({"perfect", "semitransparent"}))
      ->capture_default_str();
  cmd_modes->add_option("--mode", modes.mode)
      ->check(CLI::IsMember({"refl", "trans"}))
      ->capture_default_str();
  cmd_modes->add_option("--k", modes.common.k)->required();
  cmd_modes->add_option("--u0", modes.common.u0)->required();
  cmd_modes->add_option("--alpha", modes.common.alpha)
      ->check(CLI::NonNegativeNumber);
  cmd_modes->add_option("--omega", modes.omega, "Mode frequency")->required();
  cmd_modes->add_option("--u", modes.u_spec, "Retarded-time grid spec")
      ->required();
  add_tol_opts(cmd_modes, modes.common);
  add_io_opts(cmd_modes, modes.common);

  CheckOpts check;
  check.common.format = "json";
  auto* cmd_check = app.add_subcommand(
      "check-trajectory", "Integrability and infrared classification");
  cmd_check->add_option("--k", check.common.k)->required();
  cmd_check->add_option("--u0", check.common.u0);
  cmd_check->add_flag("--eternal", check.eternal,
                      "Eternal collapse variant (horizon at v = 1/k)");
  add_io_opts(cmd_check, check.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  auto mark_set = [&](CLI::App* cmd, CommonOpts& c) {
    c.alpha_set = cmd->count("--alpha") > 0;
    c.rel_tol_set = cmd->count("--rel-tol") > 0;
  };
  mark_set(cmd_beta, beta.common);
  mark_set(cmd_spectrum, spectrum.common);
  mark_set(cmd_nomega, nomega.common);
  mark_set(cmd_energy, energy);
  mark_set(cmd_detector, detector.common);
  mark_set(cmd_modes, modes.common);

  try {
    if (cmd_beta->parsed()) return run_beta(beta);
    if (cmd_spectrum->parsed()) return run_spectrum(spectrum);
    if (cmd_nomega->parsed()) return run_nomega(nomega);
    if (cmd_energy->parsed()) return run_energy(energy);
    if (cmd_detector->parsed()) return run_detector(detector);
    if (cmd_modes->parsed()) return run_modes(modes);
    if (cmd_check->parsed()) return run_check(check);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const mirrorrad::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitValidation;
}
