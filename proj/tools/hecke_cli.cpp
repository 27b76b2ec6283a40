// Batch driver. Talks to the library only through hecke/hecke.h.
#include <hecke/hecke.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using nlohmann::ordered_json;

namespace {

enum Exit { kPass = 0, kIdentityFailed = 1, kConfigError = 2, kNumericError = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Parsing helpers

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n"), e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double parse_real(const std::string& text, const std::string& what) {
  std::string s = trim(text);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0' || !std::isfinite(v)) throw UsageError(what + ": not a number: '" + text + "'");
  return v;
}

int parse_int(const std::string& text, const std::string& what) {
  double v = parse_real(text, what);
  if (v != std::floor(v) || std::abs(v) > 1e6) throw UsageError(what + ": not an integer: '" + text + "'");
  return static_cast<int>(v);
}

// "7", "1.2+0.5i", "-3i", "i", "0.5 - 2i"
hecke_complex parse_complex(const std::string& text, const std::string& what) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw UsageError(what + ": empty value");
  if (s.back() != 'i') return {parse_real(s, what), 0.0};
  s.pop_back();
  // split at the last sign that is not part of an exponent
  std::size_t cut = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      cut = i;
      break;
    }
  auto imag = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t, what);
  };
  if (cut == std::string::npos) return {0.0, imag(s)};
  return {parse_real(s.substr(0, cut), what), imag(s.substr(cut))};
}

// Lists are separated by commas and/or whitespace (the INI reader keeps only the latter).
std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  for (char ch : text + ",") {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else {
      item += ch;
    }
  }
  return out;
}

std::string format_complex(hecke_complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g%+.3gi", z.re, z.im);
  return buf;
}

// ---------------------------------------------------------------------------
// Run configuration: config file first, flags on top.

struct RunConfig {
  std::string scenario = "zeta";
  std::vector<std::string> identities{"all"};
  std::optional<std::string> u, v, k, x, gamma, h, abscissa, series_tol;
  std::map<std::string, double> tolerances;  // per identity
  // sweep grid
  std::optional<std::string> u_grid, v_grid, k_grid, x_grid;
  std::string out;
  std::string format;
  int threads = 0;
};

void apply_setting(RunConfig& rc, const std::string& section, const std::string& key, const std::string& value) {
  const std::string where = "[" + section + "] " + key;
  if (section == "run") {
    if (key == "scenario") rc.scenario = trim(value);
    else if (key == "identity") rc.identities = split_list(value);
    else if (key == "u") rc.u = value;
    else if (key == "v") rc.v = value;
    else if (key == "k") rc.k = value;
    else if (key == "x") rc.x = value;
    else if (key == "gamma") rc.gamma = value;
    else throw UsageError("unknown key " + where);
  } else if (section == "tolerances") {
    rc.tolerances[key] = parse_real(value, where);
  } else if (section == "truncation") {
    if (key == "h") rc.h = value;
    else if (key == "series_tol") rc.series_tol = value;
    else if (key == "abscissa") rc.abscissa = value;
    else throw UsageError("unknown key " + where);
  } else if (section == "sweep") {
    if (key == "u") rc.u_grid = value;
    else if (key == "v") rc.v_grid = value;
    else if (key == "k") rc.k_grid = value;
    else if (key == "x") rc.x_grid = value;
    else throw UsageError("unknown key " + where);
  } else if (section == "output") {
    if (key == "path") rc.out = trim(value);
    else if (key == "format") rc.format = trim(value);
    else if (key == "threads") rc.threads = parse_int(value, where);
    else throw UsageError("unknown key " + where);
  } else {
    throw UsageError("unknown section [" + section + "]");
  }
}

void load_config_file(RunConfig& rc, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  CLI::ConfigINI ini;
  for (const CLI::ConfigItem& item : ini.from_config(in)) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    std::string section = item.parents.empty() ? "run" : item.parents.front();
    std::string value;
    for (const std::string& s : item.inputs) value += (value.empty() ? "" : " ") + s;
    apply_setting(rc, section, item.name, value);
  }
}

// Tolerance overrides: identity names set that identity's tolerance; "h",
// "series_tol" and "abscissa" are truncation settings.
void apply_override(RunConfig& rc, const std::string& kv) {
  auto eq = kv.find('=');
  if (eq == std::string::npos) throw UsageError("--tol-override expects KEY=VAL, got '" + kv + "'");
  std::string key = trim(kv.substr(0, eq)), value = trim(kv.substr(eq + 1));
  double t;
  if (hecke_identity_default_tolerance(key.c_str(), &t) == HECKE_OK) {
    rc.tolerances[key] = parse_real(value, "--tol-override " + key);
  } else if (key == "h" || key == "series_tol" || key == "abscissa") {
    apply_setting(rc, "truncation", key, value);
  } else {
    throw UsageError("--tol-override: unknown key '" + key + "'");
  }
}

// ---------------------------------------------------------------------------
// Library handles

struct PairDeleter {
  void operator()(hecke_pair* p) const { hecke_pair_destroy(p); }
};
struct ReportDeleter {
  void operator()(hecke_report* r) const { hecke_report_destroy(r); }
};
using PairPtr = std::unique_ptr<hecke_pair, PairDeleter>;
using ReportPtr = std::unique_ptr<hecke_report, ReportDeleter>;

struct LibraryError : std::runtime_error {
  hecke_status status;
  LibraryError(hecke_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(hecke_status s) {
  if (s != HECKE_OK) throw LibraryError(s, hecke_last_error());
}

PairPtr make_pair(const std::string& scenario) {
  hecke_pair* p = nullptr;
  check(hecke_pair_create(scenario.c_str(), &p));
  return PairPtr(p);
}

std::vector<std::string> expand_identities(const std::vector<std::string>& ids) {
  std::vector<std::string> out;
  for (const std::string& id : ids) {
    if (id == "all") {
      for (size_t i = 0; i < hecke_identity_count(); ++i) out.push_back(hecke_identity_name(i));
      continue;
    }
    double t;
    if (hecke_identity_default_tolerance(id.c_str(), &t) != HECKE_OK) throw UsageError("unknown identity '" + id + "'");
    out.push_back(id);
  }
  if (out.empty()) throw UsageError("no identity selected");
  return out;
}

hecke_config base_config(const RunConfig& rc) {
  hecke_config c{};
  check(hecke_default_config(rc.scenario.c_str(), &c));
  if (rc.u) c.u = parse_complex(*rc.u, "u");
  if (rc.v) c.v = parse_complex(*rc.v, "v");
  if (rc.k) c.k = parse_int(*rc.k, "k");
  if (rc.x) c.x = parse_real(*rc.x, "x");
  if (rc.gamma) c.gamma = parse_real(*rc.gamma, "gamma");
  if (rc.h) c.h = parse_real(*rc.h, "h");
  if (rc.series_tol) c.series_tol = parse_real(*rc.series_tol, "series_tol");
  if (rc.abscissa) {
    c.has_abscissa = 1;
    c.abscissa = parse_real(*rc.abscissa, "abscissa");
  }
  if (!(c.x > 0.0)) throw UsageError("x must be positive");
  return c;
}

int thread_count(const RunConfig& rc) {
  if (rc.threads > 0) return rc.threads;
  if (const char* env = std::getenv("HECKE_THREADS")) {
    int n = parse_int(env, "HECKE_THREADS");
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs jobs 0..n-1 on a small pool; results land in caller-owned slots, so the
// output order never depends on scheduling.
template <class F>
void parallel_for(std::size_t n, int threads, F&& job) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) job(i);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::min<int>(threads, static_cast<int>(n)); ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
}

// ---------------------------------------------------------------------------
// Reports

ordered_json cjson(hecke_complex z) { return {{"re", z.re}, {"im", z.im}}; }

ordered_json params_json(const hecke_config& c) {
  ordered_json j;
  j["u"] = cjson(c.u);
  j["v"] = cjson(c.v);
  j["k"] = c.k;
  j["x"] = c.x;
  j["gamma"] = c.gamma;
  j["abscissa"] = c.has_abscissa ? ordered_json(c.abscissa) : ordered_json(nullptr);
  j["h"] = c.h;
  j["series_tol"] = c.series_tol;
  return j;
}

struct Outcome {
  std::string identity;
  hecke_config config{};
  ReportPtr report;
  hecke_status status = HECKE_OK;
  std::string message;
};

ordered_json outcome_json(const std::string& scenario, const Outcome& o) {
  ordered_json j;
  j["identity"] = o.identity;
  j["scenario"] = scenario;
  j["params"] = params_json(o.config);
  if (!o.report) {
    j["status"] = hecke_status_name(o.status);
    j["message"] = o.message;
    return j;
  }
  const hecke_report* r = o.report.get();
  j["status"] = "ok";
  j["lhs"] = cjson(hecke_report_lhs(r));
  j["rhs"] = cjson(hecke_report_rhs(r));
  j["abs_residual"] = hecke_report_abs_residual(r);
  j["rel_residual"] = hecke_report_rel_residual(r);
  j["tolerance"] = hecke_report_tolerance(r);
  j["pass"] = hecke_report_pass(r) != 0;
  ordered_json terms = ordered_json::array();
  for (size_t i = 0; i < hecke_report_term_count(r); ++i)
    terms.push_back({{"name", hecke_report_term_name(r, i)}, {"value", cjson(hecke_report_term_value(r, i))}});
  j["terms"] = terms;
  ordered_json settings = ordered_json::object();
  for (size_t i = 0; i < hecke_report_setting_count(r); ++i)
    settings[hecke_report_setting_name(r, i)] = hecke_report_setting_value(r, i);
  j["settings"] = settings;
  j["wall_seconds"] = hecke_report_seconds(r);
  return j;
}

void print_text(std::ostream& os, const std::string& scenario, const std::vector<Outcome>& outcomes) {
  char line[512];
  for (const Outcome& o : outcomes) {
    std::snprintf(line, sizeof line, "%-12s %-8s u=%s v=%s k=%d x=%g gamma=%g\n", o.identity.c_str(), scenario.c_str(),
                  format_complex(o.config.u).c_str(), format_complex(o.config.v).c_str(), o.config.k, o.config.x,
                  o.config.gamma);
    os << line;
    if (!o.report) {
      os << "  ERROR (" << hecke_status_name(o.status) << "): " << o.message << "\n\n";
      continue;
    }
    const hecke_report* r = o.report.get();
    std::snprintf(line, sizeof line, "  %-24s %s\n  %-24s %s\n  %-24s %.3e  (abs %.3e, tol %.1e)  %s\n", "lhs",
                  format_complex(hecke_report_lhs(r)).c_str(), "rhs", format_complex(hecke_report_rhs(r)).c_str(),
                  "relative residual", hecke_report_rel_residual(r), hecke_report_abs_residual(r),
                  hecke_report_tolerance(r), hecke_report_pass(r) ? "PASS" : "FAIL");
    os << line;
    for (size_t i = 0; i < hecke_report_term_count(r); ++i) {
      std::snprintf(line, sizeof line, "    %-28s %s\n", hecke_report_term_name(r, i),
                    format_complex(hecke_report_term_value(r, i)).c_str());
      os << line;
    }
    for (size_t i = 0; i < hecke_report_setting_count(r); ++i) {
      std::snprintf(line, sizeof line, "    %-28s %.6g\n", hecke_report_setting_name(r, i),
                    hecke_report_setting_value(r, i));
      os << line;
    }
    std::snprintf(line, sizeof line, "    %-28s %.2f s\n\n", "wall time", hecke_report_seconds(r));
    os << line;
  }
}

Outcome run_one(const hecke_pair* pair, const std::string& identity, hecke_config c, const RunConfig& rc) {
  Outcome o;
  o.identity = identity;
  c.tol = rc.tolerances.count(identity) ? rc.tolerances.at(identity) : 0.0;
  o.config = c;
  hecke_report* r = nullptr;
  o.status = hecke_verify(pair, identity.c_str(), &c, &r);
  if (o.status == HECKE_OK) {
    o.report.reset(r);
    o.config = hecke_report_config(r);
  } else {
    o.message = hecke_last_error();
  }
  return o;
}

int exit_code(const std::vector<Outcome>& outcomes) {
  int code = kPass;
  for (const Outcome& o : outcomes) {
    if (!o.report) {
      int c = (o.status == HECKE_EINVAL || o.status == HECKE_EHYPOTHESIS) ? kConfigError : kNumericError;
      code = std::max(code, c);
    } else if (!hecke_report_pass(o.report.get())) {
      code = std::max(code, static_cast<int>(kIdentityFailed));
    }
  }
  return code;
}

// Destination: --out path or stdout.
struct Sink {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path);
    if (!file) throw UsageError("cannot write '" + path + "'");
    os = &file;
  }
};

// ---------------------------------------------------------------------------
// Subcommands

int cmd_check(const RunConfig& rc) {
  const std::string format = rc.format.empty() ? "text" : rc.format;
  if (format != "json" && format != "text") throw UsageError("check: --format must be json or text");
  std::vector<std::string> ids = expand_identities(rc.identities);
  PairPtr pair = make_pair(rc.scenario);
  hecke_config c = base_config(rc);

  // Gate before any series is summed.
  size_t violated = 0;
  if (hecke_check_hypotheses(pair.get(), &c, &violated) != HECKE_OK) {
    std::cerr << "hecke: configuration rejected: " << hecke_last_error() << "\n";
    return kConfigError;
  }

  std::vector<Outcome> outcomes(ids.size());
  parallel_for(ids.size(), thread_count(rc), [&](std::size_t i) { outcomes[i] = run_one(pair.get(), ids[i], c, rc); });

  int code = exit_code(outcomes);
  Sink sink(rc.out);
  if (format == "json") {
    ordered_json doc;
    doc["schema"] = "hecke-report/1";
    doc["scenario"] = hecke_pair_name(pair.get());
    doc["delta"] = hecke_pair_delta(pair.get());
    ordered_json reports = ordered_json::array();
    for (const Outcome& o : outcomes) reports.push_back(outcome_json(hecke_pair_name(pair.get()), o));
    doc["reports"] = reports;
    doc["all_pass"] = code == kPass;
    doc["exit_code"] = code;
    *sink.os << doc.dump(2) << "\n";
  } else {
    print_text(*sink.os, hecke_pair_name(pair.get()), outcomes);
    *sink.os << (code == kPass ? "all identities pass\n" : "not all identities pass (exit " + std::to_string(code) + ")\n");
  }
  for (const Outcome& o : outcomes)
    if (!o.report) std::cerr << "hecke: " << o.identity << ": " << o.message << "\n";
  return code;
}

int cmd_sweep(const RunConfig& rc) {
  const std::string format = rc.format.empty() ? "csv" : rc.format;
  if (format != "csv" && format != "json" && format != "text") throw UsageError("sweep: --format must be csv, json or text");
  std::vector<std::string> ids = expand_identities(rc.identities);
  PairPtr pair = make_pair(rc.scenario);
  hecke_config base = base_config(rc);

  auto grid = [](const std::optional<std::string>& g, const std::string& fallback) {
    return g ? split_list(*g) : std::vector<std::string>{fallback};
  };
  char buf[64];
  auto cstr = [&](hecke_complex z) {
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.re, z.im);
    return std::string(buf);
  };
  std::vector<hecke_complex> us, vs;
  std::vector<int> ks;
  std::vector<double> xs;
  for (const std::string& s : grid(rc.u_grid, cstr(base.u))) us.push_back(parse_complex(s, "sweep u"));
  for (const std::string& s : grid(rc.v_grid, cstr(base.v))) vs.push_back(parse_complex(s, "sweep v"));
  for (const std::string& s : grid(rc.k_grid, std::to_string(base.k))) ks.push_back(parse_int(s, "sweep k"));
  for (const std::string& s : grid(rc.x_grid, std::to_string(base.x))) {
    double x = parse_real(s, "sweep x");
    if (!(x > 0.0)) throw UsageError("sweep x must be positive");
    xs.push_back(x);
  }
  const std::size_t n = ids.size() * us.size() * vs.size() * ks.size() * xs.size();
  if (n > 10000) throw UsageError("sweep grid has " + std::to_string(n) + " points; the limit is 10000");

  struct Row {
    hecke_config c{};
    std::string identity, status;
    Outcome outcome;
  };
  std::vector<Row> rows;
  rows.reserve(n);
  for (const std::string& id : ids)
    for (hecke_complex u : us)
      for (hecke_complex v : vs)
        for (int k : ks)
          for (double x : xs) {
            Row r;
            r.c = base;
            r.c.u = u, r.c.v = v, r.c.k = k, r.c.x = x;
            r.identity = id;
            rows.push_back(std::move(r));
          }

  // Gate every point first; violating rows are reported, not run.
  for (Row& r : rows)
    if (hecke_check_hypotheses(pair.get(), &r.c, nullptr) != HECKE_OK) {
      r.status = "skipped: hypothesis";
      r.outcome.identity = r.identity;
      r.outcome.config = r.c;
      r.outcome.status = HECKE_EHYPOTHESIS;
      r.outcome.message = hecke_last_error();
    }
  parallel_for(rows.size(), thread_count(rc), [&](std::size_t i) {
    Row& r = rows[i];
    if (!r.status.empty()) return;
    r.outcome = run_one(pair.get(), r.identity, r.c, rc);
    if (!r.outcome.report) r.status = std::string("error: ") + hecke_status_name(r.outcome.status);
    else r.status = hecke_report_pass(r.outcome.report.get()) ? "pass" : "fail";
  });

  int code = kPass;
  for (const Row& r : rows) {
    if (r.status.rfind("error", 0) == 0) code = std::max(code, static_cast<int>(kNumericError));
    if (r.status == "fail") code = std::max(code, static_cast<int>(kIdentityFailed));
  }

  Sink sink(rc.out);
  const std::string scenario = hecke_pair_name(pair.get());
  if (format == "csv") {
    std::ostream& os = *sink.os;
    os << "identity,scenario,u_re,u_im,v_re,v_im,k,x,gamma,lhs_re,lhs_im,rhs_re,rhs_im,abs_residual,rel_residual,"
          "tolerance,status,seconds\n";
    for (const Row& r : rows) {
      auto g = [&](double d) {
        std::snprintf(buf, sizeof buf, "%.17g", d);
        return std::string(buf);
      };
      os << r.identity << ',' << scenario << ',' << g(r.c.u.re) << ',' << g(r.c.u.im) << ',' << g(r.c.v.re) << ','
         << g(r.c.v.im) << ',' << r.c.k << ',' << g(r.c.x) << ',' << g(r.c.gamma) << ',';
      if (const hecke_report* rep = r.outcome.report.get()) {
        os << g(hecke_report_lhs(rep).re) << ',' << g(hecke_report_lhs(rep).im) << ',' << g(hecke_report_rhs(rep).re)
           << ',' << g(hecke_report_rhs(rep).im) << ',' << g(hecke_report_abs_residual(rep)) << ','
           << g(hecke_report_rel_residual(rep)) << ',' << g(hecke_report_tolerance(rep)) << ',' << r.status << ','
           << g(hecke_report_seconds(rep)) << '\n';
      } else {
        os << ",,,,,,," << r.status << ",\n";
      }
    }
  } else if (format == "json") {
    ordered_json doc;
    doc["schema"] = "hecke-sweep/1";
    doc["scenario"] = scenario;
    ordered_json arr = ordered_json::array();
    for (const Row& r : rows) {
      ordered_json j = outcome_json(scenario, r.outcome);
      j["row_status"] = r.status;
      arr.push_back(j);
    }
    doc["rows"] = arr;
    doc["exit_code"] = code;
    *sink.os << doc.dump(2) << "\n";
  } else {
    std::vector<Outcome> outs;
    for (Row& r : rows) outs.push_back(std::move(r.outcome));
    print_text(*sink.os, scenario, outs);
  }
  return code;
}

int cmd_list(const RunConfig& rc) {
  const std::string format = rc.format.empty() ? "text" : rc.format;
  ordered_json arr = ordered_json::array();
  Sink sink(rc.out);
  for (size_t i = 0; i < hecke_scenario_count(); ++i) {
    std::string name = hecke_scenario_name(i);
    PairPtr p = make_pair(name);
    hecke_config c{};
    check(hecke_default_config(name.c_str(), &c));
    if (format == "json") {
      ordered_json j;
      j["name"] = name;
      j["delta"] = hecke_pair_delta(p.get());
      j["capacity"] = hecke_pair_capacity(p.get());
      j["defaults"] = params_json(c);
      arr.push_back(j);
    } else {
      char line[256];
      std::snprintf(line, sizeof line, "%-8s delta=%-5g N=%-6zu defaults: u=%s v=%s k=%d gamma=%g h=%g\n", name.c_str(),
                    hecke_pair_delta(p.get()), hecke_pair_capacity(p.get()), format_complex(c.u).c_str(),
                    format_complex(c.v).c_str(), c.k, c.gamma, c.h);
      *sink.os << line;
    }
  }
  if (format == "json") *sink.os << arr.dump(2) << "\n";
  return kPass;
}

// Quick end-to-end checks through the public API.
int cmd_selftest(const RunConfig&) {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s  %-44s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    failures += !ok;
  };
  char buf[128];
  try {
    PairPtr tau = make_pair("tau");
    double t2 = 0, t12 = 0;
    check(hecke_pair_coefficient(tau.get(), 0, 2, &t2));
    check(hecke_pair_coefficient(tau.get(), 0, 12, &t12));
    report("tau(2) = -24, tau(12) = -370944", t2 == -24 && t12 == -370944, "");

    hecke_config bad{};
    check(hecke_default_config("tau", &bad));
    bad.k = 2;
    size_t nv = 0;
    hecke_status s = hecke_check_hypotheses(tau.get(), &bad, &nv);
    report("hypothesis gate names k > 2γ − δ",
           s == HECKE_EHYPOTHESIS && std::string(hecke_last_error()).find("k > 2γ − δ") != std::string::npos, "");

    for (const char* scen : {"zeta", "tau", "sigma3"}) {
      PairPtr p = make_pair(scen);
      hecke_config c{};
      check(hecke_default_config(scen, &c));
      c.x = 1.3;
      hecke_report* r = nullptr;
      check(hecke_verify(p.get(), "s2", &c, &r));
      ReportPtr rp(r);
      std::snprintf(buf, sizeof buf, "rel %.2e", hecke_report_rel_residual(r));
      report(std::string("s2 on ") + scen, hecke_report_pass(r), buf);

      hecke_complex a{}, b{};
      check(hecke_g_series(p.get(), &c, 0, 1, 1e-10, &b, nullptr));
      // target 1e-6 (1 + |G|), as a relative tolerance for the direct route
      double mag = std::hypot(b.re, b.im);
      check(hecke_g_series(p.get(), &c, 0, 0, 1e-6 * (1.0 + mag) / mag, &a, nullptr));
      double diff = std::hypot(a.re - b.re, a.im - b.im);
      std::snprintf(buf, sizeof buf, "|A-B| %.2e", diff);
      report(std::string("G routes agree on ") + scen + " at x = 1.3", diff <= 1e-5 * (1.0 + std::hypot(b.re, b.im)),
             buf);
    }
  } catch (const LibraryError& e) {
    report("library call", false, e.what());
  }
  return failures ? kIdentityFailed : kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of the product formula for Dirichlet series with Hecke's functional equation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hecke_version()));

  RunConfig flags;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string identity_list;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Config file (INI: [run] [tolerances] [truncation] [sweep] [output])");
    sub->add_option("--out", flags.out, "Write the report here instead of stdout");
    sub->add_option("--format", flags.format, "json | text | csv");
    sub->add_option("--threads", flags.threads, "Worker threads (default: $HECKE_THREADS, else all cores)");
  };
  auto params = [&](CLI::App* sub) {
    sub->add_option("--scenario", flags.scenario, "tau | zeta | sigma<l>");
    sub->add_option("--identity", identity_list, "Identity name(s), comma separated, or 'all'");
    sub->add_option("--u", flags.u, "Complex, as 're+imi'");
    sub->add_option("--v", flags.v, "Complex, as 're+imi'");
    sub->add_option("--k", flags.k, "Riesz order");
    sub->add_option("--x", flags.x, "Riesz point (positive)");
    sub->add_option("--gamma", flags.gamma, "Contour parameter (default per scenario)");
    sub->add_option("--step", flags.h, "Finite-difference step h");
    sub->add_option("--abscissa", flags.abscissa, "Perron line");
    sub->add_option("--tol-override", overrides, "KEY=VAL: identity tolerance, or h / series_tol / abscissa");
  };

  CLI::App* check_cmd = app.add_subcommand("check", "Verify identities for one parameter set");
  common(check_cmd);
  params(check_cmd);
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Residuals over a parameter grid");
  common(sweep_cmd);
  params(sweep_cmd);
  sweep_cmd->add_option("--u-grid", flags.u_grid, "Comma separated u values");
  sweep_cmd->add_option("--v-grid", flags.v_grid, "Comma separated v values");
  sweep_cmd->add_option("--k-grid", flags.k_grid, "Comma separated k values");
  sweep_cmd->add_option("--x-grid", flags.x_grid, "Comma separated x values");
  CLI::App* list_cmd = app.add_subcommand("list-scenarios", "Built-in scenarios and their defaults");
  common(list_cmd);
  CLI::App* self_cmd = app.add_subcommand("selftest", "Quick end-to-end checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    // Config file first, then only the flags that were actually given.
    RunConfig rc;
    if (!config_path.empty()) load_config_file(rc, config_path);
    auto given = [&](const char* name) { return active->get_option_no_throw(name) && active->count(name) > 0; };
    if (given("--scenario")) rc.scenario = flags.scenario;
    if (given("--identity")) rc.identities = split_list(identity_list);
    for (auto [name, field] : std::initializer_list<std::pair<const char*, std::optional<std::string> RunConfig::*>>{
             {"--u", &RunConfig::u},
             {"--v", &RunConfig::v},
             {"--k", &RunConfig::k},
             {"--x", &RunConfig::x},
             {"--gamma", &RunConfig::gamma},
             {"--step", &RunConfig::h},
             {"--abscissa", &RunConfig::abscissa},
             {"--u-grid", &RunConfig::u_grid},
             {"--v-grid", &RunConfig::v_grid},
             {"--k-grid", &RunConfig::k_grid},
             {"--x-grid", &RunConfig::x_grid}})
      if (given(name)) rc.*field = flags.*field;
    if (given("--out")) rc.out = flags.out;
    if (given("--format")) rc.format = flags.format;
    if (given("--threads")) rc.threads = flags.threads;
    for (const std::string& kv : overrides) apply_override(rc, kv);

    if (active == check_cmd) return cmd_check(rc);
    if (active == sweep_cmd) return cmd_sweep(rc);
    if (active == list_cmd) return cmd_list(rc);
    if (active == self_cmd) return cmd_selftest(rc);
  } catch (const UsageError& e) {
    std::cerr << "hecke: " << e.what() << "\n";
    return kConfigError;
  } catch (const LibraryError& e) {
    std::cerr << "hecke: " << e.what() << "\n";
    return (e.status == HECKE_EINVAL || e.status == HECKE_EHYPOTHESIS) ? kConfigError : kNumericError;
  }
  return kConfigError;
}
