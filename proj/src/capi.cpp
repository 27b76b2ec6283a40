#include "hecke/hecke.h"

#include <exception>
#include <new>
#include <string>

#include "error.hpp"
#include "gseries.hpp"

using namespace hecke;

struct hecke_pair {
  HeckePair pair;
};

struct hecke_report {
  VerificationReport report;
  std::string identity;
};

namespace {

thread_local std::string last_error;

hecke_status to_status(Errc e) { return static_cast<hecke_status>(static_cast<int>(e)); }

// Runs f, translating exceptions into status codes and the thread's last error.
template <class F>
hecke_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return HECKE_OK;
  } catch (const Failure& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return HECKE_EINTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return HECKE_EINTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) fail(Errc::invalid_argument, what);
}

cplx in(hecke_complex z) { return {z.re, z.im}; }
hecke_complex out(cplx z) { return {z.real(), z.imag()}; }

VerifyConfig to_core(const hecke_config& c) {
  VerifyConfig v;
  v.u = in(c.u);
  v.v = in(c.v);
  v.k = c.k;
  v.x = c.x;
  v.gamma = c.gamma;
  if (c.has_abscissa) v.abscissa = c.abscissa;
  v.h = c.h;
  v.tol = c.tol;
  v.series_tol = c.series_tol;
  return v;
}

hecke_config from_core(const VerifyConfig& v) {
  hecke_config c{};
  c.u = out(v.u);
  c.v = out(v.v);
  c.k = v.k;
  c.x = v.x;
  c.gamma = v.gamma;
  c.has_abscissa = v.abscissa.has_value();
  c.abscissa = v.abscissa.value_or(0.0);
  c.h = v.h;
  c.tol = v.tol;
  c.series_tol = v.series_tol;
  return c;
}

Identity identity_or_fail(const char* name) {
  require(name != nullptr, "identity name is null");
  std::optional<Identity> id = identity_from_name(name);
  if (!id) fail(Errc::invalid_argument, std::string("unknown identity '") + name + "'");
  return *id;
}

Side side_or_fail(int side) {
  require(side == 0 || side == 1, "side must be 0 (phi) or 1 (psi)");
  return side == 0 ? Side::Phi : Side::Psi;
}

const std::vector<std::string>& scenarios() {
  static const std::vector<std::string> names = scenario_names();
  return names;
}

const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (Identity id : all_identities()) v.push_back(identity_name(id));
    return v;
  }();
  return names;
}

}  // namespace

extern "C" {

const char* hecke_version(void) { return "1.0.0"; }

const char* hecke_status_name(hecke_status s) {
  switch (s) {
    case HECKE_OK: return "ok";
    case HECKE_EINVAL: return "invalid_argument";
    case HECKE_EHYPOTHESIS: return "hypothesis";
    case HECKE_ENUMERIC: return "numeric";
    case HECKE_EPOLE: return "pole";
    case HECKE_ECAPACITY: return "capacity";
    case HECKE_EINTERNAL: return "internal";
  }
  return "unknown";
}

const char* hecke_last_error(void) { return last_error.c_str(); }

size_t hecke_scenario_count(void) { return scenarios().size(); }

const char* hecke_scenario_name(size_t i) { return i < scenarios().size() ? scenarios()[i].c_str() : nullptr; }

hecke_status hecke_pair_create(const char* scenario, hecke_pair** result) {
  return guarded([&] {
    require(scenario && result, "null argument");
    *result = nullptr;
    *result = new hecke_pair{make_scenario(scenario)};
  });
}

void hecke_pair_destroy(hecke_pair* p) { delete p; }

const char* hecke_pair_name(const hecke_pair* p) { return p ? p->pair.name.c_str() : nullptr; }

double hecke_pair_delta(const hecke_pair* p) { return p ? p->pair.delta : 0.0; }

size_t hecke_pair_capacity(const hecke_pair* p) { return p ? p->pair.phi.capacity() : 0; }

hecke_status hecke_pair_coefficient(const hecke_pair* p, int side, size_t n, double* result) {
  return guarded([&] {
    require(p && result, "null argument");
    const SeriesData& s = p->pair.side(side_or_fail(side));
    *result = s.twist * s.table->value(n);
  });
}

hecke_status hecke_pair_evaluate(const hecke_pair* p, int side, hecke_complex s, hecke_complex* result) {
  return guarded([&] {
    require(p && result, "null argument");
    *result = out(evaluate(p->pair, side_or_fail(side), in(s)));
  });
}

hecke_status hecke_default_config(const char* scenario, hecke_config* result) {
  return guarded([&] {
    require(scenario && result, "null argument");
    *result = from_core(default_config(scenario));
  });
}

hecke_status hecke_check_hypotheses(const hecke_pair* p, const hecke_config* c, size_t* violations) {
  return guarded([&] {
    require(p && c, "null argument");
    std::vector<Violation> v = check_hypotheses(p->pair, in(c->u), in(c->v), c->k, c->gamma);
    if (violations) *violations = v.size();
    require_hypotheses(p->pair, {in(c->u), in(c->v), c->k, c->x, c->gamma, {}});
  });
}

size_t hecke_identity_count(void) { return identity_names().size(); }

const char* hecke_identity_name(size_t i) {
  return i < identity_names().size() ? identity_names()[i].c_str() : nullptr;
}

hecke_status hecke_identity_default_tolerance(const char* identity, double* result) {
  return guarded([&] {
    require(result != nullptr, "null argument");
    *result = default_tolerance(identity_or_fail(identity));
  });
}

hecke_status hecke_verify(const hecke_pair* p, const char* identity, const hecke_config* c, hecke_report** result) {
  return guarded([&] {
    require(p && c && result, "null argument");
    *result = nullptr;
    Identity id = identity_or_fail(identity);
    *result = new hecke_report{verify_identity(id, p->pair, to_core(*c)), identity_name(id)};
  });
}

void hecke_report_destroy(hecke_report* r) { delete r; }

const char* hecke_report_identity(const hecke_report* r) { return r->identity.c_str(); }
const char* hecke_report_scenario(const hecke_report* r) { return r->report.scenario.c_str(); }
hecke_config hecke_report_config(const hecke_report* r) { return from_core(r->report.config); }
hecke_complex hecke_report_lhs(const hecke_report* r) { return out(r->report.lhs); }
hecke_complex hecke_report_rhs(const hecke_report* r) { return out(r->report.rhs); }
double hecke_report_abs_residual(const hecke_report* r) { return r->report.abs_residual; }
double hecke_report_rel_residual(const hecke_report* r) { return r->report.rel_residual; }
double hecke_report_tolerance(const hecke_report* r) { return r->report.tolerance; }
double hecke_report_seconds(const hecke_report* r) { return r->report.seconds; }
int hecke_report_pass(const hecke_report* r) { return r->report.pass ? 1 : 0; }

size_t hecke_report_term_count(const hecke_report* r) { return r->report.terms.size(); }
const char* hecke_report_term_name(const hecke_report* r, size_t i) {
  return i < r->report.terms.size() ? r->report.terms[i].name.c_str() : nullptr;
}
hecke_complex hecke_report_term_value(const hecke_report* r, size_t i) {
  return i < r->report.terms.size() ? out(r->report.terms[i].value) : hecke_complex{0.0, 0.0};
}
size_t hecke_report_setting_count(const hecke_report* r) { return r->report.settings.size(); }
const char* hecke_report_setting_name(const hecke_report* r, size_t i) {
  return i < r->report.settings.size() ? r->report.settings[i].name.c_str() : nullptr;
}
double hecke_report_setting_value(const hecke_report* r, size_t i) {
  return i < r->report.settings.size() ? r->report.settings[i].value : 0.0;
}

hecke_status hecke_g_series(const hecke_pair* p, const hecke_config* c, int side, int route, double tol,
                            hecke_complex* value, double* tail) {
  return guarded([&] {
    require(p && c && value, "null argument");
    require(side == 0 || side == 1, "side must be 0 (G) or 1 (F)");
    require(route == 0 || route == 1, "route must be 0 (direct) or 1 (Riesz)");
    require(tol > 0.0, "tol must be positive");
    GSeriesParams g;
    g.side = side == 0 ? GSide::G : GSide::F;
    g.u = in(c->u);
    g.v = in(c->v);
    g.k = c->k;
    g.x = c->x;
    g.gamma = c->gamma;
    if (c->has_abscissa) g.abscissa = c->abscissa;
    g.route = route == 0 ? GRoute::DirectMeijer : GRoute::RieszMinusContour;
    GSeriesResult r = g_series(p->pair, g, tol);
    *value = out(r.value);
    if (tail) *tail = r.tail_estimate;
  });
}

hecke_status hecke_riesz_sum(const hecke_pair* p, const hecke_config* c, hecke_complex* value) {
  return guarded([&] {
    require(p && c && value, "null argument");
    std::optional<double> a;
    if (c->has_abscissa) a = c->abscissa;
    RieszParams r{in(c->u), in(c->v), c->k, c->x, c->gamma, a};
    *value = out(riesz_double_sum(p->pair, r, {RieszMode::Auto, 0, c->series_tol > 0.0 ? c->series_tol : 1e-11}).value);
  });
}

}  // extern "C"
