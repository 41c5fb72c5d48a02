#include "blowup/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace blowup {
namespace {

struct SectionSchema {
  const char* name;
  std::vector<std::string> keys;
  bool required;
};

const std::vector<SectionSchema>& schema() {
  static const std::vector<SectionSchema> s = {
      {"scenario", {"name", "seed"}, true},
      {"model",
       {"kind", "dims", "length", "ly", "n", "ny", "nonlinear", "r0_range", "mass", "exponent", "a0", "a",
        "nu", "m", "poly", "kirchhoff_a1", "kirchhoff_a2", "kirchhoff_b1", "kirchhoff_b2",
        "source_exponent", "source_poly", "b", "split", "flux_exponent", "flux_poly"},
       true},
      {"data",
       {"source", "u0", "u1", "K2", "seed_u0", "seed_u1", "c1_margin", "built_K2", "built_c0", "built_c1",
        "built_theta", "built_energy"},
       true},
      {"run",
       {"dt0", "t_max", "psi_cap", "dt_floor", "record_every", "adapt", "c_cfl", "c_nl", "c_acc",
        "support_monitor", "support_tol"},
       true},
      {"checks", {"assert", "tol", "energy_tol", "drift_psi_max", "growth_tol", "fg_samples"}, false},
  };
  return s;
}

// Model keys that each kind accepts besides `kind` itself.
const std::vector<std::string>& kind_keys(ModelKind kind) {
  static const std::vector<std::string> kg = {"dims", "length", "ly", "n", "ny", "mass", "exponent", "nonlinear"};
  static const std::vector<std::string> bq = {"length", "n", "a", "nu", "m", "poly", "nonlinear", "r0_range"};
  static const std::vector<std::string> pl = {"dims",         "length",       "ly",           "n",
                                              "ny",           "kirchhoff_a1", "kirchhoff_a2", "kirchhoff_b1",
                                              "kirchhoff_b2", "source_exponent", "source_poly", "r0_range"};
  static const std::vector<std::string> nb = {"length", "n", "b", "split", "flux_exponent", "flux_poly", "r0_range"};
  static const std::vector<std::string> so = {"a0", "exponent", "nonlinear"};
  switch (kind) {
    case ModelKind::klein_gordon: return kg;
    case ModelKind::boussinesq: return bq;
    case ModelKind::plate: return pl;
    case ModelKind::nonlinear_boundary: return nb;
    case ModelKind::scalar_ode: return so;
  }
  return so;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const Entry& e) {
  const std::string v = trim(e.value);
  double x = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw ScenarioError(e.line, "key '" + e.key + "': expected a number, got '" + v + "'");
  }
  return x;
}

long to_long(const Entry& e) {
  const std::string v = trim(e.value);
  long x = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw ScenarioError(e.line, "key '" + e.key + "': expected an integer, got '" + v + "'");
  }
  return x;
}

bool to_bool(const Entry& e) {
  const std::string v = trim(e.value);
  if (v == "true") return true;
  if (v == "false") return false;
  throw ScenarioError(e.line, "key '" + e.key + "': expected true or false, got '" + v + "'");
}

std::vector<double> to_list(const Entry& e) {
  std::vector<double> out;
  std::istringstream in(e.value);
  std::string tok;
  while (in >> tok) {
    Entry one{e.key, tok, e.line};
    out.push_back(to_double(one));
  }
  return out;
}

ModelKind to_kind(const Entry& e) {
  const std::string v = trim(e.value);
  for (ModelKind k : {ModelKind::klein_gordon, ModelKind::boussinesq, ModelKind::plate,
                      ModelKind::nonlinear_boundary, ModelKind::scalar_ode}) {
    if (v == to_string(k)) return k;
  }
  throw ScenarioError(e.line, "unknown model kind '" + v + "'");
}

const Section* find_section(const Scenario& s, const std::string& name) {
  for (const Section& sec : s.sections) {
    if (sec.name == name) return &sec;
  }
  return nullptr;
}

const Entry* find_entry(const Section* sec, const std::string& key) {
  if (!sec) return nullptr;
  for (const Entry& e : sec->entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

void interpret_model(Scenario& s) {
  const Section* sec = find_section(s, "model");
  const Entry* kind = find_entry(sec, "kind");
  if (!kind) throw ScenarioError(sec->line, "[model] needs a kind");
  ModelConfig& m = s.model;
  m.kind = to_kind(*kind);
  const std::vector<std::string>& allowed = kind_keys(m.kind);
  for (const Entry& e : sec->entries) {
    if (e.key == "kind") continue;
    if (std::find(allowed.begin(), allowed.end(), e.key) == allowed.end()) {
      throw ScenarioError(e.line, "key '" + e.key + "' does not apply to model kind " + to_string(m.kind));
    }
  }
  std::optional<double> source_p, flux_p;
  std::vector<double> source_poly, flux_poly;
  bool has_source_poly = false, has_flux_poly = false;
  for (const Entry& e : sec->entries) {
    const std::string& k = e.key;
    if (k == "kind") continue;
    if (k == "dims") m.dims = static_cast<int>(to_long(e));
    else if (k == "length") m.length = to_double(e);
    else if (k == "ly") m.ly = to_double(e);
    else if (k == "n") m.n = static_cast<int>(to_long(e));
    else if (k == "ny") m.ny = static_cast<int>(to_long(e));
    else if (k == "nonlinear") m.nonlinear = to_bool(e);
    else if (k == "r0_range") m.r0_range = to_double(e);
    else if (k == "mass") m.mass = to_double(e);
    else if (k == "exponent") m.exponent = to_double(e);
    else if (k == "a0") m.a0 = to_double(e);
    else if (k == "a") m.a = to_double(e);
    else if (k == "nu") m.nu = to_double(e);
    else if (k == "m") m.m = static_cast<int>(to_long(e));
    else if (k == "poly") m.poly = to_list(e);
    else if (k.rfind("kirchhoff_", 0) == 0) {
      if (!m.kirchhoff) m.kirchhoff = KirchhoffParams{};
      const double x = to_double(e);
      if (k == "kirchhoff_a1") m.kirchhoff->a1 = x;
      else if (k == "kirchhoff_a2") m.kirchhoff->a2 = x;
      else if (k == "kirchhoff_b1") m.kirchhoff->b1 = x;
      else m.kirchhoff->b2 = x;
    } else if (k == "source_exponent") source_p = to_double(e);
    else if (k == "source_poly") { source_poly = to_list(e); has_source_poly = true; }
    else if (k == "b") m.b = to_double(e);
    else if (k == "split") {
      const std::string v = trim(e.value);
      if (v == "both_ends") m.split = BoundarySplit::both_ends;
      else if (v == "right_end_only") m.split = BoundarySplit::right_end_only;
      else throw ScenarioError(e.line, "split must be both_ends or right_end_only");
    } else if (k == "flux_exponent") flux_p = to_double(e);
    else if (k == "flux_poly") { flux_poly = to_list(e); has_flux_poly = true; }
  }
  if (has_source_poly && !source_p) throw ScenarioError(sec->line, "source_poly needs source_exponent");
  if (has_flux_poly && !flux_p) throw ScenarioError(sec->line, "flux_poly needs flux_exponent");
  if (source_p) m.source = PointwiseLaw{*source_p, source_poly};
  if (flux_p) m.flux = PointwiseLaw{*flux_p, flux_poly};
  if (m.dims != 1 && m.dims != 2) throw ScenarioError(sec->line, "dims must be 1 or 2");
}

void interpret_data(Scenario& s) {
  const Section* sec = find_section(s, "data");
  DataConfig& d = s.data;
  const Entry* src = find_entry(sec, "source");
  if (!src) throw ScenarioError(sec->line, "[data] needs a source (explicit, shapes or builder)");
  const std::string v = trim(src->value);
  if (v == "explicit") d.source = DataSource::explicit_vectors;
  else if (v == "shapes") d.source = DataSource::shapes;
  else if (v == "builder") d.source = DataSource::builder;
  else throw ScenarioError(src->line, "unknown data source '" + v + "'");

  const bool builder = d.source == DataSource::builder;
  for (const Entry& e : sec->entries) {
    const std::string& k = e.key;
    const bool builder_key = k == "K2" || k == "seed_u0" || k == "seed_u1" || k == "c1_margin";
    const bool vector_key = k == "u0" || k == "u1";
    const bool built_key = k.rfind("built_", 0) == 0;
    if (builder_key && !builder) throw ScenarioError(e.line, "key '" + k + "' needs source = builder");
    if (vector_key && builder) throw ScenarioError(e.line, "key '" + k + "' conflicts with source = builder");
    if (built_key && d.source != DataSource::explicit_vectors) {
      throw ScenarioError(e.line, "key '" + k + "' only describes explicit replay data");
    }
    if (k == "u0") d.u0 = trim(e.value);
    else if (k == "u1") d.u1 = trim(e.value);
    else if (k == "K2") d.K2 = to_double(e);
    else if (k == "seed_u0") d.seed_u0 = trim(e.value);
    else if (k == "seed_u1") d.seed_u1 = trim(e.value);
    else if (k == "c1_margin") d.c1_margin = to_double(e);
    else if (built_key) to_double(e);
  }
  if (builder) {
    if (!find_entry(sec, "K2")) throw ScenarioError(sec->line, "builder data need K2");
    if (d.seed_u0.empty() || d.seed_u1.empty()) throw ScenarioError(sec->line, "builder data need seed_u0 and seed_u1");
  } else if (d.u0.empty() || d.u1.empty()) {
    throw ScenarioError(sec->line, "data need both u0 and u1");
  }
}

void interpret_run(Scenario& s) {
  const Section* sec = find_section(s, "run");
  RunConfig& r = s.run;
  for (const Entry& e : sec->entries) {
    const std::string& k = e.key;
    if (k == "dt0") r.dt0 = to_double(e);
    else if (k == "t_max") r.t_max = to_double(e);
    else if (k == "psi_cap") r.psi_cap = to_double(e);
    else if (k == "dt_floor") r.dt_floor = to_double(e);
    else if (k == "record_every") r.record_every = static_cast<int>(to_long(e));
    else if (k == "adapt") r.adapt = to_bool(e);
    else if (k == "c_cfl") r.c_cfl = to_double(e);
    else if (k == "c_nl") r.c_nl = to_double(e);
    else if (k == "c_acc") r.c_acc = to_double(e);
    else if (k == "support_monitor") r.support_monitor = to_bool(e);
    else if (k == "support_tol") r.support_tol = to_double(e);
  }
  try {
    r.validate();
  } catch (const std::invalid_argument& ex) {
    throw ScenarioError(sec->line, ex.what());
  }
}

void interpret_checks(Scenario& s) {
  const Section* sec = find_section(s, "checks");
  if (!sec) return;
  CheckConfig& c = s.checks;
  for (const Entry& e : sec->entries) {
    const std::string& k = e.key;
    if (k == "assert") {
      std::istringstream in(e.value);
      std::string name;
      while (in >> name) {
        const auto& known = known_checks();
        if (std::find(known.begin(), known.end(), name) == known.end()) {
          throw ScenarioError(e.line, "unknown check '" + name + "'");
        }
        if (std::find(c.asserted.begin(), c.asserted.end(), name) != c.asserted.end()) {
          throw ScenarioError(e.line, "check '" + name + "' listed twice");
        }
        c.asserted.push_back(name);
      }
    } else if (k == "tol") c.tol = to_double(e);
    else if (k == "energy_tol") c.energy_tol = to_double(e);
    else if (k == "drift_psi_max") c.drift_psi_max = to_double(e);
    else if (k == "growth_tol") c.growth_tol = to_double(e);
    else if (k == "fg_samples") c.fg_samples = static_cast<int>(to_long(e));
  }
  const bool nb5 = std::find(c.asserted.begin(), c.asserted.end(), "nb5") != c.asserted.end();
  if (nb5 && s.model.kind != ModelKind::nonlinear_boundary) {
    throw ScenarioError(sec->line, "check nb5 needs model kind nonlinear_boundary");
  }
}

Scenario interpret(std::vector<Section> sections) {
  Scenario s;
  s.sections = std::move(sections);
  for (const SectionSchema& sch : schema()) {
    if (sch.required && !find_section(s, sch.name)) {
      throw ScenarioError(0, std::string("missing section [") + sch.name + "]");
    }
  }
  const Section* head = find_section(s, "scenario");
  const Entry* name = find_entry(head, "name");
  const Entry* seed = find_entry(head, "seed");
  if (!name || trim(name->value).empty()) throw ScenarioError(head->line, "[scenario] needs a name");
  if (!seed) throw ScenarioError(head->line, "[scenario] needs a seed");
  s.name = trim(name->value);
  const long sd = to_long(*seed);
  if (sd < 0) throw ScenarioError(seed->line, "seed must be non-negative");
  s.seed = static_cast<std::uint64_t>(sd);
  for (char c : s.name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) {
      throw ScenarioError(name->line, "scenario name may only use letters, digits, '_', '-' and '.'");
    }
  }
  interpret_model(s);
  interpret_data(s);
  interpret_run(s);
  interpret_checks(s);
  return s;
}

}  // namespace

ScenarioError::ScenarioError(int line, const std::string& msg)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}

const char* to_string(DataSource source) {
  switch (source) {
    case DataSource::explicit_vectors: return "explicit";
    case DataSource::shapes: return "shapes";
    case DataSource::builder: return "builder";
  }
  return "unknown";
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {"criteria", "no_criteria", "blowup", "survives",
                                                 "energy_drift", "concavity", "inf2", "inf1",
                                                 "nb5", "levine_bound", "fg"};
  return names;
}

Scenario parse_scenario_text(const std::string& text) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ScenarioError(line_no, "malformed section header '" + line + "'");
      const std::string name = trim(line.substr(1, line.size() - 2));
      const auto& sch = schema();
      if (std::none_of(sch.begin(), sch.end(), [&](const SectionSchema& x) { return name == x.name; })) {
        throw ScenarioError(line_no, "unknown section [" + name + "]");
      }
      for (const Section& sec : sections) {
        if (sec.name == name) throw ScenarioError(line_no, "section [" + name + "] appears twice");
      }
      sections.push_back(Section{name, {}, line_no});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ScenarioError(line_no, "expected 'key = value', got '" + line + "'");
    if (sections.empty()) throw ScenarioError(line_no, "key outside of any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ScenarioError(line_no, "empty key");
    if (value.empty()) throw ScenarioError(line_no, "key '" + key + "' has no value");
    Section& sec = sections.back();
    const auto& sch = schema();
    const auto it = std::find_if(sch.begin(), sch.end(), [&](const SectionSchema& x) { return sec.name == x.name; });
    if (std::find(it->keys.begin(), it->keys.end(), key) == it->keys.end()) {
      throw ScenarioError(line_no, "unknown key '" + key + "' in section [" + sec.name + "]");
    }
    for (const Entry& e : sec.entries) {
      if (e.key == key) throw ScenarioError(line_no, "key '" + key + "' repeated (first on line " + std::to_string(e.line) + ")");
    }
    sec.entries.push_back(Entry{key, value, line_no});
  }
  return interpret(std::move(sections));
}

Scenario parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(0, "cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

std::string serialize(const Scenario& s) {
  std::ostringstream out;
  bool first = true;
  for (const Section& sec : s.sections) {
    if (!first) out << '\n';
    first = false;
    out << '[' << sec.name << "]\n";
    for (const Entry& e : sec.entries) out << e.key << " = " << e.value << '\n';
  }
  return out.str();
}

Scenario with_override(const Scenario& s, const std::string& param, const std::string& value) {
  std::string section, key = param;
  const auto dot = param.find('.');
  if (dot != std::string::npos) {
    section = param.substr(0, dot);
    key = param.substr(dot + 1);
  } else {
    std::set<std::string> owners;
    for (const Section& sec : s.sections) {
      if (find_entry(&sec, key)) owners.insert(sec.name);
    }
    if (owners.empty()) {
      for (const SectionSchema& sch : schema()) {
        if (std::find(sch.keys.begin(), sch.keys.end(), key) != sch.keys.end()) owners.insert(sch.name);
      }
    }
    if (owners.size() != 1) {
      throw ScenarioError(0, "parameter '" + param + "' is ambiguous or unknown; use section.key");
    }
    section = *owners.begin();
  }
  std::vector<Section> sections = s.sections;
  auto sec = std::find_if(sections.begin(), sections.end(), [&](const Section& x) { return x.name == section; });
  if (sec == sections.end()) {
    sections.push_back(Section{section, {}, 0});
    sec = sections.end() - 1;
  }
  auto e = std::find_if(sec->entries.begin(), sec->entries.end(), [&](const Entry& x) { return x.key == key; });
  if (e == sec->entries.end()) {
    const auto& sch = schema();
    const auto it = std::find_if(sch.begin(), sch.end(), [&](const SectionSchema& x) { return section == x.name; });
    if (it == sch.end() || std::find(it->keys.begin(), it->keys.end(), key) == it->keys.end()) {
      throw ScenarioError(0, "unknown parameter '" + param + "'");
    }
    sec->entries.push_back(Entry{key, value, 0});
  } else {
    e->value = value;
  }
  return interpret(std::move(sections));
}

}  // namespace blowup
