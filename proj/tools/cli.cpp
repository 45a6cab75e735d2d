#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "e1forge/autos.hpp"
#include "e1forge/certify.hpp"
#include "e1forge/error.hpp"
#include "e1forge/gf2k.hpp"
#include "e1forge/group_order.hpp"
#include "e1forge/oracle.hpp"
#include "e1forge/poly_text.hpp"
#include "e1forge/semisimple.hpp"

namespace e1forge::cli {
namespace {

using Json = nlohmann::ordered_json;

std::string dec(const BigInt& n) { return to_decimal(n); }
std::string dec(const Rational& r) { return to_decimal(r); }

std::string hex(std::uint32_t v) {
  std::ostringstream os;
  os << "0x" << std::hex << v;
  return os.str();
}

// Collects the fields a command touched for the report header.
class FieldLog {
 public:
  void add(const gf2k::FieldSpec& k) { seen_.emplace(k.degree(), k.defining_poly()); }
  Json to_json() const {
    Json arr = Json::array();
    for (const auto& [deg, mod] : seen_) {
      arr.push_back({{"field", "GF(2^" + std::to_string(deg) + ")/conway"}, {"modulus", hex(mod)}});
    }
    return arr;
  }

 private:
  std::set<std::pair<unsigned, std::uint32_t>> seen_;
};

Json check_json(const std::string& name, std::uint64_t tested, std::uint64_t passed,
                const std::vector<std::string>& failures = {}) {
  Json j{{"lemma", name}, {"tested", tested}, {"passed", passed}, {"ok", tested == passed}};
  if (!failures.empty()) j["failures"] = failures;
  return j;
}

bool all_checks_ok(const Json& checks) {
  for (const auto& c : checks) {
    if (!c.at("ok").get<bool>()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// classify

Json classify(const RunConfig& cfg, FieldLog& fields) {
  const auto& k = semisimple::class_field(cfg.epsilon, cfg.q);
  fields.add(k);
  const poly::MonicPoly p = poly::parse_poly(cfg.xi, k);
  if (cfg.d != 0 && p.degree() != cfg.d) {
    throw UsageError("--d " + std::to_string(cfg.d) + " does not match the degree " +
                     std::to_string(p.degree()) + " of --xi");
  }
  const auto c = semisimple::SemisimpleClass::from_poly(cfg.epsilon, cfg.q, p);
  Json r;
  r["epsilon"] = c.epsilon;
  r["d"] = c.d;
  r["q"] = c.q;
  r["xi"] = poly::format_factorization(c.xi);
  r["charpoly"] = poly::format_canonical(c.charpoly());
  r["d1"] = c.d1;

  const auto shape = semisimple::centralizer_shape(c);
  r["centralizer"] = {{"shape", shape.to_string()}, {"order", dec(shape.order)}, {"odd_part", dec(shape.odd_part)}};
  r["index_odd_part"] = dec(semisimple::index_odd_part(c));
  r["min_character_degree"] = dec(semisimple::min_character_degree(c));

  const auto rs = semisimple::realness_structure(c);
  Json real{{"real", rs.real}};
  Json pairs = Json::array();
  for (const auto& sp : rs.pairing) {
    pairs.push_back({{"factor", poly::format_canonical(sp.factor)},
                     {"partner", poly::format_canonical(sp.partner)},
                     {"multiplicity", sp.multiplicity}});
  }
  real["pairing"] = pairs;
  if (cfg.epsilon == -1) {
    Json flags = Json::array();
    for (const auto& df : rs.dagger_flags) {
      flags.push_back({{"factor", poly::format_canonical(df.factor)}, {"self_dagger", df.self_dagger}});
    }
    real["dagger_flags"] = flags;
  }
  r["realness"] = real;

  Json checks = Json::array();
  const std::uint64_t e = bounds::center_gcd(c.d, c.q, c.epsilon);
  const bool classifiable = c.d >= 5 && e > 1 && rs.real && !c.is_identity();
  r["classifiable"] = classifiable;
  if (classifiable) {
    const auto dp = semisimple::d_parameters(c);
    const auto bound = semisimple::d_statistic_bound(c);
    const auto cmp = semisimple::d_statistic_cmp(c, bound);
    r["d_statistic"] = {{"l", dp.l},
                        {"l_prime", dp.l_prime},
                        {"d_prime", dp.d_prime},
                        {"d_prime_factor", poly::format_canonical(dp.d_prime_factor)},
                        {"bound_r_power", bound.r_power},
                        {"bound_q_exp4", bound.q_exp4},
                        {"exceeds_bound", cmp == std::strong_ordering::greater}};
    const auto cls = semisimple::classify_cases(c);
    Json labels = Json::array();
    Json witnesses = Json::array();
    for (const auto& w : cls.cases) {
      labels.push_back(std::string(1, w.label));
      Json data = Json::object();
      for (const auto& [key, value] : w.data) data[key] = value;
      witnesses.push_back({{"case", std::string(1, w.label)}, {"condition", w.condition}, {"data", data}});
    }
    r["cases"] = labels;
    r["witnesses"] = witnesses;
    r["flags"] = cls.flags;
    checks.push_back(check_json("case-coverage", 1, cls.cases.empty() ? 0 : 1));
  }
  r["checks"] = checks;
  return r;
}

// ---------------------------------------------------------------------------
// certify

Json cert_json(const bounds::InequalityCert& cert) {
  Json j;
  j["id"] = cert.id;
  j["lhs"] = cert.lhs_text;
  j["rel"] = bounds::to_string(cert.rel);
  j["rhs"] = cert.rhs_text;
  j["range"] = cert.range.to_string();
  if (!cert.anchor.empty()) j["anchor"] = cert.anchor;
  j["clear_power"] = cert.clear_power;
  j["status"] = bounds::to_string(cert.status);
  Json segs = Json::array();
  for (const auto& s : cert.segments) {
    Json sj;
    sj["from"] = s.segment.from;
    sj["to"] = s.segment.to ? Json(*s.segment.to) : Json("inf");
    sj["status"] = bounds::to_string(s.status);
    sj["checked_from"] = s.checked_from;
    sj["checked_to"] = s.checked_to;
    if (s.counterexample) sj["counterexample_f"] = *s.counterexample;
    if (s.witness) {
      const auto& w = *s.witness;
      sj["witness"] = {{"lead_q_exp", w.lead_q_exp},
                       {"lead_f_exp", w.lead_f_exp},
                       {"lead_coeff", dec(w.lead_coeff)},
                       {"monotone_from", w.monotone_from},
                       {"f0", w.f0},
                       {"remainder_ratio_at_f0", dec(w.remainder_ratio_at_f0)}};
    }
    if (!s.note.empty()) sj["note"] = s.note;
    segs.push_back(sj);
  }
  j["segments"] = segs;
  j["replayed"] = bounds::replay(cert);
  return j;
}

Json certify(const RunConfig& cfg) {
  std::vector<bounds::InequalityCert> certs;
  Json r;
  if (cfg.expr) {
    if (!cfg.range) throw UsageError("certify --expr requires --range");
    certs.push_back(bounds::certify(*cfg.expr, *cfg.range));
    certs.back().id = "expr";
  } else {
    const std::filesystem::path path = cfg.registry ? std::filesystem::path(*cfg.registry)
                                                    : bounds::default_registry_path();
    auto entries = bounds::load_registry(path);
    r["registry"] = path.filename().string();
    if (!cfg.all) {
      if (cfg.ids.empty()) throw UsageError("certify needs --all, --id or --expr");
      std::vector<bounds::RegistryEntry> picked;
      for (const auto& id : cfg.ids) {
        auto it = std::find_if(entries.begin(), entries.end(), [&](const auto& e) { return e.id == id; });
        if (it == entries.end()) throw UsageError("unknown registry id '" + id + "'");
        picked.push_back(*it);
      }
      entries = std::move(picked);
    }
    certs = bounds::certify_all(entries, cfg.threads);
  }
  Json list = Json::array();
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t ok = 0;
  std::uint64_t replayed = 0;
  std::vector<std::string> failing;
  for (const auto& c : certs) {
    Json cj = cert_json(c);
    ++counts[bounds::to_string(c.status)];
    if (c.status == bounds::CertStatus::Verified) {
      ++ok;
    } else {
      failing.push_back(c.id);
    }
    if (cj["replayed"].get<bool>()) ++replayed;
    list.push_back(std::move(cj));
  }
  Json summary = Json::object();
  for (const auto& [k, v] : counts) summary[k] = v;
  r["summary"] = summary;
  r["certificates"] = list;
  Json checks = Json::array();
  checks.push_back(check_json("inequality-verified", certs.size(), ok, failing));
  checks.push_back(check_json("certificate-replay", certs.size(), replayed));
  r["checks"] = checks;
  return r;
}

// ---------------------------------------------------------------------------
// oracle verify

oracle::GroupDescriptor descriptor_from(const RunConfig& cfg) {
  if (cfg.group.find('_') != std::string::npos) return oracle::parse_group_descriptor(cfg.group);
  if (cfg.d == 0) throw UsageError("oracle verify needs --d with a bare --group kind");
  return oracle::parse_group_descriptor(cfg.group + "_" + std::to_string(cfg.d) + "(" + std::to_string(cfg.q) + ")");
}

oracle::GuMethod gu_method_from(const std::string& s) {
  if (s == "auto") return oracle::GuMethod::Auto;
  if (s == "filter") return oracle::GuMethod::Filter;
  if (s == "closure") return oracle::GuMethod::Closure;
  throw UsageError("--gu-method must be auto, filter or closure");
}

Json oracle_verify(const RunConfig& cfg, FieldLog& fields) {
  const auto desc = descriptor_from(cfg);
  fields.add(gf2k::make_field(gf2k::log2_exact(desc.q), desc.epsilon() == 1 ? 1 : 2));
  oracle::SweepOptions opts;
  opts.enumeration.budget = cfg.budget;
  opts.enumeration.gu_method = gu_method_from(cfg.gu_method);
  opts.enumeration.seed = cfg.seed;
  opts.threads = cfg.threads;
  opts.full_scan = cfg.full_scan;
  const auto rep = oracle::verify_sweep(desc, opts);
  Json r;
  r["group"] = rep.group.to_string();
  r["order"] = dec(rep.order);
  r["enumerated"] = rep.enumerated;
  r["odd_order_elements"] = rep.odd_order_elements;
  r["semisimple_classes"] = rep.semisimple_classes;
  r["full_scan"] = rep.full_scan;
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back(check_json(c.name, c.tested, c.passed, c.failures));
  r["checks"] = checks;
  return r;
}

// ---------------------------------------------------------------------------
// auto-order

Json auto_order(const RunConfig& cfg, FieldLog& fields) {
  const auto m = autos::TorusModel::make(cfg.d, cfg.q, cfg.epsilon);
  fields.add(*m.field);
  std::vector<gf2k::Elem> t(cfg.t.begin(), cfg.t.end());
  if (t.empty()) t = m.one();
  if (t.size() != cfg.d) throw UsageError("--t needs exactly d entries");
  for (auto v : t) {
    if (v == 0 || !m.field->contains(v)) throw UsageError("--t entries must be nonzero field encodings");
  }
  const auto w = autos::make_word(m, t, cfg.graph_exp, cfg.field_exp);
  Json r;
  r["epsilon"] = cfg.epsilon;
  r["d"] = cfg.d;
  r["q"] = cfg.q;
  r["word"] = autos::to_string(w);
  r["t"] = w.t;
  r["graph_exp"] = w.graph_exp;
  r["field_exp"] = w.field_exp;
  r["mu_order"] = autos::mu_order(m, w.graph_exp, w.field_exp);
  r["t_order"] = m.element_order(w.t);
  const std::uint64_t order = autos::auto_order(m, w);
  r["order"] = order;
  Json verdicts = Json::object();
  Json checks = Json::array();
  for (const auto& [part, ok] : autos::torus_order_verdicts(m, w)) {
    verdicts[std::string(1, part)] = ok;
    checks.push_back(check_json(std::string("torus-order-") + part, 1, ok ? 1 : 0));
  }
  r["verdicts"] = verdicts;
  const auto via_norm = autos::twisted_norm(m, w, order);
  checks.push_back(check_json("twisted-norm-identity", 1, autos::is_identity(via_norm) ? 1 : 0));
  r["checks"] = checks;
  return r;
}

// ---------------------------------------------------------------------------
// sweep

Json sweep(const RunConfig& cfg, FieldLog& fields) {
  Json r;
  r["kind"] = cfg.sweep_kind;
  r["epsilon"] = cfg.epsilon;
  r["d"] = cfg.d;
  r["q"] = cfg.q;
  Json checks = Json::array();
  if (cfg.sweep_kind == "classes") {
    fields.add(semisimple::class_field(cfg.epsilon, cfg.q));
    const auto s = semisimple::case_sweep(cfg.epsilon, cfg.d, cfg.q, cfg.threads, cfg.budget);
    r["classes"] = s.classes;
    r["covered"] = s.covered;
    r["uncovered"] = s.uncovered;
    Json counts = Json::object();
    for (const auto& [label, n] : s.case_counts) counts[std::string(1, label)] = n;
    r["case_counts"] = counts;
    r["flagged"] = s.flagged;
    checks.push_back(check_json("case-coverage", s.classes, s.covered, s.uncovered_examples));
    if (cfg.epsilon == -1) {
      checks.push_back(check_json("eigenspace-bound", s.eigenspace_checked,
                                  s.eigenspace_checked - s.eigenspace_violations));
    }
  } else if (cfg.sweep_kind == "torus-orders") {
    const auto m = autos::TorusModel::make(cfg.d, cfg.q, cfg.epsilon);
    fields.add(*m.field);
    const auto rep = autos::verify_torus_orders(cfg.d, cfg.q, cfg.epsilon);
    r["words"] = rep.words;
    for (const auto& c : rep.checks) {
      checks.push_back(check_json(std::string("torus-order-") + c.part, c.tested, c.passed, c.violations));
    }
  } else {
    throw UsageError("--kind must be classes or torus-orders");
  }
  r["checks"] = checks;
  return r;
}

// ---------------------------------------------------------------------------
// output

void flatten(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array()) {
    if (j.empty()) os << prefix << "\t[]\n";
    std::size_t i = 0;
    for (const auto& v : j) flatten(v, prefix + "[" + std::to_string(i++) + "]", os);
  } else if (j.is_string()) {
    os << prefix << '\t' << j.get<std::string>() << '\n';
  } else {
    os << prefix << '\t' << j.dump() << '\n';
  }
}

void emit(const Json& report, const RunConfig& cfg, std::ostream& out) {
  std::ostringstream buf;
  if (cfg.format == Format::Json) {
    buf << report.dump(2) << '\n';
  } else {
    flatten(report, "", buf);
  }
  if (cfg.output) {
    std::ofstream f(*cfg.output, std::ios::binary);
    if (!f) throw UsageError("cannot open output file " + *cfg.output);
    f << buf.str();
  } else {
    out << buf.str();
  }
}

std::vector<std::uint32_t> parse_encodings(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::string tok;
  std::istringstream is(text);
  while (std::getline(is, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t[]");
    const auto e = tok.find_last_not_of(" \t[]");
    if (b == std::string::npos) continue;
    const std::string s = tok.substr(b, e - b + 1);
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &pos);
    } catch (const std::exception&) {
      throw UsageError("bad encoding '" + s + "' in --t");
    }
    if (pos != s.size()) throw UsageError("bad encoding '" + s + "' in --t");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::Classify: return "classify";
    case Command::Certify: return "certify";
    case Command::OracleVerify: return "oracle-verify";
    case Command::AutoOrder: return "auto-order";
    case Command::Sweep: return "sweep";
  }
  return "?";
}

void validate(const RunConfig& c) {
  if (c.budget < 1) throw UsageError("budget must be at least 1");
  if (c.threads < 1) throw UsageError("threads must be at least 1");
  if (c.epsilon != 1 && c.epsilon != -1) throw UsageError("epsilon must be 1 or -1");
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  RunConfig cfg;
  if (const char* env = std::getenv("E1FORGE_BUDGET")) {
    try {
      cfg.budget = std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("E1FORGE_BUDGET is not an integer: ") + env);
    }
  }

  CLI::App app{"e1forge: exact verification of semisimple class data over GF(2^f)", "e1forge"};
  app.set_version_flag("--version", std::string(E1FORGE_VERSION));
  app.require_subcommand(1);

  std::string format = "json";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "tsv"}));
    sub->add_option("--output,-o", cfg.output, "Write the report to a file");
    sub->add_option("--budget", cfg.budget, "Element budget for enumerations");
    sub->add_option("--threads,-j", cfg.threads, "Worker threads");
    sub->add_flag("--timing", cfg.timing, "Include elapsed time in the report");
  };
  auto add_group_params = [&](CLI::App* sub, bool need_d) {
    sub->add_option("--epsilon,-e", cfg.epsilon, "+1 (linear) or -1 (unitary)");
    auto* d = sub->add_option("--d", cfg.d, "Dimension");
    if (need_d) d->required();
    sub->add_option("--q", cfg.q, "Field size q = 2^f")->required();
  };

  auto* classify_cmd = app.add_subcommand("classify", "Classify a semisimple class from its characteristic polynomial");
  add_group_params(classify_cmd, false);
  classify_cmd->add_option("--xi", cfg.xi, "Characteristic polynomial, e.g. \"(x+1)^2(x+w)^2\"")->required();
  add_common(classify_cmd);

  auto* certify_cmd = app.add_subcommand("certify", "Certify registry inequalities or a single expression");
  certify_cmd->add_flag("--all", cfg.all, "Certify every registry entry");
  certify_cmd->add_option("--registry", cfg.registry, "Registry file");
  certify_cmd->add_option("--id", cfg.ids, "Registry id (repeatable)");
  certify_cmd->add_option("--expr", cfg.expr, "Inequality \"lhs REL rhs\" in q and f");
  certify_cmd->add_option("--range", cfg.range, "Range of f, e.g. \"7..19\" or \"21..\"");
  add_common(certify_cmd);

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force group oracle");
  oracle_cmd->require_subcommand(1);
  auto* verify_cmd = oracle_cmd->add_subcommand("verify", "Compare formulas against direct enumeration");
  verify_cmd->add_option("--group,-g", cfg.group, "GL, GU, PGL, PGU or a full descriptor like GU_3(2)")->required();
  verify_cmd->add_option("--d", cfg.d, "Dimension");
  verify_cmd->add_option("--q", cfg.q, "Field size q = 2^f");
  verify_cmd->add_flag("--full-scan", cfg.full_scan, "Check every odd-order element individually");
  verify_cmd->add_option("--gu-method", cfg.gu_method, "auto, filter or closure");
  verify_cmd->add_option("--seed", cfg.seed, "Seed for the generator search of the closure method");
  add_common(verify_cmd);

  auto* auto_cmd = app.add_subcommand("auto-order", "Order of a torus automorphism word");
  add_group_params(auto_cmd, true);
  std::string t_text;
  auto_cmd->add_option("--t", t_text, "Diagonal entries as comma separated encodings");
  auto_cmd->add_option("--graph-exp", cfg.graph_exp, "Exponent of the graph automorphism");
  auto_cmd->add_option("--field-exp", cfg.field_exp, "Exponent of the field automorphism");
  add_common(auto_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "Exhaustive sweep over classes or automorphism words");
  add_group_params(sweep_cmd, true);
  sweep_cmd->add_option("--kind", cfg.sweep_kind, "classes or torus-orders")
      ->check(CLI::IsMember({"classes", "torus-orders"}));
  add_common(sweep_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, out);
    return std::nullopt;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, out);
    return std::nullopt;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out, out);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (*classify_cmd) {
    cfg.command = Command::Classify;
  } else if (*certify_cmd) {
    cfg.command = Command::Certify;
  } else if (*oracle_cmd) {
    cfg.command = Command::OracleVerify;
  } else if (*auto_cmd) {
    cfg.command = Command::AutoOrder;
    if (!t_text.empty()) cfg.t = parse_encodings(t_text);
  } else {
    cfg.command = Command::Sweep;
  }
  cfg.format = format == "tsv" ? Format::Tsv : Format::Json;
  validate(cfg);
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    const auto start = std::chrono::steady_clock::now();
    FieldLog fields;
    Json payload;
    switch (cfg.command) {
      case Command::Classify: payload = classify(cfg, fields); break;
      case Command::Certify: payload = certify(cfg); break;
      case Command::OracleVerify: payload = oracle_verify(cfg, fields); break;
      case Command::AutoOrder: payload = auto_order(cfg, fields); break;
      case Command::Sweep: payload = sweep(cfg, fields); break;
    }
    const bool ok = all_checks_ok(payload.at("checks"));
    Json report;
    report["tool"] = "e1forge";
    report["version"] = E1FORGE_VERSION;
    report["command"] = to_string(cfg.command);
    report["fields"] = fields.to_json();
    for (auto& [k, v] : payload.items()) report[k] = v;
    report["ok"] = ok;
    if (cfg.timing) {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
      std::ostringstream os;
      os << std::fixed << std::setprecision(3) << dt.count();
      report["elapsed"] = os.str();
    }
    emit(report, cfg, out);
    return ok ? kExitOk : kExitCheckFailed;
  } catch (const UsageError& e) {
    err << "e1forge: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "e1forge: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "e1forge: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "e1forge: budget exceeded: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    err << "e1forge: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> cfg;
  try {
    cfg = parse_args(argc, argv, out);
  } catch (const UsageError& e) {
    err << "e1forge: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }
  if (!cfg) return kExitOk;
  return run(*cfg, out, err);
}

}  // namespace e1forge::cli
