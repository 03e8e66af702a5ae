// qhverify: command line front end for the verification library.
//   exit 0  success (OK / conclusive)
//   exit 1  NOT_OK, Inconclusive, ledger failures
//   exit 2  usage, parse or configuration errors

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "qhv/cache.hpp"
#include "qhv/classify.hpp"
#include "qhv/error.hpp"
#include "qhv/fp_matrix.hpp"
#include "qhv/initial_cases.hpp"
#include "qhv/ledger.hpp"
#include "qhv/notation.hpp"
#include "qhv/reduction.hpp"
#include "qhv/report.hpp"

using namespace qhv;

namespace {

struct Globals {
  bool json = false;
  bool timings = false;
  std::string cache_path;
  bool no_cache = false;
};

struct FieldOpts {
  std::uint64_t prime = kMersenne31;
  std::uint64_t seed = 20240601;
  int attempts = 3;
  std::size_t max_cols = 2000;
};

void add_field_options(CLI::App* cmd, FieldOpts& f) {
  cmd->add_option("--prime", f.prime, "prime modulus for rank computations")->capture_default_str();
  cmd->add_option("--seed", f.seed, "seed for random points")->capture_default_str();
  cmd->add_option("--attempts", f.attempts, "rank attempts before giving up")->capture_default_str();
  cmd->add_option("--max-cols", f.max_cols, "refuse larger matrices")->capture_default_str();
}

ClassifyConfig make_config(const FieldOpts& f) {
  ClassifyConfig cfg;
  cfg.field.p = f.prime;
  cfg.field.seed = f.seed;
  cfg.field.attempts = f.attempts;
  cfg.max_cols = f.max_cols;
  cfg.field.validate();
  return cfg;
}

std::unique_ptr<ResultCache> open_cache(const Globals& g) {
  if (g.no_cache) return nullptr;
  std::string path = g.cache_path;
  if (path.empty())
    if (const char* env = std::getenv("QHV_CACHE")) path = env;
  if (path.empty()) return nullptr;
  auto c = std::make_unique<ResultCache>(path);
  for (const auto& w : c->warnings()) std::cerr << "warning: " << w << "\n";
  return c;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_dim(const Globals& g, const std::string& text, bool expected) {
  auto sys = parse_system(text);
  auto value = expected ? edim(sys) : vdim(sys);
  if (g.json)
    print_json({{"input", format(sys)}, {expected ? "edim" : "vdim", value}});
  else
    std::cout << value << "\n";
  return 0;
}

int cmd_crst(const Globals& g, const std::string& text) {
  auto sys = parse_system(text);
  auto sf = standard_form(sys);
  if (g.json) {
    Json chain = Json::array();
    for (const auto& s : sf.chain)
      chain.push_back({{"op", s.op}, {"params", s.params}, {"before", s.before}, {"after", s.after}});
    print_json({{"input", format(sys)},
                {"standard_form", format(sf.system)},
                {"vdim", vdim(sf.system)},
                {"chain", chain}});
    return 0;
  }
  for (const auto& s : sf.chain)
    std::cout << s.op << (s.params.empty() ? "" : " " + s.params) << ": " << s.before << " -> "
              << s.after << "\n";
  std::cout << "standard form: " << format(sf.system) << "\n";
  return 0;
}

int cmd_classify(const Globals& g, const std::string& text, const FieldOpts& f, bool no_axioms) {
  auto sys = parse_system(text);
  auto cfg = make_config(f);
  cfg.use_axioms = !no_axioms;
  const auto input = format(sys);
  auto cache = open_cache(g);
  const auto key = ResultCache::key("classify", input, cfg);
  Json rec;
  bool hit = false;
  if (cache) {
    if (auto r = cache->get(key)) {
      rec = *r;
      hit = true;
    }
  }
  std::optional<Verdict> fresh;
  double seconds = 0;
  if (!hit) {
    const auto t0 = std::chrono::steady_clock::now();
    fresh = classify(sys, cfg);
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rec = classify_record(input, *fresh, cfg);
    if (cache && fresh->conclusive()) cache->put(key, rec);
  }
  const bool conclusive = rec["kind"] != "INCONCLUSIVE";
  if (g.json) {
    Json out = rec;
    out["cache_hit"] = hit;
    if (g.timings) out["seconds"] = seconds;
    print_json(out);
  } else {
    std::string line = input + ": " + rec["kind"].get<std::string>();
    if (!rec["dim"].is_null()) line += " dim " + std::to_string(rec["dim"].get<std::int64_t>());
    for (std::size_t i = 0; i < rec["methods"].size(); ++i)
      line += (i ? "," : " via ") + rec["methods"][i].get<std::string>();
    if (fresh) line = verdict_line(*fresh);
    std::cout << line << (hit ? " (cached)" : "") << "\n";
    if (g.timings) std::cout << "  " << seconds << " s\n";
  }
  return conclusive ? 0 : 1;
}

std::vector<std::int64_t> ordered(std::vector<std::int64_t> m, const std::string& order) {
  if (order == "desc") std::stable_sort(m.begin(), m.end(), std::greater<>());
  else if (order != "given") throw Error(ErrorCode::InvalidConfig, "--order is given or desc");
  return m;
}

int cmd_reduce(const Globals& g, const std::string& dtext, const std::string& mtext,
               const std::string& order, bool enlarge) {
  auto d = parse_diagram(dtext);
  auto mults = ordered(parse_mults(mtext), order);
  auto t = reduce_chain(d, mults);
  std::optional<EnlargeCertificate> big;
  if (enlarge && !t.certifies() && !t.reaches_empty())
    big = try_empty_by_enlarge(t.final_diagram(), t.residual_mults);
  if (g.json) {
    Json j = trace_json(t);
    j["vdim"] = vdim_space(d, mults);
    if (big) j["enlarged"] = {{"diagram", format(big->enlarged)}, {"trace", trace_json(big->trace)}};
    print_json(j);
    return 0;
  }
  std::cout << reduction_table(t);
  if (t.certifies())
    std::cout << "all conditions consumed: V is non-special of dimension "
              << t.final_diagram().cells() << "\n";
  else if (t.reaches_empty())
    std::cout << "diagram emptied: V = 0\n";
  if (big) {
    std::cout << "enlarged to " << format(big->enlarged) << ":\n" << reduction_table(big->trace);
    std::cout << "diagram emptied: V = 0\n";
  }
  return 0;
}

int cmd_rank(const Globals& g, const std::string& system_text, const std::string& dtext,
             const std::string& mtext, const FieldOpts& f) {
  auto cfg = make_config(f);
  Diagram d;
  std::vector<std::int64_t> mults;
  std::optional<LinearSystem> sys;
  if (!system_text.empty()) {
    sys = parse_system(system_text);
    if (sys->degree < 0) throw Error(ErrorCode::Precondition, "rank needs a degree >= 0");
    d = triangle(sys->degree + 1);
    mults = sys->mults;
  } else {
    if (dtext.empty()) throw Error(ErrorCode::InvalidConfig, "give SYSTEM or --diagram/--mults");
    d = parse_diagram(dtext);
    mults = parse_mults(mtext);
  }
  if (static_cast<std::size_t>(d.cells()) > cfg.max_cols)
    throw Error(ErrorCode::InvalidConfig, "matrix has " + std::to_string(d.cells()) +
                                              " columns, above --max-cols");
  Verdict v = certify_nonspecial_rank(d, mults, cfg.field);
  Verdict shown = sys ? space_to_system(*sys, v) : v;
  if (g.json) {
    Json j = verdict_json(shown);
    j["space"] = space_subject(d, mults);
    j["vdim_space"] = vdim_space(d, mults);
    print_json(j);
  } else {
    std::cout << verdict_line(shown) << "\n";
  }
  return v.conclusive() ? 0 : 1;
}

int cmd_initial_cases(const Globals& g, const FamilySpec& spec, int s, int jobs,
                      bool enumerate_only, const FieldOpts& f) {
  spec.validate();
  if (enumerate_only) {
    auto c = count_family(spec);
    if (g.json) {
      print_json({{"m", spec.m},
                  {"a", spec.a},
                  {"k", spec.k},
                  {"total_diagrams", c.total},
                  {"kept", c.kept},
                  {"filtered_out", c.total - c.kept},
                  {"max_p_plus_1", c.max_p_plus_1},
                  {"version", QHV_VERSION}});
    } else {
      std::cout << "diagrams " << c.total << ", kept " << c.kept << ", max p+1 = "
                << c.max_p_plus_1 << "\n";
    }
    return 0;
  }
  auto rep = run_initial_cases(spec, s, jobs, make_config(f));
  if (g.json) {
    print_json(initial_cases_json(rep, g.timings));
  } else {
    std::cout << "family m=" << spec.m << " a=" << spec.a << " k=" << spec.k << " s=" << s << ": "
              << (rep.ok ? "OK" : "NOT_OK") << "\n";
    std::cout << "  diagrams " << rep.total_diagrams << ", filtered out " << rep.filtered_out
              << ", max p+1 = " << rep.max_p_plus_1 << "\n";
    for (const auto& p : rep.passes)
      std::cout << "  level " << p.s << ": candidates " << p.candidates << ", distinct "
                << p.distinct << ", settled " << p.done << "\n";
    if (!rep.ok) std::cout << "  " << rep.failure << "\n";
    if (g.timings) std::cout << "  " << rep.seconds << " s\n";
  }
  return rep.ok ? 0 : 1;
}

int cmd_ledger_verify(const Globals& g, const std::string& path, const LedgerRunOptions& opts,
                      bool all) {
  auto entries = load_ledger(path);
  auto rep = verify_ledger(entries, opts);
  if (g.json) {
    print_json(ledger_json(rep, opts.range, all));
  } else {
    std::cout << "entries " << rep.entries << ", instances " << rep.instances << ", passed "
              << rep.passed << ", failed " << rep.failed << ", skipped " << rep.skipped << "\n";
    for (const auto& r : rep.results) {
      if (r.skipped) std::cout << "  flagged " << r.entry << " " << format(r.system) << "\n";
      else if (!r.passed)
        std::cout << "  FAIL " << r.entry << " " << format(r.system) << ": " << r.failure << "\n";
      else if (all)
        std::cout << "  ok " << r.entry << " " << verdict_line(r.verdict) << "\n";
    }
    for (const auto& c : rep.conflicts) std::cout << "  conflict " << c << "\n";
    std::cout << (rep.ok() ? "OK" : "NOT_OK") << "\n";
  }
  return rep.ok() ? 0 : 1;
}

int cmd_ledger_list(const Globals& g, const std::string& path) {
  auto entries = load_ledger(path);
  if (g.json) {
    Json arr = Json::array();
    for (const auto& e : entries)
      arr.push_back({{"id", e.id}, {"method", e.method}, {"anchor", e.anchor},
                     {"pattern", e.pattern.text}, {"line", e.line}});
    print_json(arr);
    return 0;
  }
  for (const auto& e : entries) std::cout << e.id << "  " << e.method << "  " << e.pattern.text << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification of quasi-homogeneous linear systems of plane curves"};
  app.set_version_flag("--version", QHV_VERSION);
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_flag("--timings", g.timings, "include wall times");
  app.add_option("--cache", g.cache_path, "JSONL result cache (default: $QHV_CACHE)");
  app.add_flag("--no-cache", g.no_cache, "neither read nor write the cache");

  std::string system;
  auto* vd = app.add_subcommand("vdim", "virtual dimension");
  vd->add_option("system", system, "e.g. L(13;5,4^9)")->required();
  auto* ed = app.add_subcommand("edim", "expected dimension");
  ed->add_option("system", system)->required();
  auto* cr = app.add_subcommand("crst", "standard form with the Cremona chain");
  cr->add_option("system", system)->required();

  FieldOpts field;
  bool no_axioms = false;
  auto* cl = app.add_subcommand("classify", "classify a linear system");
  cl->add_option("system", system)->required();
  add_field_options(cl, field);
  cl->add_flag("--no-axioms", no_axioms, "skip the axiom shortcut");

  std::string diagram, mults, order = "given";
  bool enlarge = false;
  auto* rd = app.add_subcommand("reduce", "reduction chain of V(D;M)");
  rd->add_option("--diagram", diagram, "e.g. (~32)")->required();
  rd->add_option("--mults", mults, "e.g. 12,9^9")->required();
  rd->add_option("--order", order, "given or desc")->capture_default_str();
  rd->add_flag("--enlarge", enlarge, "try enlargement when the chain stops");

  auto* rk = app.add_subcommand("rank", "rank certificate for V(D;M) or a system");
  rk->add_option("system", system);
  rk->add_option("--diagram", diagram);
  rk->add_option("--mults", mults);
  add_field_options(rk, field);

  FamilySpec spec;
  int s = 2, jobs = 1;
  bool enumerate_only = false;
  auto* ic = app.add_subcommand("initial-cases", "certify a diagram family");
  ic->add_option("--m", spec.m)->required();
  ic->add_option("--a", spec.a)->required();
  ic->add_option("--k", spec.k)->required();
  ic->add_option("--s", s, "reduction depth")->capture_default_str();
  ic->add_option("--jobs", jobs)->capture_default_str();
  ic->add_flag("--enumerate-only", enumerate_only, "count diagrams, no matrices");
  add_field_options(ic, field);

  std::string ledger_path = QHV_DEFAULT_LEDGER;
  LedgerRunOptions lopts;
  bool all = false;
  auto* lg = app.add_subcommand("ledger", "case ledger");
  lg->require_subcommand(1);
  auto* lv = lg->add_subcommand("verify", "run every entry over the window");
  lv->add_option("--ledger", ledger_path)->capture_default_str();
  lv->add_option("--entry", lopts.entry, "entry id or method name");
  lv->add_option("--m-max", lopts.range.m_max)->capture_default_str();
  lv->add_option("--k-max", lopts.range.k_max)->capture_default_str();
  lv->add_option("--r-max", lopts.range.r_max)->capture_default_str();
  lv->add_option("--jobs", lopts.jobs)->capture_default_str();
  lv->add_flag("--all", all, "list every instance");
  auto* ll = lg->add_subcommand("list", "list entries");
  ll->add_option("--ledger", ledger_path)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*vd) return cmd_dim(g, system, false);
    if (*ed) return cmd_dim(g, system, true);
    if (*cr) return cmd_crst(g, system);
    if (*cl) return cmd_classify(g, system, field, no_axioms);
    if (*rd) return cmd_reduce(g, diagram, mults, order, enlarge);
    if (*rk) return cmd_rank(g, system, diagram, mults, field);
    if (*ic) return cmd_initial_cases(g, spec, s, jobs, enumerate_only, field);
    if (*lv) return cmd_ledger_verify(g, ledger_path, lopts, all);
    if (*ll) return cmd_ledger_list(g, ledger_path);
  } catch (const Error& e) {
    if (g.json)
      print_json({{"error", std::string(to_string(e.code()))}, {"message", e.what()}});
    else
      std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
