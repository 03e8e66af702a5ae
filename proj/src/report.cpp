#include "qhv/report.hpp"

#include <algorithm>
#include <sstream>

#include "qhv/notation.hpp"

namespace qhv {

Json verdict_json(const Verdict& v, bool with_trace) {
  Json j;
  j["subject"] = v.subject;
  j["kind"] = std::string(to_string(v.kind));
  j["dim"] = v.dim ? Json(*v.dim) : Json(nullptr);
  j["methods"] = v.methods;
  Json ax = Json::array();
  for (auto a : v.axioms) ax.push_back(std::string(to_string(a)));
  j["axioms"] = ax;
  if (v.rank) {
    j["rank"] = {{"rows", v.rank->rows},   {"cols", v.rank->cols}, {"rank", v.rank->rank},
                 {"prime", v.rank->prime}, {"seed", v.rank->seed}, {"attempt", v.rank->attempt}};
  }
  if (!v.fixed_components.empty()) j["fixed_components"] = v.fixed_components;
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (with_trace) {
    Json t = Json::array();
    for (const auto& s : v.trace)
      t.push_back({{"op", s.op}, {"params", s.params}, {"before", s.before}, {"after", s.after}});
    j["trace"] = t;
    if (!v.children.empty()) {
      Json c = Json::array();
      for (const auto& ch : v.children) c.push_back(verdict_json(ch, with_trace));
      j["children"] = c;
    }
  }
  return j;
}

Json trace_json(const ReductionTrace& t) {
  Json j;
  j["initial"] = format(t.initial);
  j["initial_cells"] = t.initial.cells();
  Json steps = Json::array();
  for (const auto& s : t.steps)
    steps.push_back({{"m", s.m}, {"v", s.v}, {"result", format(s.result)}, {"cells", s.result.cells()}});
  j["steps"] = steps;
  j["final"] = format(t.final_diagram());
  j["residual_mults"] = t.residual_mults;
  j["certifies"] = t.certifies();
  j["reaches_empty"] = t.reaches_empty();
  return j;
}

Json classify_record(const std::string& input, const Verdict& v, const ClassifyConfig& cfg) {
  Json j;
  j["input"] = input;
  j["kind"] = std::string(to_string(v.kind));
  j["dim"] = v.dim ? Json(*v.dim) : Json(nullptr);
  j["methods"] = v.methods;
  Json ax = Json::array();
  for (auto a : v.axioms) ax.push_back(std::string(to_string(a)));
  j["axioms_used"] = ax;
  j["prime"] = cfg.field.p;
  j["seed"] = cfg.field.seed;
  j["attempts"] = cfg.field.attempts;
  j["max_cols"] = cfg.max_cols;
  j["use_axioms"] = cfg.use_axioms;
  j["version"] = QHV_VERSION;
  j["verdict"] = verdict_json(v);
  return j;
}

Json initial_cases_json(const InitialCasesReport& r, bool timings) {
  Json j;
  j["m"] = r.spec.m;
  j["a"] = r.spec.a;
  j["k"] = r.spec.k;
  j["s"] = r.s;
  j["status"] = r.ok ? "OK" : "NOT_OK";
  j["total_diagrams"] = r.total_diagrams;
  j["filtered_out"] = r.filtered_out;
  j["kept"] = r.total_diagrams - r.filtered_out;
  j["max_p_plus_1"] = r.max_p_plus_1;
  j["rank_computations"] = r.rank_computations;
  Json passes = Json::array();
  for (const auto& p : r.passes)
    passes.push_back({{"s", p.s},
                      {"candidates", p.candidates},
                      {"reduced", p.reduced},
                      {"distinct", p.distinct},
                      {"done", p.done}});
  j["passes"] = passes;
  j["counterexample"] = r.counterexample ? Json(format(*r.counterexample)) : Json(nullptr);
  if (!r.failure.empty()) j["failure"] = r.failure;
  j["version"] = QHV_VERSION;
  if (timings) j["seconds"] = r.seconds;
  return j;
}

namespace {

Json env_json(const Env& env) {
  Json j = Json::object();
  for (const auto& [k, v] : env) j[k] = v;
  return j;
}

}  // namespace

Json ledger_json(const LedgerReport& r, const LedgerRange& range, bool all_instances) {
  Json j;
  j["range"] = {{"m_min", range.m_min}, {"m_max", range.m_max}, {"k_max", range.k_max},
                {"r_max", range.r_max}};
  j["entries"] = r.entries;
  j["instances"] = r.instances;
  j["passed"] = r.passed;
  j["failed"] = r.failed;
  j["skipped"] = r.skipped;
  j["status"] = r.ok() ? "OK" : "NOT_OK";
  Json flagged = Json::array(), failures = Json::array(), all = Json::array();
  for (const auto& x : r.results) {
    Json item = {{"entry", x.entry},
                 {"method", x.method},
                 {"params", env_json(x.env)},
                 {"system", format(x.system)}};
    if (x.skipped) {
      flagged.push_back(item);
      continue;
    }
    if (!x.passed) {
      item["failure"] = x.failure;
      failures.push_back(item);
    }
    if (all_instances) {
      item["kind"] = std::string(to_string(x.verdict.kind));
      item["dim"] = x.verdict.dim ? Json(*x.verdict.dim) : Json(nullptr);
      item["midpoints_checked"] = x.midpoints_checked;
      all.push_back(item);
    }
  }
  j["flagged"] = flagged;
  j["failures"] = failures;
  j["conflicts"] = r.conflicts;
  if (all_instances) j["results"] = all;
  j["version"] = QHV_VERSION;
  return j;
}

std::string reduction_table(const ReductionTrace& t) {
  std::vector<const Diagram*> rows{&t.initial};
  for (const auto& s : t.steps) rows.push_back(&s.result);

  // shared bar prefix: no row may be shorter, no subtraction may reach into it
  std::int64_t bar = staircase_prefix(t.initial);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    bar = std::min(bar, staircase_prefix(*rows[i]));
    if (i > 0) {
      const auto len = static_cast<std::int64_t>(rows[i - 1]->size());
      bar = std::min(bar, len - t.steps[i - 1].m);
    }
  }
  bar = std::max<std::int64_t>(bar, 0);

  std::size_t width = 3;
  for (const auto* d : rows)
    for (auto c : d->layers) width = std::max(width, std::to_string(c).size() + 1);
  for (const auto& s : t.steps)
    for (auto x : s.v) width = std::max(width, std::to_string(x).size() + 2);

  const std::string head = bar > 1 ? "(~" + std::to_string(bar) + "," : "(";
  auto pad = [&](const std::string& s) {
    return std::string(width > s.size() ? width - s.size() : 0, ' ') + s;
  };
  std::ostringstream out;
  std::size_t line_len = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& d = *rows[i];
    std::string line = head;
    const auto first = static_cast<std::size_t>(bar > 1 ? bar : 0);
    for (std::size_t j = first; j < d.size(); ++j) line += pad(std::to_string(d.layers[j]));
    line += ")";
    line_len = std::max(line_len, line.size());
    out << line << "   #=" << d.cells() << "\n";
    if (i + 1 < rows.size()) {
      const auto& s = t.steps[i];
      std::string v(head.size(), ' ');
      const auto start = d.size() - static_cast<std::size_t>(s.m);
      for (std::size_t j = first; j < d.size(); ++j)
        v += j < start ? std::string(width, ' ') : pad("-" + std::to_string(s.v[j - start]));
      out << v << "   " << s.m << "-reduction\n";
      out << std::string(line_len, '-') << "\n";
    }
  }
  if (!t.residual_mults.empty())
    out << "stopped; not consumed: " << format_mults(t.residual_mults) << "\n";
  return out.str();
}

std::string verdict_line(const Verdict& v) {
  std::string s = v.subject + ": " + std::string(to_string(v.kind));
  if (v.dim) s += " dim " + std::to_string(*v.dim);
  if (!v.methods.empty()) {
    s += " via ";
    for (std::size_t i = 0; i < v.methods.size(); ++i) s += (i ? "," : "") + v.methods[i];
  }
  if (!v.axioms.empty()) {
    s += " [";
    for (std::size_t i = 0; i < v.axioms.size(); ++i)
      s += (i ? "," : "") + std::string(to_string(v.axioms[i]));
    s += "]";
  }
  if (v.rank)
    s += " rank " + std::to_string(v.rank->rank) + " of " + std::to_string(v.rank->rows) + "x" +
         std::to_string(v.rank->cols) + " (p=" + std::to_string(v.rank->prime) +
         ", attempt " + std::to_string(v.rank->attempt) + ")";
  if (!v.reason.empty()) s += " (" + v.reason + ")";
  return s;
}

}  // namespace qhv
