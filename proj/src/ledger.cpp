#include "qhv/ledger.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qhv/error.hpp"
#include "qhv/notation.hpp"
#include "qhv/parallel.hpp"

namespace qhv {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// splits at `sep` outside (), [], {}; "||" never splits
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == '|' && i + 1 < s.size() && s[i + 1] == '|') {
      ++i;
      continue;
    }
    if (c == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

struct OpInfo {
  std::string_view name;
  StepOp op;
  int arity;
  bool terminal;
};

constexpr OpInfo kOps[] = {
    {"GLUE", StepOp::Glue, 3, false},
    {"CREMONA", StepOp::Cremona, 0, false},
    {"CREMONA_ON", StepOp::CremonaOn, 3, false},
    {"CREMONA_PAIRS", StepOp::CremonaPairs, 1, false},
    {"CRST", StepOp::Crst, 0, false},
    {"DEGREE_DROP", StepOp::DegreeDrop, 0, false},
    {"KNOWN_IF", StepOp::KnownIf, 1, false},
    {"REDUCE_CHAIN", StepOp::ReduceChain, 0, true},
    {"RANK", StepOp::Rank, 0, true},
    {"LOW_MULTS", StepOp::LowMults, 0, true},
    {"EXPECT_STANDARD_NONSPECIAL", StepOp::ExpectStandardNonSpecial, 0, true},
    {"EXPECT_EMPTY", StepOp::ExpectEmpty, 0, true},
    {"EXPECT_MINUS_ONE", StepOp::ExpectMinusOne, 0, true},
};

const OpInfo& info(StepOp op) {
  for (const auto& i : kOps)
    if (i.op == op) return i;
  return kOps[0];
}

ScriptStep parse_step(const std::string& text) {
  TextReader r(text);
  auto name = r.identifier();
  const OpInfo* found = nullptr;
  for (const auto& i : kOps)
    if (i.name == name) found = &i;
  if (!found) r.fail("unknown step " + name);
  ScriptStep step;
  step.op = found->op;
  step.text = text;
  if (r.accept('(')) {
    if (!r.accept(')')) {
      do step.args.push_back(r.expr());
      while (r.accept(','));
      r.expect(')');
    }
  }
  if (!r.at_end()) r.fail("trailing input");
  if (static_cast<int>(step.args.size()) != found->arity)
    throw Error(ErrorCode::Parse, name + " takes " + std::to_string(found->arity) + " arguments");
  return step;
}

Midpoint parse_midpoint(const std::string& text) {
  TextReader r(text);
  Midpoint mp;
  auto n = r.primary();
  mp.step = static_cast<int>(n.eval({}));
  if (r.accept('[')) {
    mp.guard = r.expr();
    r.expect(']');
  }
  mp.system = parse_system_pattern(r.rest());
  return mp;
}

LedgerEntry parse_record(const std::string& line, int lineno) {
  auto fields = split_top(line, '|');
  if (fields.size() != 7)
    throw Error(ErrorCode::Parse, "expected 7 fields, found " + std::to_string(fields.size()));
  LedgerEntry e;
  e.line = lineno;
  e.id = fields[0];
  e.method = fields[1];
  e.anchor = fields[2];
  if (e.id.empty() || e.method.empty()) throw Error(ErrorCode::Parse, "missing id or method");
  e.pattern = parse_system_pattern(fields[3]);
  if (!fields[4].empty())
    for (const auto& c : split_top(fields[4], ';')) {
      if (c.rfind("skip ", 0) == 0)
        e.skips.push_back(parse_expr(c.substr(5)));
      else
        e.constraints.push_back(parse_expr(c));
    }
  for (const auto& s : split_top(fields[5], ';')) e.script.push_back(parse_step(s));
  for (std::size_t i = 0; i < e.script.size(); ++i) {
    const bool last = i + 1 == e.script.size();
    if (info(e.script[i].op).terminal != last)
      throw Error(ErrorCode::Parse, last ? "script must end with a terminal step"
                                         : "terminal step " + e.script[i].text + " is not last");
  }
  if (!fields[6].empty())
    for (const auto& m : split_top(fields[6], ';')) {
      auto mp = parse_midpoint(m);
      if (mp.step < 1 || mp.step > static_cast<int>(e.script.size()))
        throw Error(ErrorCode::Parse, "midpoint step out of range: " + m);
      e.midpoints.push_back(std::move(mp));
    }
  const auto vars = e.variables();
  for (const auto& v : vars)
    if (v != "m" && v != "k" && v != "r")
      throw Error(ErrorCode::Parse, "unknown variable " + v + " in pattern");
  return e;
}

}  // namespace

std::string_view to_string(StepOp op) { return info(op).name; }

LinearSystem SystemPattern::instantiate(const Env& env) const {
  LinearSystem out;
  out.degree = degree.eval(env);
  for (const auto& it : items) {
    const auto m = it.mult.eval(env);
    const auto n = it.count ? it.count->eval(env) : 1;
    if (n < 0)
      throw Error(ErrorCode::OutOfRange, "negative repeat count in " + text);
    out.mults.insert(out.mults.end(), static_cast<std::size_t>(n), m);
  }
  return out;
}

std::set<std::string> SystemPattern::variables() const {
  auto out = degree.variables();
  for (const auto& it : items) {
    auto a = it.mult.variables();
    out.insert(a.begin(), a.end());
    if (it.count) {
      auto b = it.count->variables();
      out.insert(b.begin(), b.end());
    }
  }
  return out;
}

SystemPattern parse_system_pattern(std::string_view text) {
  TextReader r(text);
  SystemPattern p;
  if (!r.accept('L')) r.fail("expected 'L('");
  r.expect('(');
  p.degree = r.sum();
  r.expect(';');
  if (r.peek() != ')') {
    do {
      SystemPattern::Item it;
      it.mult = r.sum();
      if (r.accept('^')) it.count = r.primary();
      p.items.push_back(std::move(it));
    } while (r.accept(','));
  }
  r.expect(')');
  if (!r.at_end()) r.fail("trailing input");
  p.text = trim(text);
  return p;
}

std::vector<LedgerEntry> parse_ledger(std::string_view text) {
  std::vector<LedgerEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  std::set<std::string> ids;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    try {
      auto e = parse_record(t, lineno);
      if (!ids.insert(e.id).second) throw Error(ErrorCode::Parse, "duplicate id " + e.id);
      out.push_back(std::move(e));
    } catch (const Error& err) {
      throw Error(ErrorCode::Parse, "ledger line " + std::to_string(lineno) + ": " + err.what());
    }
  }
  return out;
}

std::vector<LedgerEntry> load_ledger(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_ledger(ss.str());
}

std::vector<Instance> instantiate(const LedgerEntry& entry, const LedgerRange& range) {
  std::vector<Instance> out;
  const auto vars = entry.variables();
  auto emit = [&](const Env& env) {
    for (const auto& c : entry.constraints)
      if (!c.holds(env)) return;
    Instance inst;
    inst.env = env;
    inst.system = entry.pattern.instantiate(env);
    for (const auto& s : entry.skips) inst.skipped |= s.holds(env);
    out.push_back(std::move(inst));
  };
  struct Var {
    std::string name;
    std::int64_t lo, hi;
  };
  std::vector<Var> loop;
  if (vars.count("m")) loop.push_back({"m", range.m_min, range.m_max});
  if (vars.count("k")) loop.push_back({"k", 0, range.k_max});
  if (vars.count("r")) loop.push_back({"r", 0, range.r_max});
  Env env;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == loop.size()) {
      emit(env);
      return;
    }
    for (auto v = loop[i].lo; v <= loop[i].hi; ++v) {
      env[loop[i].name] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

Verdict SmallSystemCache::certify(const LinearSystem& small, const ClassifyConfig& cfg) {
  const auto key = format(small);
  {
    std::lock_guard lock(mu_);
    if (auto it = certs_.find(key); it != certs_.end()) return it->second;
  }
  Verdict v = classify(small, cfg);
  std::lock_guard lock(mu_);
  certs_.emplace(key, v);
  return v;
}

std::size_t SmallSystemCache::size() const {
  std::lock_guard lock(mu_);
  return certs_.size();
}

namespace {

class Runner {
 public:
  Runner(const LedgerEntry& e, const Instance& inst, const ClassifyConfig& cfg,
         SmallSystemCache& cache)
      : e_(e), env_(inst.env), cfg_(cfg), cache_(cache), cur_(inst.system) {
    res_.entry = e.id;
    res_.method = e.method;
    res_.env = inst.env;
    res_.system = inst.system;
    res_.skipped = inst.skipped;
  }

  InstanceResult run() {
    if (res_.skipped) {
      res_.verdict = inconclusive(format(res_.system), "excluded by the entry");
      return res_;
    }
    try {
      for (std::size_t i = 0; i < e_.script.size() && !terminal_; ++i) {
        step(e_.script[i]);
        check_midpoints(static_cast<int>(i + 1));
      }
      finish();
    } catch (const Error& err) {
      fail(err.what());
    }
    return res_;
  }

 private:
  void fail(std::string why) {
    res_.passed = false;
    res_.failure = std::move(why);
    if (res_.verdict.subject.empty()) res_.verdict = inconclusive(format(res_.system), res_.failure);
  }

  std::int64_t arg(const ScriptStep& s, std::size_t i) const { return s.args[i].eval(env_); }

  void record(const ScriptStep& s, const LinearSystem& before) {
    trace_.push_back({std::string(to_string(s.op)), s.text, format(before), format(cur_)});
  }

  std::size_t find_from(std::int64_t value, const std::vector<std::size_t>& taken) const {
    for (std::size_t i = 0; i < cur_.mults.size(); ++i)
      if (cur_.mults[i] == value && std::find(taken.begin(), taken.end(), i) == taken.end())
        return i;
    throw Error(ErrorCode::MissingPoints,
                format(cur_) + " has no free point of multiplicity " + std::to_string(value));
  }

  void settle(Verdict v, const std::string& what) {
    if (!v.conclusive()) throw Error(ErrorCode::Uncertified, what + ": " + v.reason);
    terminal_ = std::move(v);
  }

  void step(const ScriptStep& s) {
    const LinearSystem before = cur_;
    path_.clear();
    switch (s.op) {
      case StepOp::Glue: {
        const auto n = arg(s, 0), m = arg(s, 1), fresh = arg(s, 2);
        if (n < 1) throw Error(ErrorCode::Precondition, "GLUE needs at least one point");
        LinearSystem small(fresh - 1, std::vector<Int>(static_cast<std::size_t>(n), m));
        Verdict cert = cache_.certify(small, cfg_);
        auto g = glue(cur_, static_cast<std::size_t>(n), m, fresh - 1, cert);
        res_.glues.push_back({before, g.glued, g.small, g.vdim_before, g.vdim_after, g.vdim_small});
        certificates_.push_back(cert);
        cur_ = g.glued;
        lifted_ = true;
        break;
      }
      case StepOp::Cremona:
        cur_ = cremona(cur_);
        break;
      case StepOp::CremonaOn: {
        std::vector<std::size_t> at;
        for (std::size_t i = 0; i < 3; ++i) at.push_back(find_from(arg(s, i), at));
        cur_ = cremona_at(cur_, at[0], at[1], at[2]);
        break;
      }
      case StepOp::CremonaPairs: {
        const auto t = arg(s, 0);
        std::vector<std::size_t> pos;
        for (std::size_t i = 1; i < cur_.mults.size(); ++i)
          if (cur_.mults[i] == t) pos.push_back(i);
        if (pos.size() < 2) throw Error(ErrorCode::MissingPoints, "CREMONA_PAIRS needs two points");
        for (std::size_t i = 0; i + 1 < pos.size(); i += 2) cur_ = cremona_at(cur_, 0, pos[i], pos[i + 1]);
        break;
      }
      case StepOp::Crst: {
        // midpoints may name any system the chain passes through
        LinearSystem x = cur_;
        for (;;) {
          x = sorted(x);
          path_.push_back(x);
          if (x.degree < 0 || is_standard_form(x)) break;
          x = cremona(x);
          path_.push_back(x);
        }
        cur_ = x;
        break;
      }
      case StepOp::DegreeDrop: {
        auto lower = dim_lower_bound_step(cur_);
        if (!lower)
          throw Error(ErrorCode::Precondition, "vdim of " + format(LinearSystem(cur_.degree - 1, cur_.mults)) +
                                                   " is below -1");
        cur_ = *lower;
        lifted_ = true;
        break;
      }
      case StepOp::KnownIf: {
        if (s.args[0].holds(env_)) {
          ClassifyConfig c = cfg_;
          c.use_reduction = false;
          c.use_rank = false;
          settle(classify(cur_, c), "KNOWN_IF");
        }
        break;
      }
      case StepOp::ReduceChain: {
        ClassifyConfig c = cfg_;
        c.use_axioms = false;
        c.use_rank = false;
        settle(classify(cur_, c), "REDUCE_CHAIN");
        break;
      }
      case StepOp::Rank: {
        ClassifyConfig c = cfg_;
        c.use_axioms = false;
        c.use_reduction = false;
        settle(classify(cur_, c), "RANK");
        break;
      }
      case StepOp::LowMults: {
        cur_ = standard_form(cur_).system;
        if (cur_.degree >= 0) {
          const auto big = std::count_if(cur_.mults.begin(), cur_.mults.end(),
                                         [](Int m) { return m >= 2; });
          if (big > 2)
            throw Error(ErrorCode::Precondition,
                        format(cur_) + " keeps " + std::to_string(big) + " points of multiplicity >= 2");
        }
        ClassifyConfig c = cfg_;
        c.use_reduction = false;
        c.use_rank = false;
        c.simple_points_axiom = true;
        settle(classify(cur_, c), "LOW_MULTS");
        break;
      }
      case StepOp::ExpectStandardNonSpecial: {
        ClassifyConfig c = cfg_;
        c.use_reduction = false;
        c.use_rank = false;
        auto v = classify(cur_, c);
        if (!v.non_special())
          throw Error(ErrorCode::Uncertified, format(cur_) + " is not settled non-special by the axioms (" +
                                                  std::string(to_string(v.kind)) + ")");
        terminal_ = std::move(v);
        break;
      }
      case StepOp::ExpectEmpty: {
        auto v = classify(cur_, cfg_);
        if (v.kind != VerdictKind::Empty)
          throw Error(ErrorCode::Uncertified, format(cur_) + " is not certified empty");
        terminal_ = std::move(v);
        break;
      }
      case StepOp::ExpectMinusOne: {
        auto v = classify(cur_, cfg_);
        if (v.kind != VerdictKind::MinusOneSpecial)
          throw Error(ErrorCode::Uncertified, format(cur_) + " is not certified (-1)-special");
        terminal_ = std::move(v);
        break;
      }
    }
    record(s, before);
  }

  void check_midpoints(int stepno) {
    for (const auto& mp : e_.midpoints) {
      if (mp.step != stepno) continue;
      if (mp.guard && !mp.guard->holds(env_)) continue;
      auto want = mp.system.instantiate(env_);
      ++res_.midpoints_checked;
      const bool on_path = std::any_of(path_.begin(), path_.end(),
                                       [&](const LinearSystem& x) { return equivalent(want, x); });
      if (!equivalent(want, cur_) && !on_path)
        throw Error(ErrorCode::ShapeMismatch, "after step " + std::to_string(stepno) + " expected " +
                                                  format(canonical(want)) + ", got " +
                                                  format(canonical(cur_)));
    }
  }

  void finish() {
    if (!terminal_) throw Error(ErrorCode::Uncertified, "script ended without a verdict");
    Verdict v;
    v.subject = format(res_.system);
    v.trace = trace_;
    for (const auto& m : terminal_->methods) v.add_method(m);
    for (auto a : terminal_->axioms) v.add_axiom(a);
    v.rank = terminal_->rank;
    v.children = certificates_;
    v.children.push_back(*terminal_);
    v.add_method(e_.method);
    if (lifted_) {
      // glueing and degree drops only transport non-specialty
      if (!terminal_->non_special())
        throw Error(ErrorCode::Uncertified, "terminal system " + terminal_->subject +
                                                " is not non-special");
      const auto e = edim(res_.system);
      v.kind = e < 0 ? VerdictKind::Empty : VerdictKind::NonSpecial;
      v.dim = e;
    } else {
      v.kind = terminal_->kind;
      v.dim = terminal_->dim;
      v.fixed_components = terminal_->fixed_components;
    }
    res_.verdict = std::move(v);
    res_.passed = true;
  }

  const LedgerEntry& e_;
  const Env& env_;
  const ClassifyConfig& cfg_;
  SmallSystemCache& cache_;
  LinearSystem cur_;
  std::vector<LinearSystem> path_;
  InstanceResult res_;
  std::vector<TraceStep> trace_;
  std::vector<Verdict> certificates_;
  std::optional<Verdict> terminal_;
  bool lifted_ = false;
};

}  // namespace

InstanceResult run_instance(const LedgerEntry& entry, const Instance& instance,
                            const ClassifyConfig& cfg, SmallSystemCache& cache) {
  return Runner(entry, instance, cfg, cache).run();
}

LedgerReport verify_ledger(const std::vector<LedgerEntry>& entries, const LedgerRunOptions& opts,
                           const ClassifyConfig& cfg) {
  cfg.field.validate();
  if (opts.range.m_max < opts.range.m_min || opts.range.k_max < 0 || opts.range.r_max < 0)
    throw Error(ErrorCode::InvalidConfig, "empty ledger range");
  LedgerReport rep;
  std::vector<std::pair<const LedgerEntry*, Instance>> tasks;
  for (const auto& e : entries) {
    if (!opts.entry.empty() && e.id != opts.entry && e.method != opts.entry) continue;
    ++rep.entries;
    for (auto& inst : instantiate(e, opts.range)) tasks.emplace_back(&e, std::move(inst));
  }
  if (!opts.entry.empty() && rep.entries == 0)
    throw Error(ErrorCode::InvalidConfig, "no ledger entry named " + opts.entry);

  SmallSystemCache cache;
  rep.results.resize(tasks.size());
  parallel_for(tasks.size(), opts.jobs, [&](std::size_t i) {
    rep.results[i] = run_instance(*tasks[i].first, tasks[i].second, cfg, cache);
  });

  std::map<std::string, const InstanceResult*> seen;
  for (const auto& r : rep.results) {
    ++rep.instances;
    if (r.skipped) {
      ++rep.skipped;
      continue;
    }
    if (!r.passed) {
      ++rep.failed;
      continue;
    }
    ++rep.passed;
    auto key = format(canonical(r.system));
    auto [it, fresh] = seen.emplace(key, &r);
    if (!fresh && it->second->verdict.kind != r.verdict.kind)
      rep.conflicts.push_back(key + ": " + it->second->entry + " says " +
                              std::string(to_string(it->second->verdict.kind)) + ", " + r.entry +
                              " says " + std::string(to_string(r.verdict.kind)));
  }
  return rep;
}

}  // namespace qhv
