#include "qhv/classify.hpp"

#include <string>

#include "qhv/error.hpp"
#include "qhv/fp_matrix.hpp"
#include "qhv/notation.hpp"
#include "qhv/reduction.hpp"

namespace qhv {

namespace {

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

void append_reduction(Verdict& v, const ReductionTrace& t) {
  const Diagram* prev = &t.initial;
  for (const auto& step : t.steps) {
    v.trace.push_back({"REDUCE", "m=" + std::to_string(step.m) + ",v=" + join(step.v),
                       format(*prev), format(step.result)});
    prev = &step.result;
  }
  if (!t.steps.empty()) v.add_method("REDUCTION");
}

void absorb(Verdict& into, const Verdict& from) {
  into.trace.insert(into.trace.end(), from.trace.begin(), from.trace.end());
  for (const auto& m : from.methods) into.add_method(m);
  for (auto a : from.axioms) into.add_axiom(a);
  if (from.rank) into.rank = from.rank;
}

}  // namespace

Verdict classify_space(const Diagram& d, const std::vector<std::int64_t>& mults,
                       const ClassifyConfig& cfg) {
  for (auto m : mults)
    if (m < 0) throw Error(ErrorCode::Precondition, "spaces take non-negative multiplicities");
  Verdict out;
  out.subject = space_subject(d, mults);

  ReductionTrace chain;
  chain.initial = d;
  chain.residual_mults = mults;
  if (cfg.use_reduction) {
    chain = reduce_chain(d, mults);
    if (chain.certifies() || chain.reaches_empty()) {
      append_reduction(out, chain);
      out.kind = VerdictKind::NonSpecial;
      out.dim = chain.final_diagram().cells();
      return out;
    }
    const Diagram& rest = chain.final_diagram();
    if (auto big = try_empty_by_enlarge(rest, chain.residual_mults)) {
      append_reduction(out, chain);
      out.trace.push_back({"ENLARGE", "t=" + std::to_string(big->enlarged.size()), format(rest),
                           format(big->enlarged)});
      Verdict tail;
      append_reduction(tail, big->trace);
      absorb(out, tail);
      out.add_method("ENLARGE");
      out.kind = VerdictKind::NonSpecial;
      out.dim = 0;
      return out;
    }
  }

  if (!cfg.use_rank) {
    out.reason = "reduction chain stops with residual multiplicities " +
                 format_mults(chain.residual_mults);
    return out;
  }
  if (static_cast<std::size_t>(d.cells()) <= cfg.max_cols) {
    Verdict r = certify_nonspecial_rank(d, mults, cfg.field);
    r.subject = out.subject;
    return r;
  }
  const Diagram& rest = chain.final_diagram();
  if (static_cast<std::size_t>(rest.cells()) <= cfg.max_cols) {
    Verdict r = certify_nonspecial_rank(rest, chain.residual_mults, cfg.field);
    if (r.conclusive()) {
      append_reduction(out, chain);
      absorb(out, r);
      out.kind = VerdictKind::NonSpecial;
      out.dim = r.dim;
      return out;
    }
    out.reason = r.reason;
    return out;
  }
  out.reason = "matrix with " + std::to_string(rest.cells()) + " columns exceeds max_cols " +
               std::to_string(cfg.max_cols);
  return out;
}

Verdict space_to_system(const LinearSystem& system, const Verdict& space) {
  Verdict v;
  v.subject = format(system);
  absorb(v, space);
  v.reason = space.reason;
  if (!space.conclusive() || !space.dim) return v;
  const auto proj = *space.dim - 1;
  v.kind = proj < 0 ? VerdictKind::Empty : VerdictKind::NonSpecial;
  v.dim = proj;
  return v;
}

namespace {

Verdict classify_terminal(const LinearSystem& sys, const ClassifyConfig& cfg) {
  if (cfg.use_axioms) {
    auto ax = cfg.simple_points_axiom ? classify_by_simple_points(sys) : classify_by_axioms(sys);
    if (ax) return *ax;
  }
  return space_to_system(sys, classify_space(triangle(sys.degree + 1), sys.mults, cfg));
}

}  // namespace

Verdict classify(const LinearSystem& system, const ClassifyConfig& cfg) {
  Verdict out;
  out.subject = format(system);
  LinearSystem cur = system;
  std::vector<Int> fixed;
  // normalization: CrSt, then strip negative entries, until nothing changes;
  // the degree never increases so this terminates
  for (;;) {
    auto sf = standard_form(cur);
    if (!sf.chain.empty()) out.add_method("CRST");
    out.trace.insert(out.trace.end(), sf.chain.begin(), sf.chain.end());
    cur = std::move(sf.system);
    if (cur.degree < 0) {
      out.trace.push_back({"EMPTY_DEGREE", "", format(cur), format(cur)});
      out.kind = VerdictKind::Empty;
      out.dim = -1;
      out.fixed_components = fixed;
      return out;
    }
    bool negative = false;
    for (auto m : cur.mults) negative |= m < 0;
    if (!negative) break;
    auto st = strip_negative_mults(cur);
    out.trace.push_back(st.step);
    fixed.insert(fixed.end(), st.fixed_components.begin(), st.fixed_components.end());
    cur = std::move(st.system);
  }
  out.fixed_components = fixed;

  Verdict term = classify_terminal(cur, cfg);
  absorb(out, term);
  if (fixed.empty()) {
    out.kind = term.kind;
    out.dim = term.dim;
    out.reason = term.reason;
    return out;
  }
  out.children.push_back(term);
  switch (term.kind) {
    case VerdictKind::Empty:
      out.kind = VerdictKind::Empty;
      out.dim = -1;
      break;
    case VerdictKind::NonSpecial:
    case VerdictKind::MinusOneSpecial:
      out.kind = VerdictKind::MinusOneSpecial;
      out.dim = term.dim;
      break;
    case VerdictKind::Inconclusive:
      // a system with vdim >= 0 is never empty
      if (vdim(cur) >= 0) {
        out.kind = VerdictKind::MinusOneSpecial;
        out.reason = "stripped system has vdim >= 0; its dimension is not certified";
      } else {
        out.reason = term.reason;
      }
      break;
  }
  return out;
}

std::optional<LinearSystem> dim_lower_bound_step(const LinearSystem& system) {
  LinearSystem lower{system.degree - 1, system.mults};
  if (vdim(lower) < -1) return std::nullopt;
  return lower;
}

Verdict certify_by_degree_drop(const LinearSystem& system, const Verdict& lower) {
  const LinearSystem l{system.degree - 1, system.mults};
  if (lower.subject != format(l) && lower.subject != format(canonical(l)))
    throw Error(ErrorCode::ShapeMismatch, "certificate is for " + lower.subject + ", not " +
                                              format(l));
  if (vdim(l) < -1) return inconclusive(format(system), "vdim of the lower system is below -1");
  if (!lower.non_special())
    return inconclusive(format(system), "lower system is not certified non-special");
  // dim L(d) <= dim L(d-1) + d + 1 = vdim L(d)
  Verdict v;
  v.subject = format(system);
  v.kind = VerdictKind::NonSpecial;
  v.dim = edim(system);
  v.add_method("DEGREE_DROP");
  v.trace.push_back({"DEGREE_DROP", "", v.subject, format(l)});
  v.children.push_back(lower);
  return v;
}

}  // namespace qhv
