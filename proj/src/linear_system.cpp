#include "qhv/linear_system.hpp"

#include <algorithm>
#include <map>

#include "qhv/error.hpp"
#include "qhv/notation.hpp"

namespace qhv {

LinearSystem canonical(const LinearSystem& system) {
  LinearSystem out{system.degree, {}};
  for (Int m : system.mults)
    if (m != 0) out.mults.push_back(m);
  std::sort(out.mults.begin(), out.mults.end(), std::greater<>());
  return out;
}

bool equivalent(const LinearSystem& a, const LinearSystem& b) {
  return canonical(a) == canonical(b);
}

Int vdim(const LinearSystem& system) {
  const Int d = system.degree;
  Int v = (d + 1) * (d + 2) / 2 - 1;
  for (Int m : system.mults) v -= conditions(m);
  return v;
}

Int edim(const LinearSystem& system) { return std::max<Int>(vdim(system), -1); }

LinearSystem cremona_at(const LinearSystem& system, std::size_t i, std::size_t j,
                        std::size_t l) {
  if (i == j || j == l || i == l)
    throw Error(ErrorCode::Precondition, "cremona needs three distinct points");
  LinearSystem out = system;
  std::size_t need = std::max({i, j, l}) + 1;
  if (out.mults.size() < need) out.mults.resize(need, 0);
  const Int k = out.degree - (out.mults[i] + out.mults[j] + out.mults[l]);
  out.degree += k;
  out.mults[i] += k;
  out.mults[j] += k;
  out.mults[l] += k;
  return out;
}

LinearSystem cremona(const LinearSystem& system) { return cremona_at(system, 0, 1, 2); }

LinearSystem sorted(const LinearSystem& system) {
  LinearSystem out = system;
  std::stable_sort(out.mults.begin(), out.mults.end(), std::greater<>());
  return out;
}

namespace {

Int top3(const std::vector<Int>& m) {
  Int s = 0;
  for (std::size_t i = 0; i < 3 && i < m.size(); ++i) s += m[i];
  return s;
}

}  // namespace

bool is_standard_form(const LinearSystem& system) {
  if (system.degree < 0) return true;
  if (!std::is_sorted(system.mults.begin(), system.mults.end(), std::greater<>()))
    return false;
  return system.degree - top3(system.mults) >= 0;
}

StandardForm standard_form(const LinearSystem& system) {
  StandardForm out{system, {}};
  LinearSystem& cur = out.system;
  for (;;) {
    LinearSystem s = sorted(cur);
    if (s.mults != cur.mults) {
      out.chain.push_back({"SORT", "", format(cur), format(s)});
      cur = std::move(s);
    }
    if (cur.degree < 0 || cur.degree - top3(cur.mults) >= 0) break;
    LinearSystem next = cremona(cur);
    out.chain.push_back({"CREMONA", "at=1,2,3", format(cur), format(next)});
    cur = std::move(next);
  }
  return out;
}

StripResult strip_negative_mults(const LinearSystem& system) {
  if (system.degree < 0 || !is_standard_form(system))
    throw Error(ErrorCode::Precondition,
                "strip_negative_mults needs a standard form with d >= 0: " + format(system));
  StripResult out{system, {}, 0, {}};
  for (Int& m : out.system.mults) {
    if (m == -1) {
      ++out.simple_fixed;
      m = 0;
    } else if (m <= -2) {
      out.fixed_components.push_back(-m);
      m = 0;
    }
  }
  // drop the zeroed entries so the result stays sorted
  std::erase(out.system.mults, 0);
  std::string params = "minus_one=" + std::to_string(out.simple_fixed) + ",fixed=";
  for (std::size_t i = 0; i < out.fixed_components.size(); ++i)
    params += (i ? ";" : "") + std::to_string(out.fixed_components[i]);
  out.step = {"STRIP", params, format(system), format(out.system)};
  return out;
}

namespace {

void require_axiom_input(const LinearSystem& system) {
  if (system.degree < 0 || !is_standard_form(system))
    throw Error(ErrorCode::Precondition, "axioms need a standard form with d >= 0: " +
                                             format(system));
  for (Int m : system.mults)
    if (m < 0)
      throw Error(ErrorCode::Precondition, "axioms need non-negative multiplicities: " +
                                               format(system));
}

Verdict axiom_verdict(const LinearSystem& system, Axiom axiom) {
  Verdict v;
  const Int e = edim(system);
  v.kind = e == -1 ? VerdictKind::Empty : VerdictKind::NonSpecial;
  v.dim = e;
  v.subject = format(system);
  v.add_axiom(axiom);
  v.add_method("AXIOM");
  v.trace.push_back({"AXIOM", std::string("axiom=") + std::string(to_string(axiom)),
                     v.subject, v.subject});
  return v;
}

}  // namespace

std::optional<Verdict> classify_by_axioms(const LinearSystem& system) {
  require_axiom_input(system);
  const auto points = std::count_if(system.mults.begin(), system.mults.end(),
                                    [](Int m) { return m > 0; });
  if (points <= 9) return axiom_verdict(system, Axiom::PointsLe9);
  if (system.mults.empty() || system.mults.front() <= 11)
    return axiom_verdict(system, Axiom::MultLe11);
  return std::nullopt;
}

std::optional<Verdict> classify_by_simple_points(const LinearSystem& system) {
  if (auto v = classify_by_axioms(system)) return v;
  const auto fat = std::count_if(system.mults.begin(), system.mults.end(),
                                 [](Int m) { return m > 1; });
  if (fat <= 9) return axiom_verdict(system, Axiom::SimplePoints);
  return std::nullopt;
}

GlueResult glue(const LinearSystem& system, std::size_t s, Int m, Int k,
                const Verdict& small_certificate) {
  GlueResult out;
  out.small = LinearSystem(k, std::vector<Int>(s, m));
  if (!small_certificate.non_special())
    throw Error(ErrorCode::Uncertified, "small system " + format(out.small) +
                                            " is not certified non-special");
  if (!small_certificate.subject.empty() && small_certificate.subject != format(out.small))
    throw Error(ErrorCode::Uncertified, "certificate is for " + small_certificate.subject +
                                            ", not " + format(out.small));

  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < system.mults.size() && hits.size() < s; ++i)
    if (system.mults[i] == m) hits.push_back(i);
  if (hits.size() < s)
    throw Error(ErrorCode::MissingPoints, format(system) + " has fewer than " +
                                              std::to_string(s) + " points of multiplicity " +
                                              std::to_string(m));

  out.glued.degree = system.degree;
  std::size_t h = 0;
  for (std::size_t i = 0; i < system.mults.size(); ++i) {
    if (h < hits.size() && hits[h] == i) {
      if (h == 0) out.glued.mults.push_back(k + 1);
      ++h;
      continue;
    }
    out.glued.mults.push_back(system.mults[i]);
  }

  out.vdim_before = vdim(system);
  out.vdim_after = vdim(out.glued);
  out.vdim_small = vdim(out.small);
  const Int v1 = out.vdim_before, v2 = out.vdim_after;
  const bool ok = (-1 <= v2 && v2 <= v1) || (v1 <= v2 && v2 <= -1);
  if (!ok)
    throw Error(ErrorCode::SandwichViolated,
                format(system) + " -> " + format(out.glued) + " with vdim " +
                    std::to_string(v1) + " -> " + std::to_string(v2));
  out.step = {"GLUE",
              "s=" + std::to_string(s) + ",m=" + std::to_string(m) + ",k=" + std::to_string(k),
              format(system), format(out.glued)};
  return out;
}

namespace {

std::map<Int, Int> multiset(const std::vector<Int>& mults) {
  std::map<Int, Int> out;
  for (Int m : mults)
    if (m != 0) ++out[m];
  return out;
}

}  // namespace

Verdict verify_split(const LinearSystem& whole, const LinearSystem& first,
                     const LinearSystem& second, const Verdict& first_certificate,
                     const Verdict& second_certificate) {
  if (second.degree != whole.degree)
    throw Error(ErrorCode::ShapeMismatch, "split keeps the degree of the whole system");
  auto rest = multiset(whole.mults);
  for (auto [m, c] : multiset(first.mults)) {
    if (rest[m] < c)
      throw Error(ErrorCode::ShapeMismatch,
                  format(first) + " uses points not present in " + format(whole));
    rest[m] -= c;
    if (rest[m] == 0) rest.erase(m);
  }
  if (first.degree + 1 != 0) ++rest[first.degree + 1];
  if (rest != multiset(second.mults))
    throw Error(ErrorCode::ShapeMismatch,
                format(second) + " is not the complement of " + format(first) + " in " +
                    format(whole));

  const std::string subject = format(whole);
  if (!first_certificate.non_special() || !second_certificate.non_special())
    return inconclusive(subject, "a part of the split is not certified non-special");
  if ((vdim(first) + 1) * (vdim(second) + 1) < 0)
    return inconclusive(subject, "(vdim L1 + 1)(vdim L2 + 1) < 0");

  Verdict v;
  const Int e = edim(whole);
  v.kind = e == -1 ? VerdictKind::Empty : VerdictKind::NonSpecial;
  v.dim = e;
  v.subject = subject;
  v.add_method("SPLIT");
  v.trace.push_back({"SPLIT", "k=" + std::to_string(first.degree), subject, format(second)});
  v.children = {first_certificate, second_certificate};
  return v;
}

}  // namespace qhv
