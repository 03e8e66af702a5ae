#include "qhv/initial_cases.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "qhv/error.hpp"
#include "qhv/fp_matrix.hpp"
#include "qhv/notation.hpp"
#include "qhv/parallel.hpp"
#include "qhv/reduction.hpp"

namespace qhv {

void FamilySpec::validate() const {
  if (m < 1) throw Error(ErrorCode::InvalidConfig, "m must be positive");
  if (k < 0) throw Error(ErrorCode::InvalidConfig, "k must be non-negative");
  if (a < m || (k == 0 && a < 2 * m))
    throw Error(ErrorCode::InvalidConfig, "need a >= m, and a >= 2m when k = 0");
}

namespace {

// source pair (a', b') for the throwout inequality at pair index i
inline bool pair_ok(const FamilySpec& spec, std::int64_t x, std::int64_t y, int i) {
  if (y <= 0) return true;
  const std::int64_t a1 = spec.k > 0 ? spec.a : spec.a + i;
  const std::int64_t b1 = spec.k > 0 ? spec.a : spec.a + i + 1;
  return x + (x - y + b1 - a1) * spec.m >= a1;
}

inline std::int64_t upper(const FamilySpec& spec, std::int64_t prev) {
  return spec.k > 0 ? prev : prev + 1;
}

std::int64_t base_cells(const FamilySpec& spec) {
  const std::int64_t a = spec.a;
  return a * (a + 1) / 2 + a * spec.k;
}

}  // namespace

void for_each_tail(const FamilySpec& spec,
                   const std::function<void(const std::vector<std::int64_t>&)>& visit) {
  spec.validate();
  const auto len = static_cast<std::size_t>(spec.m - 1);
  std::vector<std::int64_t> tail(len, 0);
  auto rec = [&](auto&& self, std::size_t j, std::int64_t prev) -> void {
    if (j == len) {
      visit(tail);
      return;
    }
    for (std::int64_t v = 0, hi = upper(spec, prev); v <= hi; ++v) {
      tail[j] = v;
      self(self, j + 1, v);
    }
  };
  rec(rec, 0, spec.a);
}

Diagram family_diagram(const FamilySpec& spec, const std::vector<std::int64_t>& tail) {
  std::vector<std::int64_t> rest(static_cast<std::size_t>(spec.k), spec.a);
  rest.insert(rest.end(), tail.begin(), tail.end());
  return bar_diagram(spec.a, rest);
}

std::vector<Diagram> enumerate_family(const FamilySpec& spec) {
  std::vector<Diagram> out;
  for_each_tail(spec, [&](const auto& t) { out.push_back(family_diagram(spec, t)); });
  return out;
}

bool throwout_keep(const FamilySpec& spec, const std::vector<std::int64_t>& tail) {
  std::int64_t prev = spec.a;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    if (!pair_ok(spec, prev, tail[i], static_cast<int>(i))) return false;
    prev = tail[i];
  }
  return true;
}

bool throwout_filter(const Diagram& d, const FamilySpec& spec) {
  const auto start = static_cast<std::size_t>(spec.a + spec.k);
  std::vector<std::int64_t> tail(static_cast<std::size_t>(spec.m - 1), 0);
  for (std::size_t i = 0; i < tail.size() && start + i < d.layers.size(); ++i)
    tail[i] = d.layers[start + i];
  return throwout_keep(spec, tail);
}

FamilyCounts count_family(const FamilySpec& spec) {
  spec.validate();
  FamilyCounts out;
  const int len = spec.m - 1;
  std::int64_t max_cells = 0;
  auto rec = [&](auto&& self, int j, std::int64_t prev, std::int64_t cells, bool ok) -> void {
    if (j == len) {
      ++out.total;
      out.kept += ok;
      max_cells = std::max(max_cells, cells);
      return;
    }
    for (std::int64_t v = 0, hi = upper(spec, prev); v <= hi; ++v)
      self(self, j + 1, v, cells + v, ok && pair_ok(spec, prev, v, j));
  };
  rec(rec, 0, spec.a, base_cells(spec), true);
  out.max_p_plus_1 = max_cells / (std::int64_t{spec.m} * (spec.m + 1) / 2) + 1;
  return out;
}

namespace {

// V(D; m^p) and V(D; m^(p+1)) with p = p(D)
bool certify_pair(const Diagram& d, std::int64_t m, const ClassifyConfig& cfg) {
  const auto p = p_of(d, m);
  if (static_cast<std::size_t>(d.cells()) > cfg.max_cols) return false;
  std::vector<std::int64_t> mults(static_cast<std::size_t>(p + 1), m);
  auto vs = certify_nonspecial_rank_nested(
      d, mults, {static_cast<std::size_t>(p), static_cast<std::size_t>(p + 1)}, cfg.field);
  return vs[0].conclusive() && vs[1].conclusive();
}

std::optional<Diagram> reduce_times(Diagram d, std::int64_t m, int s) {
  for (int i = 0; i < s; ++i) {
    if (static_cast<std::int64_t>(d.size()) < m) return std::nullopt;
    auto step = reduce_m(d, m);
    if (!step) return std::nullopt;
    d = std::move(step->result);
  }
  return d;
}

}  // namespace

InitialCasesReport run_initial_cases(const FamilySpec& spec, int s, int jobs,
                                     const ClassifyConfig& cfg) {
  if (s < 0) throw Error(ErrorCode::InvalidConfig, "s must be non-negative");
  spec.validate();
  cfg.field.validate();
  const auto t0 = std::chrono::steady_clock::now();
  InitialCasesReport rep;
  rep.spec = spec;
  rep.s = s;

  std::vector<Diagram> work;
  std::int64_t max_cells = 0;
  for_each_tail(spec, [&](const auto& tail) {
    ++rep.total_diagrams;
    Diagram d = family_diagram(spec, tail);
    max_cells = std::max(max_cells, d.cells());
    if (throwout_keep(spec, tail))
      work.push_back(std::move(d));
    else
      ++rep.filtered_out;
  });
  const std::int64_t m = spec.m;
  rep.max_p_plus_1 = max_cells / (m * (m + 1) / 2) + 1;

  std::vector<char> done(work.size(), 0);
  for (int level = s; level >= 1; --level) {
    PassStats st;
    st.s = level;
    std::map<Diagram, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (done[i]) continue;
      ++st.candidates;
      if (auto r = reduce_times(work[i], m, level)) {
        ++st.reduced;
        groups[std::move(*r)].push_back(i);
      }
    }
    std::vector<const std::pair<const Diagram, std::vector<std::size_t>>*> items;
    for (const auto& g : groups) items.push_back(&g);
    std::vector<char> good(items.size(), 0);
    parallel_for(items.size(), jobs, [&](std::size_t i) {
      good[i] = certify_pair(items[i]->first, m, cfg);
    });
    st.distinct = items.size();
    rep.rank_computations += items.size();
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (!good[i]) continue;
      for (auto idx : items[i]->second) {
        done[idx] = 1;
        ++st.done;
      }
    }
    rep.passes.push_back(st);
  }

  PassStats last;
  last.s = 0;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < work.size(); ++i)
    if (!done[i]) rest.push_back(i);
  last.candidates = rest.size();
  last.distinct = rest.size();
  std::vector<char> good(rest.size(), 0);
  parallel_for(rest.size(), jobs, [&](std::size_t i) { good[i] = certify_pair(work[rest[i]], m, cfg); });
  rep.rank_computations += rest.size();
  rep.ok = true;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (good[i]) {
      ++last.done;
      continue;
    }
    if (rep.ok) {
      rep.ok = false;
      rep.counterexample = work[rest[i]];
      rep.failure = "V(D;" + std::to_string(m) + "^p) or V(D;" + std::to_string(m) +
                    "^(p+1)) not certified for D = " + format(work[rest[i]]);
    }
  }
  rep.passes.push_back(last);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace qhv
