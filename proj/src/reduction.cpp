#include "qhv/reduction.hpp"

#include <string>

#include "qhv/error.hpp"

namespace qhv {

std::optional<ReductionStep> reduce_m(const Diagram& d, std::int64_t m) {
  if (m < 1) throw Error(ErrorCode::Precondition, "reduction needs m >= 1");
  const auto n = static_cast<std::int64_t>(d.layers.size());
  if (n < m)
    throw Error(ErrorCode::TooShort, "diagram has " + std::to_string(n) + " layers, " +
                                         std::to_string(m) + "-reduction needs " +
                                         std::to_string(m));
  // membership flags for V = {1..m}; `top` tracks max V
  std::vector<char> in_v(static_cast<std::size_t>(m) + 1, 1);
  in_v[0] = 0;
  std::int64_t top = m, left = m;
  std::vector<std::int64_t> v(static_cast<std::size_t>(m));
  const std::int64_t base = n - m;
  for (std::int64_t j = m; j >= 1; --j) {
    const auto a = d.layers[static_cast<std::size_t>(base + j - 1)];
    const std::int64_t vj = (a < m && top >= a) ? a : top;
    v[static_cast<std::size_t>(j - 1)] = vj;
    if (vj >= 1 && in_v[static_cast<std::size_t>(vj)]) {
      in_v[static_cast<std::size_t>(vj)] = 0;
      --left;
      while (top > 0 && !in_v[static_cast<std::size_t>(top)]) --top;
    }
  }
  if (left != 0) return std::nullopt;

  std::vector<std::int64_t> layers = d.layers;
  for (std::int64_t j = 1; j <= m; ++j) {
    auto& c = layers[static_cast<std::size_t>(base + j - 1)];
    c -= v[static_cast<std::size_t>(j - 1)];
    if (c < 0) throw Error(ErrorCode::InvalidLayer, "reduction produced a negative layer");
  }
  while (!layers.empty() && layers.back() == 0) layers.pop_back();
  return ReductionStep{m, std::move(v), Diagram{std::move(layers)}};
}

std::int64_t vdim_space(const Diagram& d, const std::vector<std::int64_t>& mults) {
  std::int64_t v = d.cells();
  for (auto m : mults) v -= m * (m + 1) / 2;
  return v;
}

std::int64_t p_of(const Diagram& d, std::int64_t m) {
  if (m < 1) throw Error(ErrorCode::Precondition, "p(D) needs m >= 1");
  return d.cells() / (m * (m + 1) / 2);
}

ReductionTrace reduce_chain(const Diagram& d, const std::vector<std::int64_t>& mults) {
  ReductionTrace trace;
  trace.initial = d;
  std::size_t i = 0;
  for (; i < mults.size(); ++i) {
    const auto m = mults[i];
    if (m < 0) throw Error(ErrorCode::Precondition, "reduction needs non-negative multiplicities");
    if (m == 0) continue;
    const Diagram& cur = trace.final_diagram();
    if (static_cast<std::int64_t>(cur.layers.size()) < m) break;
    auto step = reduce_m(cur, m);
    if (!step) break;
    trace.steps.push_back(std::move(*step));
  }
  for (; i < mults.size(); ++i)
    if (mults[i] != 0) trace.residual_mults.push_back(mults[i]);
  return trace;
}

std::optional<EnlargeCertificate> try_empty_by_enlarge(const Diagram& d,
                                                       const std::vector<std::int64_t>& mults) {
  std::int64_t conditions = 0;
  for (auto m : mults) conditions += m * (m + 1) / 2;
  for (auto t = static_cast<std::int64_t>(d.layers.size()); t * (t + 1) / 2 <= conditions; ++t) {
    Diagram big = triangle(t);
    auto trace = reduce_chain(big, mults);
    if (trace.reaches_empty()) return EnlargeCertificate{std::move(big), std::move(trace)};
  }
  return std::nullopt;
}

}  // namespace qhv
