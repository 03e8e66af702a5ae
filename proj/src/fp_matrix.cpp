#include "qhv/fp_matrix.hpp"

#include <algorithm>
#include <unordered_set>

#include "qhv/error.hpp"
#include "qhv/notation.hpp"

namespace qhv {

FpMatrix FpMatrix::identity(std::size_t n, std::uint64_t prime) {
  FpMatrix m(n, n, prime);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMatrix build_matrix(const Diagram& d, const std::vector<std::int64_t>& mults,
                      const std::vector<FpPoint>& points, std::uint64_t p) {
  if (points.size() != mults.size())
    throw Error(ErrorCode::Precondition, "need one point per multiplicity");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].x == points[j].x && points[i].y == points[j].y)
        throw Error(ErrorCode::Degenerate, "points " + std::to_string(i) + " and " +
                                               std::to_string(j) + " coincide");
  const PrimeField f(p);
  const auto mons = monomials(d);
  std::size_t rows = 0;
  for (auto m : mults) {
    if (m < 0) throw Error(ErrorCode::Precondition, "negative multiplicity in a space");
    rows += static_cast<std::size_t>(m * (m + 1) / 2);
  }
  FpMatrix a(rows, mons.size(), p);

  int deg = 0;
  for (auto [x, y] : mons) deg = std::max({deg, x, y});
  const auto n = static_cast<std::size_t>(deg) + 1;
  // ff[a * n + k] = a (a-1) ... (a-k+1)
  std::vector<std::uint32_t> ff(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    ff[x * n] = 1;
    for (std::size_t k = 1; k <= x; ++k)
      ff[x * n + k] = f.mul(ff[x * n + k - 1], static_cast<std::uint32_t>((x - k + 1) % p));
  }

  std::vector<std::uint32_t> xp(n), yp(n);
  std::size_t row = 0;
  for (std::size_t j = 0; j < points.size(); ++j) {
    xp[0] = yp[0] = 1;
    for (std::size_t e = 1; e < n; ++e) {
      xp[e] = f.mul(xp[e - 1], points[j].x);
      yp[e] = f.mul(yp[e - 1], points[j].y);
    }
    for (std::int64_t s = 0; s < mults[j]; ++s) {
      for (std::int64_t al = s; al >= 0; --al, ++row) {
        const std::int64_t be = s - al;
        for (std::size_t c = 0; c < mons.size(); ++c) {
          const auto [ea, eb] = mons[c];
          if (al > ea || be > eb) continue;
          std::uint32_t v = f.mul(ff[static_cast<std::size_t>(ea) * n + static_cast<std::size_t>(al)],
                                  ff[static_cast<std::size_t>(eb) * n + static_cast<std::size_t>(be)]);
          v = f.mul(v, f.mul(xp[static_cast<std::size_t>(ea - al)], yp[static_cast<std::size_t>(eb - be)]));
          a.at(row, c) = v;
        }
      }
    }
  }
  return a;
}

std::vector<std::size_t> prefix_ranks(const FpMatrix& a) {
  const PrimeField f(a.p);
  const std::size_t n = a.cols;
  std::vector<std::uint32_t> basis;  // echelon rows, pivot entry normalized to 1
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> out(a.rows);
  std::vector<std::uint32_t> r(n);
  for (std::size_t i = 0; i < a.rows; ++i) {
    std::copy_n(a.data.begin() + static_cast<std::ptrdiff_t>(i * n), n, r.begin());
    // each basis row is zero on the pivots of the rows inserted before it,
    // so one pass in insertion order clears every pivot column
    for (std::size_t b = 0; b < pivots.size(); ++b) {
      const std::size_t c = pivots[b];
      const std::uint32_t coef = r[c];
      if (coef == 0) continue;
      const std::uint64_t neg = a.p - coef;
      const std::uint32_t* row = basis.data() + b * n;
      for (std::size_t j = c; j < n; ++j)
        if (row[j]) r[j] = f.reduce(r[j] + neg * row[j]);
    }
    auto it = std::find_if(r.begin(), r.end(), [](std::uint32_t v) { return v != 0; });
    if (it != r.end()) {
      const auto c = static_cast<std::size_t>(it - r.begin());
      const std::uint32_t inv = f.inv(r[c]);
      for (std::size_t j = c; j < n; ++j) r[j] = f.mul(r[j], inv);
      basis.insert(basis.end(), r.begin(), r.end());
      pivots.push_back(c);
    }
    out[i] = pivots.size();
  }
  return out;
}

std::size_t rank(const FpMatrix& a) {
  if (a.rows == 0) return 0;
  return prefix_ranks(a).back();
}

std::vector<FpPoint> sample_points(std::size_t count, const PrimeFieldConfig& cfg,
                                   const std::string& task_key, int attempt) {
  auto rng = task_rng(cfg.seed, task_key, attempt);
  std::unordered_set<std::uint32_t> xs, ys;
  std::vector<FpPoint> out;
  out.reserve(count);
  while (out.size() < count) {
    const auto x = uniform_residue(rng, cfg.p);
    const auto y = uniform_residue(rng, cfg.p);
    if (xs.contains(x) || ys.contains(y)) continue;
    xs.insert(x);
    ys.insert(y);
    out.push_back({x, y});
  }
  return out;
}

std::string space_key(const Diagram& d, const std::vector<std::int64_t>& mults) {
  return format(d) + ";" + format_mults(mults);
}

std::string space_subject(const Diagram& d, const std::vector<std::int64_t>& mults) {
  return "V(" + format(d) + ";" + format_mults(mults) + ")";
}

std::vector<Verdict> certify_nonspecial_rank_nested(const Diagram& d,
                                                    const std::vector<std::int64_t>& mults,
                                                    const std::vector<std::size_t>& point_counts,
                                                    const PrimeFieldConfig& cfg) {
  cfg.validate();
  std::vector<std::size_t> row_ends;
  for (auto c : point_counts) {
    if (c > mults.size()) throw Error(ErrorCode::Precondition, "prefix longer than the point list");
    std::size_t rows = 0;
    for (std::size_t j = 0; j < c; ++j) rows += static_cast<std::size_t>(mults[j] * (mults[j] + 1) / 2);
    row_ends.push_back(rows);
  }
  std::vector<Verdict> out;
  for (auto c : point_counts) {
    std::vector<std::int64_t> prefix(mults.begin(), mults.begin() + static_cast<std::ptrdiff_t>(c));
    out.push_back(inconclusive(space_subject(d, prefix), ""));
  }

  const std::string key = space_key(d, mults);
  const auto cols = static_cast<std::size_t>(d.cells());
  for (int attempt = 0; attempt < cfg.attempts; ++attempt) {
    const auto points = sample_points(mults.size(), cfg, key, attempt);
    const FpMatrix a = build_matrix(d, mults, points, cfg.p);
    const auto pr = prefix_ranks(a);
    bool all = true;
    for (std::size_t i = 0; i < point_counts.size(); ++i) {
      Verdict& v = out[i];
      if (v.conclusive()) continue;
      const std::size_t rows = row_ends[i];
      const std::size_t rk = rows == 0 ? 0 : pr[rows - 1];
      if (rk != std::min(rows, cols)) {
        all = false;
        continue;
      }
      v.kind = VerdictKind::NonSpecial;
      v.dim = static_cast<std::int64_t>(cols - rk);
      v.rank = RankCertificate{rows, cols, rk, cfg.p, cfg.seed, attempt + 1};
      v.add_method("RANK");
      v.trace.push_back({"RANK",
                         "rows=" + std::to_string(rows) + ",cols=" + std::to_string(cols) +
                             ",rank=" + std::to_string(rk) + ",p=" + std::to_string(cfg.p) +
                             ",seed=" + std::to_string(cfg.seed) +
                             ",attempt=" + std::to_string(attempt + 1),
                         v.subject, "dim=" + std::to_string(cols - rk)});
      v.reason.clear();
    }
    if (all) break;
  }
  for (auto& v : out)
    if (!v.conclusive())
      v.reason = "rank deficient at sampled points in " + std::to_string(cfg.attempts) +
                 " attempt(s)";
  return out;
}

Verdict certify_nonspecial_rank(const Diagram& d, const std::vector<std::int64_t>& mults,
                                const PrimeFieldConfig& cfg) {
  return certify_nonspecial_rank_nested(d, mults, {mults.size()}, cfg).front();
}

}  // namespace qhv
