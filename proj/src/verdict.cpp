#include "qhv/verdict.hpp"

#include <algorithm>

#include "qhv/error.hpp"

namespace qhv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Precondition: return "PRECONDITION";
    case ErrorCode::SandwichViolated: return "SANDWICH_VIOLATED";
    case ErrorCode::MissingPoints: return "MISSING_POINTS";
    case ErrorCode::Uncertified: return "UNCERTIFIED";
    case ErrorCode::ShapeMismatch: return "SHAPE_MISMATCH";
    case ErrorCode::InvalidLayer: return "INVALID_LAYER";
    case ErrorCode::TooShort: return "TOO_SHORT";
    case ErrorCode::Degenerate: return "DEGENERATE";
    case ErrorCode::InvalidConfig: return "INVALID_CONFIG";
    case ErrorCode::Parse: return "PARSE";
    case ErrorCode::OutOfRange: return "OUT_OF_RANGE";
    case ErrorCode::Io: return "IO";
  }
  return "UNKNOWN";
}

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::NonSpecial: return "NonSpecial";
    case VerdictKind::Empty: return "Empty";
    case VerdictKind::MinusOneSpecial: return "MinusOneSpecial";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::string_view to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::MultLe11: return "MULT_LE_11";
    case Axiom::PointsLe9: return "POINTS_LE_9";
    case Axiom::SimplePoints: return "SIMPLE_POINTS";
  }
  return "?";
}

std::optional<VerdictKind> verdict_kind_from_string(std::string_view text) {
  for (auto k : {VerdictKind::NonSpecial, VerdictKind::Empty, VerdictKind::MinusOneSpecial,
                 VerdictKind::Inconclusive})
    if (to_string(k) == text) return k;
  return std::nullopt;
}

void Verdict::add_method(std::string_view method) {
  if (std::find(methods.begin(), methods.end(), method) == methods.end())
    methods.emplace_back(method);
}

void Verdict::add_axiom(Axiom axiom) {
  if (std::find(axioms.begin(), axioms.end(), axiom) == axioms.end()) axioms.push_back(axiom);
}

Verdict inconclusive(std::string subject, std::string reason) {
  Verdict v;
  v.kind = VerdictKind::Inconclusive;
  v.subject = std::move(subject);
  v.reason = std::move(reason);
  return v;
}

}  // namespace qhv
