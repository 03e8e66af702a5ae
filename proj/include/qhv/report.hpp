#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "qhv/classify.hpp"
#include "qhv/initial_cases.hpp"
#include "qhv/ledger.hpp"
#include "qhv/reduction.hpp"
#include "qhv/verdict.hpp"

namespace qhv {

using Json = nlohmann::ordered_json;

/// Fields are emitted in a fixed order, so equal inputs give equal bytes.
/// Wall times are only included when `seconds` is given.
Json verdict_json(const Verdict& v, bool with_trace = true);
Json trace_json(const ReductionTrace& t);

/// Self-contained classification record (input, verdict, field settings).
Json classify_record(const std::string& input, const Verdict& v, const ClassifyConfig& cfg);

Json initial_cases_json(const InitialCasesReport& r, bool timings);
Json ledger_json(const LedgerReport& r, const LedgerRange& range, bool all_instances);

/// Text table in the layout of the worked reduction example: each diagram
/// row is followed by the amounts subtracted from its last layers.
std::string reduction_table(const ReductionTrace& t);

std::string verdict_line(const Verdict& v);

}  // namespace qhv
