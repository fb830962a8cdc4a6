#pragma once

// Versioned JSON schemas for every on-disk artifact. All writers emit
// canonical bytes (sorted keys, two-space indent, trailing newline) so
// fixed inputs produce byte-identical files.

#include <string>

#include "json.hpp"
#include "thinht/binum.hpp"
#include "thinht/gaps.hpp"
#include "thinht/largeness.hpp"
#include "thinht/lll.hpp"
#include "thinht/oracle.hpp"

namespace thinht {

inline constexpr int kFormatVersion = 1;

// {"format":1, "horizon":H, "entries":[[m,s],...]} with entries sorted
// by element.
nlohmann::json trace_to_json(const OracleTrace& trace);
OracleTrace trace_from_json(const nlohmann::json& j);

// {"format":1, "traces":[...]}
nlohmann::json family_to_json(const EnumFamily& fam);
EnumFamily family_from_json(const nlohmann::json& j);

// {"format":1, "Y":[[exponents...],...], "witness":code, "trim":t}
nlohmann::json candidate_to_json(const SolutionCandidate& cand);
SolutionCandidate candidate_from_json(const nlohmann::json& j);

// {"format":1, "min_size":M, "sets":[[...],...]}
nlohmann::json lll_family_to_json(const ExplicitFamily& fam);
ExplicitFamily lll_family_from_json(const nlohmann::json& j);

// {"format":1, "elements":[...]}
nlohmann::json numset_to_json(const std::vector<u64>& elements);
std::vector<u64> numset_from_json(const nlohmann::json& j);

nlohmann::json verdict_to_json(const Verdict& v);
nlohmann::json absence_report_to_json(const AbsenceReport& rep);
nlohmann::json occurrence_verdict_to_json(const OccurrenceVerdict& v);
nlohmann::json split_audit_to_json(const SplitAudit& a);
nlohmann::json immunity_verdict_to_json(const ImmunityVerdict& v);

// Per-level membership bitmaps over the window (as "01" strings) plus the
// f_n tables on the audited (e, k) grid.
nlohmann::json layer_stack_to_json(const LayerStack& stack, u64 e_count,
                                   u64 k_cap);

// Canonical serialization used for files and hashing.
std::string canonical_bytes(const nlohmann::json& j);

// Parses a file; parse failures carry the byte position.
nlohmann::json load_json_file(const std::string& path);

// Atomic write: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& bytes);

}  // namespace thinht
