#include "thinht/json_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace thinht {

using nlohmann::json;

namespace {

void require_format(const json& j, const char* what) {
  if (!j.is_object()) throw InputError(std::string(what) + ": not an object");
  if (!j.contains("format") || !j["format"].is_number_integer() ||
      j["format"].get<int>() != kFormatVersion)
    throw InputError(std::string(what) + ": missing or unsupported format");
}

}  // namespace

json trace_to_json(const OracleTrace& trace) {
  json entries = json::array();
  for (const auto& [m, s] : trace.entries()) entries.push_back({m, s});
  return json{{"format", kFormatVersion},
              {"horizon", trace.horizon()},
              {"entries", entries}};
}

OracleTrace trace_from_json(const json& j) {
  require_format(j, "trace");
  if (!j.contains("horizon") || !j.contains("entries"))
    throw InputError("trace: missing horizon or entries");
  std::vector<std::pair<u64, u64>> entries;
  for (const auto& e : j["entries"]) {
    if (!e.is_array() || e.size() != 2)
      throw InputError("trace: entry must be [element, stage]");
    entries.emplace_back(e[0].get<u64>(), e[1].get<u64>());
  }
  return OracleTrace(std::move(entries), j["horizon"].get<u64>());
}

json family_to_json(const EnumFamily& fam) {
  json traces = json::array();
  for (const auto& t : fam.traces()) traces.push_back(trace_to_json(t));
  return json{{"format", kFormatVersion}, {"traces", traces}};
}

EnumFamily family_from_json(const json& j) {
  require_format(j, "family");
  if (!j.contains("traces")) throw InputError("family: missing traces");
  std::vector<OracleTrace> traces;
  for (const auto& t : j["traces"]) traces.push_back(trace_from_json(t));
  return EnumFamily(std::move(traces));
}

json candidate_to_json(const SolutionCandidate& cand) {
  json y = json::array();
  for (const auto& x : cand.y.elements()) y.push_back(x.exponents());
  return json{{"format", kFormatVersion},
              {"Y", y},
              {"witness", cand.witness_color},
              {"trim", cand.trim}};
}

SolutionCandidate candidate_from_json(const json& j) {
  require_format(j, "candidate");
  if (!j.contains("Y") || !j.contains("witness") || !j.contains("trim"))
    throw InputError("candidate: missing Y, witness or trim");
  std::vector<BinNum> elems;
  for (const auto& arr : j["Y"])
    elems.push_back(BinNum(arr.get<std::vector<u64>>()));
  SolutionCandidate cand;
  cand.y = NumSet(std::move(elems));
  cand.witness_color = j["witness"].get<u64>();
  cand.trim = j["trim"].get<u64>();
  return cand;
}

json lll_family_to_json(const ExplicitFamily& fam) {
  json sets = json::array();
  for (const auto& s : fam.sets()) sets.push_back(s);
  return json{{"format", kFormatVersion},
              {"min_size", fam.min_size()},
              {"sets", sets}};
}

ExplicitFamily lll_family_from_json(const json& j) {
  require_format(j, "lll family");
  if (!j.contains("min_size") || !j.contains("sets"))
    throw InputError("lll family: missing min_size or sets");
  std::vector<std::vector<u64>> sets;
  for (const auto& s : j["sets"]) sets.push_back(s.get<std::vector<u64>>());
  return ExplicitFamily(std::move(sets), j["min_size"].get<u64>());
}

json numset_to_json(const std::vector<u64>& elements) {
  return json{{"format", kFormatVersion}, {"elements", elements}};
}

std::vector<u64> numset_from_json(const json& j) {
  require_format(j, "set");
  if (!j.contains("elements")) throw InputError("set: missing elements");
  return j["elements"].get<std::vector<u64>>();
}

json verdict_to_json(const Verdict& v) {
  json violations = json::array();
  for (const auto& viol : v.violations)
    violations.push_back({{"kind", viol.kind}, {"detail", viol.detail}});
  return json{{"pass", v.pass},
              {"violations", violations},
              {"warnings", v.warnings}};
}

json absence_report_to_json(const AbsenceReport& rep) {
  json colors = json::array();
  for (const auto& [code, bucket] : rep.by_color_code)
    colors.push_back({{"code", code},
                      {"color", color_decode(code).str()},
                      {"count", bucket.count},
                      {"max_lambda", bucket.max_lambda}});
  json p0 = json::array();
  for (const auto& [p, bucket] : rep.p0_buckets)
    p0.push_back({{"p", p},
                  {"count", bucket.count},
                  {"max_lambda", bucket.max_lambda}});
  return json{{"window_size", rep.window_size},
              {"colors", colors},
              {"p0_buckets", p0}};
}

json occurrence_verdict_to_json(const OccurrenceVerdict& v) {
  json violations = json::array();
  for (const auto& viol : v.violations)
    violations.push_back(
        {{"size", viol.size}, {"point", viol.point}, {"detail", viol.detail}});
  return json{{"pass", v.pass},
              {"cells_checked", v.cells_checked},
              {"violations", violations}};
}

json split_audit_to_json(const SplitAudit& a) {
  json ces = json::array();
  for (const auto& ce : a.counterexamples)
    ces.push_back({{"e", ce.e},
                   {"k", ce.k},
                   {"s", ce.s},
                   {"color", ce.color},
                   {"count", ce.count}});
  return json{{"pass", a.pass()},
              {"occurrence", occurrence_verdict_to_json(a.occurrence)},
              {"counterexamples", ces},
              {"audited_triples", a.audited_triples},
              {"family_size", a.family_size},
              {"max_block_size", a.max_block_size}};
}

json immunity_verdict_to_json(const ImmunityVerdict& v) {
  auto status_name = [](ImmunityStatus s) {
    switch (s) {
      case ImmunityStatus::flagged: return "flagged";
      case ImmunityStatus::not_contained: return "not-contained";
      case ImmunityStatus::bound_satisfied: return "bound-satisfied";
      default: return "inconclusive";
    }
  };
  json entries = json::array();
  for (const auto& e : v.entries) {
    json entry{{"e", e.e},
               {"status", status_name(e.status)},
               {"required", e.required}};
    if (e.witness)
      entry["witness"] = {{"s", e.witness->first}, {"x", e.witness->second}};
    if (!e.note.empty()) entry["note"] = e.note;
    entries.push_back(std::move(entry));
  }
  return json{{"any_flagged", v.any_flagged}, {"entries", entries}};
}

json layer_stack_to_json(const LayerStack& stack, u64 e_count, u64 k_cap) {
  json layers = json::array();
  for (std::size_t n = 0; n < stack.layers.size(); ++n) {
    const Layer& layer = stack.layers[n];
    std::string bitmap(stack.window, '0');
    for (u64 x = 0; x < stack.window; ++x)
      if (layer.membership[x]) bitmap[x] = '1';
    json f_table = json::array();
    for (u64 e = 0; e < e_count; ++e)
      for (u64 k = 1; k <= k_cap; ++k)
        f_table.push_back({e, k, layer.f.eval(e, k)});
    layers.push_back(
        {{"level", n}, {"bitmap", bitmap}, {"f_table", f_table}});
  }
  return json{{"format", kFormatVersion},
              {"window", stack.window},
              {"depth", stack.depth()},
              {"layers", layers}};
}

std::string canonical_bytes(const json& j) { return j.dump(2) + "\n"; }

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("parse error in " + path + ": " + e.what());
  }
}

void write_file_atomic(const std::string& path, const std::string& bytes) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << bytes;
  }
  fs::rename(tmp, target);
}

}  // namespace thinht
