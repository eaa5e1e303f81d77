#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hlp/bounds.hpp"
#include "hlp/solvers.hpp"

namespace hlp {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// One generated instance plus whatever kind-specific secrets came with it.
struct InstanceFile {
  std::string kind = "hlp";
  std::optional<HlpInstance> hlp;
  std::optional<NhlpInstance> nhlp;
  json secrets;  // e.g. CRT-ACD primes and residues; null when absent
};

// All integers travel as decimal strings; numbers are accepted on input.
json matrix_to_json(const IntegerMatrix& a);
IntegerMatrix matrix_from_json(const json& j);
mpz_class mpz_from_json(const json& j);
mpq_class mpq_from_string(const std::string& s);

json instance_to_json(const InstanceFile& f);
InstanceFile instance_from_json(const json& j);  // validates; throws InvalidInstance
void save_instance(const std::string& path, const InstanceFile& f);
InstanceFile load_instance(const std::string& path);
json load_json(const std::string& path);

json report_to_json(const SolveReport& r);
json bound_report_to_json(const BoundReport& b, const AnalysisParams& p);
json gap_profile_to_json(const GapProfile& g);
json verdict_to_json(const DhlpVerdict& v);

// RFC 4180 quoting.
std::string csv_field(const std::string& s);
void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

}  // namespace hlp
