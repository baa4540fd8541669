#ifndef FANO_REPORT_HPP
#define FANO_REPORT_HPP

#include <json.hpp>
#include <string>

#include "fano/curve.hpp"
#include "fano/picard.hpp"

namespace fano {

using ojson = nlohmann::ordered_json;

// One verification record; the report document is an array of these plus an
// aggregate status. Key order is fixed so identical runs produce identical
// bytes apart from runtime_ms.
struct CheckRecord {
    std::string check;
    std::uint64_t curve_hash = 0;
    std::uint64_t seed = 0;
    ojson parameters = ojson::object();
    ojson expected;
    ojson computed;
    std::string status;  // "pass" | "fail" | "degenerate"
    int resamples = 0;
    long runtime_ms = 0;

    ojson to_json() const;
};

ojson report_document(const std::vector<CheckRecord>& checks, std::uint64_t seed);

// Strips the volatile timing fields; what remains must be byte-identical
// across runs with the same configuration and seed.
ojson scrub_runtime(ojson doc);

CurveSpec curve_spec_from_json(const ojson& j);
ojson curve_spec_to_json(const CurveSpec& spec);
CurveSpec load_curve_spec(const std::string& path);

ojson extension_report_to_json(const ExtensionClassReport& rep);
ExtensionClassReport extension_report_from_json(const ojson& j);

// Minimal structural validator for the subset of JSON Schema the shipped
// schema uses: type, required, properties, items, enum.
bool schema_check(const ojson& doc, const ojson& schema, std::string* error = nullptr);

}  // namespace fano

#endif
