#include "fano/report.hpp"

#include <fstream>

namespace fano {

ojson CheckRecord::to_json() const {
    ojson j;
    j["check"] = check;
    j["instance"] = ojson{{"curve_hash", curve_hash}, {"seed", seed}};
    j["parameters"] = parameters;
    j["expected"] = expected;
    j["computed"] = computed;
    j["status"] = status;
    j["resamples"] = resamples;
    j["runtime_ms"] = runtime_ms;
    return j;
}

ojson report_document(const std::vector<CheckRecord>& checks, std::uint64_t seed) {
    ojson doc;
    doc["tool"] = "fanocheck";
    doc["format_version"] = 1;
    doc["seed"] = seed;
    bool all_pass = true;
    ojson arr = ojson::array();
    for (const CheckRecord& c : checks) {
        arr.push_back(c.to_json());
        if (c.status != "pass") all_pass = false;
    }
    doc["checks"] = arr;
    doc["status"] = all_pass ? "pass" : "fail";
    ojson failing = ojson::array();
    for (const CheckRecord& c : checks)
        if (c.status != "pass") failing.push_back(c.check);
    doc["failing_checks"] = failing;
    return doc;
}

ojson scrub_runtime(ojson doc) {
    if (doc.contains("checks"))
        for (auto& c : doc["checks"]) c.erase("runtime_ms");
    return doc;
}

CurveSpec curve_spec_from_json(const ojson& j) {
    CurveSpec s;
    try {
        s.p = j.at("p").get<long>();
        s.k = j.contains("k") ? j.at("k").get<int>() : 1;
        for (const auto& [mono, v] : j.at("Q").items())
            s.q_coeffs[mono] = v.get<long>();
        for (const auto& [mono, v] : j.at("F").items())
            s.f_coeffs[mono] = v.get<long>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("curve spec: ") + e.what());
    }
    return s;
}

ojson curve_spec_to_json(const CurveSpec& spec) {
    ojson j;
    j["p"] = spec.p;
    j["k"] = spec.k;
    ojson q = ojson::object(), f = ojson::object();
    for (const auto& [m, v] : spec.q_coeffs) q[m] = v;
    for (const auto& [m, v] : spec.f_coeffs) f[m] = v;
    j["Q"] = q;
    j["F"] = f;
    return j;
}

CurveSpec load_curve_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open curve spec file " + path);
    ojson j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("curve spec JSON: ") + e.what());
    }
    return curve_spec_from_json(j);
}

ojson extension_report_to_json(const ExtensionClassReport& rep) {
    ojson j;
    j["curve_hash"] = rep.curve_hash;
    j["trials"] = rep.trials;
    j["rank4_count"] = rep.rank4_count;
    j["degenerate_skips"] = rep.degenerate_skips;
    j["witness_ext"] = rep.witness_ext;
    j["witness_param"] = rep.witness_param;
    j["verdict"] = rep.verdict;
    j["scope_note"] = rep.scope_note;
    return j;
}

ExtensionClassReport extension_report_from_json(const ojson& j) {
    ExtensionClassReport rep;
    rep.curve_hash = j.at("curve_hash").get<std::uint64_t>();
    rep.trials = j.at("trials").get<int>();
    rep.rank4_count = j.at("rank4_count").get<int>();
    rep.degenerate_skips = j.at("degenerate_skips").get<int>();
    rep.witness_ext = j.at("witness_ext").get<int>();
    rep.witness_param = j.at("witness_param").get<std::string>();
    rep.verdict = j.at("verdict").get<std::string>();
    rep.scope_note = j.at("scope_note").get<std::string>();
    return rep;
}

namespace {

bool type_matches(const ojson& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "integer") return v.is_number_integer() || v.is_number_unsigned();
    if (t == "number") return v.is_number();
    if (t == "boolean") return v.is_boolean();
    return false;
}

}  // namespace

bool schema_check(const ojson& doc, const ojson& schema, std::string* error) {
    auto fail = [&](const std::string& msg) {
        if (error) *error = msg;
        return false;
    };
    if (schema.contains("type") && !type_matches(doc, schema["type"].get<std::string>()))
        return fail("expected type " + schema["type"].get<std::string>());
    if (schema.contains("enum")) {
        bool hit = false;
        for (const auto& v : schema["enum"])
            if (v == doc) hit = true;
        if (!hit) return fail("value not in enum");
    }
    if (schema.contains("required"))
        for (const auto& key : schema["required"])
            if (!doc.contains(key.get<std::string>()))
                return fail("missing required key " + key.get<std::string>());
    if (schema.contains("properties") && doc.is_object())
        for (const auto& [key, sub] : schema["properties"].items())
            if (doc.contains(key) && !schema_check(doc.at(key), sub, error)) return false;
    if (schema.contains("items") && doc.is_array())
        for (const auto& item : doc)
            if (!schema_check(item, schema["items"], error)) return false;
    return true;
}

}  // namespace fano
