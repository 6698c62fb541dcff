#include "cubecorr/table_io.hpp"

#include <stdexcept>

#include "json.hpp"

#include "cubecorr/families.hpp"

namespace cubecorr {

using nlohmann::json;

FunctionTable table_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("table input is not valid JSON: ") + e.what());
    }
    if (j.contains("family")) {
        const FamilySpec spec = parse_family_spec(j.at("family").dump());
        MaterializedFamily fam = materialize(spec);
        if (fam.is_pair)
            throw std::invalid_argument("family " + spec.kind +
                                        " builds a pair; use the pair command");
        return std::move(fam.f);
    }
    if (!j.contains("n") || !j.contains("kind") || !j.contains("table"))
        throw std::invalid_argument("table input needs fields n, kind, table (or family)");
    const int n = j.at("n").get<int>();
    const ValueKind kind = value_kind_from_string(j.at("kind").get<std::string>());
    auto values = j.at("table").get<std::vector<double>>();
    FunctionTable f(n, kind, std::move(values));
    f.validate();
    return f;
}

std::string table_to_json(const FunctionTable& f, int indent) {
    json j;
    j["n"] = f.n;
    j["kind"] = to_string(f.kind);
    j["table"] = f.values;
    return indent >= 0 ? j.dump(indent) : j.dump();
}

} // namespace cubecorr
