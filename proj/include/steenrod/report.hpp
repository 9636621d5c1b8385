#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace steenrod {

/// One verification cell: a family name, the indices that identify the cell,
/// how many instances were checked inside it, and a witness when it failed.
struct CheckRecord {
    std::string family;
    int p = 0;
    std::vector<std::pair<std::string, long long>> indices;
    long long checked = 0;
    bool ok = true;
    std::string witness;
};

struct Report {
    std::vector<CheckRecord> records;

    void add(CheckRecord r) { records.push_back(std::move(r)); }

    void merge(const Report& o) {
        records.insert(records.end(), o.records.begin(), o.records.end());
    }

    long long failures() const {
        long long n = 0;
        for (const auto& r : records)
            if (!r.ok) ++n;
        return n;
    }

    long long total_checked() const {
        long long n = 0;
        for (const auto& r : records) n += r.checked;
        return n;
    }

    bool all_ok() const { return failures() == 0; }
};

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

/// One JSON object per line: {"family":..., "p":..., indices..., "status":...}.
inline void emit_jsonl(const Report& rep, std::ostream& os) {
    for (const auto& r : rep.records) {
        os << "{\"family\":\"" << json_escape(r.family) << "\",\"p\":" << r.p;
        for (const auto& [k, v] : r.indices) os << ",\"" << json_escape(k) << "\":" << v;
        os << ",\"checked\":" << r.checked;
        os << ",\"status\":\"" << (r.ok ? "pass" : "fail") << "\"";
        if (!r.witness.empty()) os << ",\"witness\":\"" << json_escape(r.witness) << "\"";
        os << "}\n";
    }
}

}  // namespace steenrod
