#pragma once

#include <string>

#include <json.hpp>

namespace nanopteron {

inline constexpr const char* kRunRecordSchema = "nanopteron.run_record/1";
inline constexpr const char* kCsvSchema = "nanopteron.csv/1";

struct GateResult {
    std::string name;
    bool passed = false;
    double seconds = 0.0;
    double time_limit = 0.0;
    std::string detail;
};

/// One structured record per run: config echo, outputs, timings, gates.
class RunRecord {
public:
    explicit RunRecord(const std::string& command);

    template <class T>
    void config(const std::string& key, const T& value) {
        j_["config"][key] = value;
    }
    template <class T>
    void output(const std::string& key, const T& value) {
        j_["outputs"][key] = value;
    }
    void timing(const std::string& key, double seconds) { timings_[key] = seconds; }
    void gate(const GateResult& g);

    bool all_gates_passed() const;
    nlohmann::json& json() { return j_; }

    /// Timings are omitted when include_timings is false so records stay bit-identical.
    std::string dump(bool include_timings) const;
    void write(const std::string& path, bool include_timings) const;

private:
    nlohmann::json j_;
    nlohmann::json timings_ = nlohmann::json::object();
};

} // namespace nanopteron
