#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nanopteron {

/// Flat `key = value` configuration. Lines starting with `#` are comments.
/// List values are comma or whitespace separated.
class KeyValueConfig {
public:
    KeyValueConfig() = default;

    static KeyValueConfig parse(const std::string& text);
    static KeyValueConfig load(const std::string& path);

    bool has(const std::string& key) const;
    void set(const std::string& key, const std::string& value);

    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    long get_int(const std::string& key) const;
    std::vector<double> get_list(const std::string& key) const;

    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key, long fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

    /// Throws InvalidParams if a key outside `allowed` is present.
    void require_known(const std::vector<std::string>& allowed) const;

private:
    std::map<std::string, std::string> entries_;
};

} // namespace nanopteron
