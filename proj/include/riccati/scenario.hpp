#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace riccati {

/// Flat key=value scenario. Every key has a documented default; unknown keys
/// are rejected. Lines starting with '#' and blank lines are ignored.
class ScenarioConfig {
public:
    /// All defaults.
    ScenarioConfig();

    static ScenarioConfig from_file(const std::string& path);
    static ScenarioConfig from_stream(std::istream& in, const std::string& origin = "<stream>");

    /// Applies "key=value"; throws InvalidConfig for unknown keys or bad syntax.
    void apply(std::string_view assignment);
    void set(const std::string& key, const std::string& value);

    const std::string& get(const std::string& key) const;
    double get_double(const std::string& key) const;
    int get_int(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    /// Comma-separated doubles; empty text gives an empty list.
    std::vector<double> get_list(const std::string& key) const;

    /// Effective values, sorted by key.
    const std::map<std::string, std::string>& values() const noexcept { return values_; }

    /// The default table (key, value, description), in documentation order.
    struct Entry {
        const char* key;
        const char* value;
        const char* help;
    };
    static const std::vector<Entry>& defaults();

private:
    std::map<std::string, std::string> values_;
};

/// key=value lines for every effective setting, sorted by key.
void write_manifest(const ScenarioConfig& config, std::ostream& out);

}  // namespace riccati
