#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "fineq/error.hpp"

namespace fineq::harness {

/// Malformed configuration; the message carries file:line:column.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A node of a YAML configuration that remembers where it came from and
/// which of its keys were read, so unknown keys can be reported.
class ConfigNode {
public:
    ConfigNode(YAML::Node node, std::string file, std::string path);

    static ConfigNode load_file(const std::filesystem::path& file);
    static ConfigNode load_string(const std::string& text, std::string name = "<string>");

    bool has(const std::string& key) const;
    ConfigNode at(const std::string& key) const;
    std::optional<ConfigNode> find(const std::string& key) const;

    template <class T>
    T get() const;
    template <class T>
    T get(const std::string& key) const {
        return at(key).get<T>();
    }
    template <class T>
    T get_or(const std::string& key, T fallback) const {
        return has(key) ? at(key).get<T>() : fallback;
    }

    bool is_sequence() const { return node_.IsSequence(); }
    bool is_map() const { return node_.IsMap(); }
    bool is_scalar() const { return node_.IsScalar(); }
    std::vector<ConfigNode> items() const;

    /// Throws for keys of a map that are not in `allowed`.
    void allow_only(const std::set<std::string>& allowed) const;

    [[noreturn]] void fail(const std::string& message) const;
    std::string where() const;
    const std::string& file() const noexcept { return file_; }
    const YAML::Node& yaml() const noexcept { return node_; }

private:
    YAML::Node node_;
    std::string file_;
    std::string path_;
};

/// Canonical text of a configuration: YAML re-emitted with sorted keys.
std::string canonical_text(const YAML::Node& node);

}  // namespace fineq::harness
