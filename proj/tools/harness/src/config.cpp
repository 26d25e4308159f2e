#include "fineq/harness/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace fineq::harness {

ConfigNode::ConfigNode(YAML::Node node, std::string file, std::string path)
    : node_(std::move(node)), file_(std::move(file)), path_(std::move(path)) {}

ConfigNode ConfigNode::load_file(const std::filesystem::path& file) {
    std::ifstream is(file);
    if (!is) throw ConfigError(file.string() + ": cannot open config file");
    std::stringstream ss;
    ss << is.rdbuf();
    return load_string(ss.str(), file.string());
}

ConfigNode ConfigNode::load_string(const std::string& text, std::string name) {
    try {
        YAML::Node root = YAML::Load(text);
        if (!root.IsMap()) {
            throw ConfigError(name + ":1:1: top level must be a mapping");
        }
        return ConfigNode(root, std::move(name), "");
    } catch (const YAML::Exception& e) {
        throw ConfigError(name + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) +
                          ": " + e.msg);
    }
}

std::string ConfigNode::where() const {
    const auto mark = node_.Mark();
    std::string loc = file_;
    if (!mark.is_null()) loc += ":" + std::to_string(mark.line + 1) + ":" + std::to_string(mark.column + 1);
    return loc;
}

void ConfigNode::fail(const std::string& message) const {
    throw ConfigError(where() + ": " + (path_.empty() ? "" : path_ + ": ") + message);
}

bool ConfigNode::has(const std::string& key) const { return node_.IsMap() && node_[key]; }

ConfigNode ConfigNode::at(const std::string& key) const {
    if (!node_.IsMap()) fail("expected a mapping");
    const YAML::Node child = node_[key];
    if (!child) fail("missing required key '" + key + "'");
    return ConfigNode(child, file_, path_.empty() ? key : path_ + "." + key);
}

std::optional<ConfigNode> ConfigNode::find(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return at(key);
}

std::vector<ConfigNode> ConfigNode::items() const {
    if (!node_.IsSequence()) fail("expected a list");
    std::vector<ConfigNode> out;
    for (std::size_t i = 0; i < node_.size(); ++i) {
        out.emplace_back(node_[i], file_, path_ + "[" + std::to_string(i) + "]");
    }
    return out;
}

void ConfigNode::allow_only(const std::set<std::string>& allowed) const {
    if (!node_.IsMap()) fail("expected a mapping");
    for (const auto& kv : node_) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key)) {
            ConfigNode(kv.first, file_, path_).fail("unknown key '" + key + "'");
        }
    }
}

template <class T>
T ConfigNode::get() const {
    try {
        return node_.as<T>();
    } catch (const YAML::Exception&) {
        fail("value has the wrong type");
    }
}

template double ConfigNode::get<double>() const;
template int ConfigNode::get<int>() const;
template bool ConfigNode::get<bool>() const;
template std::string ConfigNode::get<std::string>() const;
template std::uint64_t ConfigNode::get<std::uint64_t>() const;
template std::vector<double> ConfigNode::get<std::vector<double>>() const;

namespace {

YAML::Node sorted(const YAML::Node& n) {
    if (n.IsMap()) {
        std::map<std::string, YAML::Node> m;
        for (const auto& kv : n) m[kv.first.as<std::string>()] = sorted(kv.second);
        YAML::Node out(YAML::NodeType::Map);
        for (auto& [k, v] : m) out[k] = v;
        return out;
    }
    if (n.IsSequence()) {
        YAML::Node out(YAML::NodeType::Sequence);
        for (const auto& c : n) out.push_back(sorted(c));
        return out;
    }
    return n;
}

}  // namespace

std::string canonical_text(const YAML::Node& node) {
    YAML::Emitter e;
    e << YAML::Flow << sorted(node);
    return e.c_str();
}

}  // namespace fineq::harness
