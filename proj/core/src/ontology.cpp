#include "hunter/ontology.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace hunter {

const char* to_string(NodeClass c) {
    switch (c) {
        case NodeClass::Process: return "Process";
        case NodeClass::File: return "File";
        case NodeClass::Net: return "Net";
        case NodeClass::Registry: return "Registry";
    }
    return "?";
}

const char* to_string(OsFamily f) {
    switch (f) {
        case OsFamily::Windows: return "windows";
        case OsFamily::Posix: return "posix";
        case OsFamily::Unknown: return "unknown";
    }
    return "?";
}

const char* to_string(Proto p) {
    switch (p) {
        case Proto::TCP: return "TCP";
        case Proto::UDP: return "UDP";
        case Proto::ICMP: return "ICMP";
    }
    return "?";
}

const char* to_string(Action a) {
    switch (a) {
        case Action::ProcessCreate: return "ProcessCreate";
        case Action::FileWrite: return "FileWrite";
        case Action::FileRead: return "FileRead";
        case Action::FileMap: return "FileMap";
        case Action::NetConnect: return "NetConnect";
        case Action::NetAccept: return "NetAccept";
        case Action::RegistrySet: return "RegistrySet";
        case Action::RegistryDelete: return "RegistryDelete";
        case Action::Inject: return "Inject";
    }
    return "?";
}

std::optional<NodeClass> parse_node_class(const std::string& s) {
    if (s == "Process") return NodeClass::Process;
    if (s == "File") return NodeClass::File;
    if (s == "Net") return NodeClass::Net;
    if (s == "Registry") return NodeClass::Registry;
    return std::nullopt;
}

std::optional<OsFamily> parse_os_family(const std::string& s) {
    if (s == "windows") return OsFamily::Windows;
    if (s == "posix") return OsFamily::Posix;
    if (s == "unknown") return OsFamily::Unknown;
    return std::nullopt;
}

std::optional<Proto> parse_proto(const std::string& s) {
    if (s == "TCP") return Proto::TCP;
    if (s == "UDP") return Proto::UDP;
    if (s == "ICMP") return Proto::ICMP;
    return std::nullopt;
}

std::optional<Action> parse_action(const std::string& s) {
    static const std::unordered_map<std::string, Action> table = {
        {"ProcessCreate", Action::ProcessCreate},
        {"FileWrite", Action::FileWrite},
        {"FileRead", Action::FileRead},
        {"FileMap", Action::FileMap},
        {"NetConnect", Action::NetConnect},
        {"NetAccept", Action::NetAccept},
        {"RegistrySet", Action::RegistrySet},
        {"RegistryDelete", Action::RegistryDelete},
        {"Inject", Action::Inject},
    };
    auto it = table.find(s);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

NodeClass class_of(const PhysicalId& id) {
    switch (id.index()) {
        case 0: return NodeClass::Process;
        case 1: return NodeClass::File;
        case 2: return NodeClass::Net;
        default: return NodeClass::Registry;
    }
}

bool attr_key_allowed(NodeClass cls, const std::string& key) {
    switch (cls) {
        case NodeClass::Process:
            return key == "image_path" || key == "cmd_line" || key == "user_sid";
        case NodeClass::File:
            return key == "path" || key == "sha256";
        case NodeClass::Net:
            return key == "src_ip" || key == "src_port" || key == "dst_ip" ||
                   key == "dst_port" || key == "proto" || key.rfind("l7_", 0) == 0;
        case NodeClass::Registry:
            return key == "key_path" || key == "value_mutations";
    }
    return false;
}

ProvenanceNode ProvenanceNode::observed(NodeClass cls, PhysicalId id, SemanticPayload attr) {
    if (class_of(id) != cls)
        throw OntologyError("physical id class does not match node class");
    ProvenanceNode n;
    n.cls = cls;
    n.id = std::move(id);
    n.attr = std::move(attr);
    n.virtual_node = false;
    return n;
}

ProvenanceNode ProvenanceNode::virtual_of(NodeClass cls, SemanticPayload attr) {
    ProvenanceNode n;
    n.cls = cls;
    n.id.reset();
    n.attr = std::move(attr);
    n.virtual_node = true;
    return n;
}

std::string canonical_attr_text(NodeClass cls, const SemanticPayload& attr) {
    std::ostringstream out;
    out << to_string(cls) << '{';
    bool first = true;
    for (const auto& [k, v] : attr) {  // std::map: keys already sorted
        if (!first) out << ',';
        first = false;
        out << k << '=';
        if (v.is_string()) {
            out << v.str();
        } else {
            out << '[';
            const auto& xs = v.list();
            for (std::size_t i = 0; i < xs.size(); ++i) {
                if (i) out << '|';
                out << xs[i];
            }
            out << ']';
        }
    }
    out << '}';
    return out.str();
}

std::string node_key(const ProvenanceNode& node) {
    if (!node.id.has_value()) return std::string("v:") + canonical_attr_text(node.cls, node.attr);
    std::ostringstream out;
    out << "o:" << to_string(node.cls) << ':';
    const PhysicalId& id = *node.id;
    switch (node.cls) {
        case NodeClass::Process: {
            const auto& p = std::get<ProcessId>(id);
            out << p.host_id << '/' << p.pid << '/' << p.tid << '/' << p.start_time;
            break;
        }
        case NodeClass::File: {
            const auto& f = std::get<FileId>(id);
            out << f.volume_id << '/' << f.inode;
            break;
        }
        case NodeClass::Net: {
            const auto& n = std::get<NetId>(id);
            out << n.src_ip << ':' << n.src_port << '>' << n.dst_ip << ':' << n.dst_port << '/'
                << to_string(n.proto);
            break;
        }
        case NodeClass::Registry: {
            out << std::get<RegistryId>(id).key_path;
            break;
        }
    }
    return out.str();
}

bool action_shape_allowed(NodeClass src, Action a, NodeClass dst) {
    switch (a) {
        case Action::ProcessCreate:
        case Action::Inject:
            return src == NodeClass::Process && dst == NodeClass::Process;
        case Action::FileWrite:
            return src == NodeClass::Process && dst == NodeClass::File;
        case Action::FileRead:
        case Action::FileMap:
            return src == NodeClass::File && dst == NodeClass::Process;
        case Action::NetConnect:
            return src == NodeClass::Process && dst == NodeClass::Net;
        case Action::NetAccept:
            return src == NodeClass::Net && dst == NodeClass::Process;
        case Action::RegistrySet:
        case Action::RegistryDelete:
            return src == NodeClass::Process && dst == NodeClass::Registry;
    }
    return false;
}

bool looks_like_windows_path(const std::string& path) {
    if (path.size() < 3) return false;
    const char drive = path[0];
    const bool letter = (drive >= 'A' && drive <= 'Z') || (drive >= 'a' && drive <= 'z');
    if (!(letter && path[1] == ':' && path[2] == '\\')) return false;
    return path.find('/') == std::string::npos;
}

bool looks_like_posix_path(const std::string& path) {
    return !path.empty() && path[0] == '/' && path.find('\\') == std::string::npos;
}

bool looks_like_sid(const std::string& sid) {
    if (sid.rfind("S-1-", 0) != 0) return false;
    bool digit_seen = false;
    for (std::size_t i = 4; i < sid.size(); ++i) {
        const char c = sid[i];
        if (c == '-') {
            if (!digit_seen) return false;
            digit_seen = false;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        digit_seen = true;
    }
    return digit_seen;
}

bool looks_like_hive_rooted(const std::string& key_path) {
    static const char* hives[] = {
        "HKLM\\", "HKCU\\", "HKCR\\", "HKU\\", "HKCC\\",
        "HKEY_LOCAL_MACHINE\\", "HKEY_CURRENT_USER\\", "HKEY_CLASSES_ROOT\\",
        "HKEY_USERS\\", "HKEY_CURRENT_CONFIG\\",
    };
    for (const char* h : hives)
        if (key_path.rfind(h, 0) == 0 && key_path.size() > std::string(h).size()) return true;
    return false;
}

namespace {

bool path_matches_os(const std::string& path, OsFamily os) {
    switch (os) {
        case OsFamily::Windows: return looks_like_windows_path(path);
        case OsFamily::Posix: return looks_like_posix_path(path);
        case OsFamily::Unknown:
            return looks_like_windows_path(path) || looks_like_posix_path(path);
    }
    return false;
}

bool port_in_range(std::int64_t port) { return port >= 0 && port <= 65535; }

bool parse_port_attr(const std::string& s, std::int64_t& out) {
    if (s.empty() || s.size() > 10) return false;
    std::int64_t v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

}  // namespace

bool schema_valid(const ProvenanceNode& node, OsFamily os) {
    // Structural consistency first.
    if (node.virtual_node != !node.id.has_value()) return false;
    if (node.id.has_value() && class_of(*node.id) != node.cls) return false;
    for (const auto& [k, _] : node.attr)
        if (!attr_key_allowed(node.cls, k)) return false;

    auto attr_str = [&](const char* key) -> const std::string* {
        auto it = node.attr.find(key);
        if (it == node.attr.end() || !it->second.is_string()) return nullptr;
        return &it->second.str();
    };

    switch (node.cls) {
        case NodeClass::Process: {
            if (node.id) {
                const auto& p = std::get<ProcessId>(*node.id);
                if (p.pid < 0 || p.tid < 0 || p.start_time < 0) return false;
                if (p.host_id.empty()) return false;
            }
            if (const auto* sid = attr_str("user_sid"))
                if (!sid->empty() && !looks_like_sid(*sid)) return false;
            if (const auto* img = attr_str("image_path"))
                if (!img->empty() && !path_matches_os(*img, os)) return false;
            return true;
        }
        case NodeClass::File: {
            if (node.id) {
                const auto& f = std::get<FileId>(*node.id);
                if (f.inode <= 0) return false;
            }
            if (const auto* path = attr_str("path"))
                if (!path->empty() && !path_matches_os(*path, os)) return false;
            return true;
        }
        case NodeClass::Net: {
            if (node.id) {
                const auto& n = std::get<NetId>(*node.id);
                if (!port_in_range(n.src_port) || !port_in_range(n.dst_port)) return false;
            }
            for (const char* key : {"src_port", "dst_port"}) {
                if (const auto* s = attr_str(key)) {
                    std::int64_t port = 0;
                    if (!parse_port_attr(*s, port) || !port_in_range(port)) return false;
                }
            }
            if (const auto* proto = attr_str("proto"))
                if (!parse_proto(*proto)) return false;
            return true;
        }
        case NodeClass::Registry: {
            if (node.id && std::get<RegistryId>(*node.id).key_path.empty()) return false;
            const std::string* kp = attr_str("key_path");
            if (node.id) {
                if (!looks_like_hive_rooted(std::get<RegistryId>(*node.id).key_path)) return false;
            } else {
                // Virtual registry node must name its key to be bindable.
                if (!kp || !looks_like_hive_rooted(*kp)) return false;
            }
            if (kp && node.id && !looks_like_hive_rooted(*kp)) return false;
            return true;
        }
    }
    return false;
}

bool is_dag(const std::vector<ProvenanceEvent>& events) {
    // Unrolled vertex: (node identity, observation time). Event edges join
    // src@t -> dst@t; each identity is additionally chained forward through
    // its observation times, so cycles can only close among equal-time edges.
    struct Vertex {
        std::vector<int> out;
        int indeg = 0;
    };
    std::unordered_map<std::string, int> vertex_ids;
    std::vector<Vertex> vertices;
    std::unordered_map<std::string, std::vector<std::pair<TimestampNs, int>>> per_node;

    auto vertex_of = [&](const std::string& key, TimestampNs t) {
        std::string composite = key + '@' + std::to_string(t);
        auto [it, inserted] = vertex_ids.emplace(composite, static_cast<int>(vertices.size()));
        if (inserted) {
            vertices.emplace_back();
            per_node[key].emplace_back(t, it->second);
        }
        return it->second;
    };

    for (const auto& e : events) {
        const int a = vertex_of(node_key(e.src), e.t);
        const int b = vertex_of(node_key(e.dst), e.t);
        vertices[a].out.push_back(b);
        vertices[b].indeg += 1;
    }
    for (auto& [key, obs] : per_node) {
        std::sort(obs.begin(), obs.end());
        for (std::size_t i = 1; i < obs.size(); ++i) {
            vertices[obs[i - 1].second].out.push_back(obs[i].second);
            vertices[obs[i].second].indeg += 1;
        }
    }

    // Kahn's algorithm.
    std::queue<int> ready;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].indeg == 0) ready.push(static_cast<int>(i));
    std::size_t seen = 0;
    while (!ready.empty()) {
        const int v = ready.front();
        ready.pop();
        ++seen;
        for (int w : vertices[v].out)
            if (--vertices[w].indeg == 0) ready.push(w);
    }
    return seen == vertices.size();
}

}  // namespace hunter
