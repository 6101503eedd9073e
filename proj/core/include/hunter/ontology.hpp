#pragma once
// Typed node/edge model of the provenance graph.
//
// Four node classes, each with a physical identifier and a semantic payload.
// Virtual (hypothesized) nodes carry payload only; a physical identifier is
// attached exclusively by the verifier when a telemetry collision is found.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hunter {

using TimestampNs = std::int64_t;

enum class NodeClass : std::uint8_t { Process, File, Net, Registry };
enum class OsFamily : std::uint8_t { Windows, Posix, Unknown };
enum class Proto : std::uint8_t { TCP, UDP, ICMP };

enum class Action : std::uint8_t {
    ProcessCreate,
    FileWrite,
    FileRead,
    FileMap,
    NetConnect,
    NetAccept,
    RegistrySet,
    RegistryDelete,
    Inject,
};

const char* to_string(NodeClass c);
const char* to_string(OsFamily f);
const char* to_string(Proto p);
const char* to_string(Action a);

// Closed vocabularies; unknown strings are rejected at parse time.
std::optional<NodeClass> parse_node_class(const std::string& s);
std::optional<OsFamily> parse_os_family(const std::string& s);
std::optional<Proto> parse_proto(const std::string& s);
std::optional<Action> parse_action(const std::string& s);

struct ProcessId {
    std::int64_t pid = 0;
    std::int64_t tid = 0;
    TimestampNs start_time = 0;
    std::string host_id;
    friend bool operator==(const ProcessId&, const ProcessId&) = default;
    friend auto operator<=>(const ProcessId&, const ProcessId&) = default;
};

struct FileId {
    std::int64_t inode = 0;
    std::string volume_id;
    friend bool operator==(const FileId&, const FileId&) = default;
    friend auto operator<=>(const FileId&, const FileId&) = default;
};

struct NetId {
    std::string src_ip;
    std::int64_t src_port = 0;  // int64 so out-of-range values survive parsing
    std::string dst_ip;
    std::int64_t dst_port = 0;
    Proto proto = Proto::TCP;
    friend bool operator==(const NetId&, const NetId&) = default;
    friend auto operator<=>(const NetId&, const NetId&) = default;
};

struct RegistryId {
    std::string key_path;
    friend bool operator==(const RegistryId&, const RegistryId&) = default;
    friend auto operator<=>(const RegistryId&, const RegistryId&) = default;
};

// Component-wise, class-homogeneous identity. The variant ties each
// alternative to one NodeClass; a node whose class disagrees with its id
// alternative is rejected at construction.
using PhysicalId = std::variant<ProcessId, FileId, NetId, RegistryId>;

NodeClass class_of(const PhysicalId& id);

// Class-dependent attribute map; values are strings or string lists.
struct AttrValue {
    std::variant<std::string, std::vector<std::string>> v;

    AttrValue() : v(std::string{}) {}
    AttrValue(std::string s) : v(std::move(s)) {}
    AttrValue(const char* s) : v(std::string(s)) {}
    AttrValue(std::vector<std::string> xs) : v(std::move(xs)) {}

    bool is_string() const { return std::holds_alternative<std::string>(v); }
    const std::string& str() const { return std::get<std::string>(v); }
    const std::vector<std::string>& list() const { return std::get<std::vector<std::string>>(v); }
    friend bool operator==(const AttrValue&, const AttrValue&) = default;
};

using SemanticPayload = std::map<std::string, AttrValue>;

// True iff `key` belongs to the attribute vocabulary of `cls`.
// Net additionally accepts "l7_*" keys for parsed L7 metadata.
bool attr_key_allowed(NodeClass cls, const std::string& key);

struct ProvenanceNode {
    NodeClass cls = NodeClass::Process;
    std::optional<PhysicalId> id;  // absent exactly for virtual nodes
    SemanticPayload attr;
    bool virtual_node = true;

    ProvenanceNode() = default;

    // Observed node: id present, class-consistent.
    static ProvenanceNode observed(NodeClass cls, PhysicalId id, SemanticPayload attr = {});
    // Virtual node: payload only.
    static ProvenanceNode virtual_of(NodeClass cls, SemanticPayload attr);

    friend bool operator==(const ProvenanceNode&, const ProvenanceNode&) = default;
};

struct ProvenanceEvent {
    ProvenanceNode src;
    ProvenanceNode dst;
    Action action = Action::ProcessCreate;
    TimestampNs t = 0;
    std::string channel;
    std::string host_id;
    std::string event_uid;
};

struct OntologyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonical "class{k=v,k=[a|b]}" rendering; identity for virtual nodes.
std::string canonical_attr_text(NodeClass cls, const SemanticPayload& attr);

// Stable identity string: physical id for observed nodes, canonical attr
// text for virtual ones.
std::string node_key(const ProvenanceNode& node);

// Information-flow legality of (src class, action, dst class).
bool action_shape_allowed(NodeClass src, Action a, NodeClass dst);

// Total schema pre-filter. Never throws; unknown OS family accepts either
// path syntax.
bool schema_valid(const ProvenanceNode& node, OsFamily os = OsFamily::Unknown);

// Acyclicity of the temporally unrolled multigraph (vertices keyed by
// node identity x observation time; same-identity vertices chained
// forward in time).
bool is_dag(const std::vector<ProvenanceEvent>& events);

// Helpers shared by schema_valid and the OS-physics rules.
bool looks_like_windows_path(const std::string& path);
bool looks_like_posix_path(const std::string& path);
bool looks_like_sid(const std::string& sid);
bool looks_like_hive_rooted(const std::string& key_path);

}  // namespace hunter
