#include "mla/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mla {

using Json = nlohmann::ordered_json;

FormatError::FormatError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(line > 0 ? message + " at line " + std::to_string(line) + ", column " +
                                        std::to_string(column)
                                  : message),
      line_(line),
      column_(column) {}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        // e.byte counts characters read, so the offending one is at e.byte - 1.
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t stop = std::min(text.size(), e.byte > 0 ? e.byte - 1 : 0);
        for (std::size_t k = 0; k < stop; ++k) {
            if (text[k] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw FormatError("malformed JSON", line, column);
    }
}

std::int64_t as_integer(const Json& value, const std::string& what) {
    if (!value.is_number_integer()) throw FormatError(what + " must be an integer");
    return value.get<std::int64_t>();
}

Rational as_weight(const Json& value, const std::string& what) {
    if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
    if (!value.is_string()) throw FormatError(what + " must be a string \"p/q\" or \"p\"");
    try {
        return Rational::parse(value.get<std::string>());
    } catch (const RationalParseError& e) {
        throw FormatError(what + ": " + e.what());
    }
}

const Json& require(const Json& obj, const char* key, const std::string& what) {
    if (!obj.is_object() || !obj.contains(key)) throw FormatError(what + " is missing \"" + key + "\"");
    return obj.at(key);
}

}  // namespace

RawInstance parse_instance(std::string_view json_text) {
    const Json doc = parse_json(json_text);
    const Json& nodes = require(doc, "nodes", "instance");
    if (!nodes.is_array()) throw FormatError("instance \"nodes\" must be an array");
    RawInstance raw;
    raw.nodes.reserve(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const std::string where = "nodes[" + std::to_string(k) + "]";
        const Json& node = nodes[k];
        RawNode rn;
        rn.id = as_integer(require(node, "id", where), where + ".id");
        const Json& parent = require(node, "parent", where);
        if (!parent.is_null()) rn.parent = as_integer(parent, where + ".parent");
        rn.weight = as_weight(require(node, "weight", where), where + ".weight");
        raw.nodes.push_back(std::move(rn));
    }
    return raw;
}

Instance load_instance(const std::filesystem::path& path) {
    return Instance::from_raw(parse_instance(read_file(path)));
}

std::string instance_to_json(const Instance& inst) {
    const RawInstance raw = inst.to_raw();
    std::string out = "{\n  \"nodes\": [\n";
    for (std::size_t k = 0; k < raw.nodes.size(); ++k) {
        const auto& node = raw.nodes[k];
        Json j;
        j["id"] = node.id;
        j["parent"] = node.parent ? Json(*node.parent) : Json(nullptr);
        j["weight"] = node.weight.str();
        out += "    " + j.dump() + (k + 1 < raw.nodes.size() ? ",\n" : "\n");
    }
    out += "  ]\n}\n";
    return out;
}

Allocation parse_allocation(std::string_view json_text) {
    const Json doc = parse_json(json_text);
    Allocation alloc;
    alloc.h = as_integer(require(doc, "h", "allocation"), "allocation.h");
    if (alloc.h < 0) throw FormatError("allocation.h must be non-negative");
    const Json& seats = require(doc, "seats", "allocation");
    if (!seats.is_array()) throw FormatError("allocation.seats must be an array");
    for (std::size_t k = 0; k < seats.size(); ++k) {
        const auto v = as_integer(seats[k], "allocation.seats[" + std::to_string(k) + "]");
        if (v < 0) throw FormatError("allocation.seats[" + std::to_string(k) + "] must be non-negative");
        alloc.seats.push_back(v);
    }
    return alloc;
}

Allocation load_allocation(const std::filesystem::path& path) { return parse_allocation(read_file(path)); }

std::string allocation_to_json(const Allocation& alloc) {
    Json j;
    j["h"] = alloc.h;
    j["seats"] = alloc.seats;
    return j.dump() + "\n";
}

std::string trajectory_to_json(const Trajectory& trajectory) {
    std::string out = "{\n  \"method\": \"" + std::string(to_string(trajectory.method)) + "\",\n";
    out += "  \"allocations\": [\n";
    for (std::size_t g = 0; g < trajectory.allocations.size(); ++g) {
        out += "    " + Json(trajectory.allocations[g].seats).dump() +
               (g + 1 < trajectory.allocations.size() ? ",\n" : "\n");
    }
    out += "  ],\n  \"paths\": [\n";
    for (std::size_t g = 0; g < trajectory.paths.size(); ++g) {
        out += "    " + Json(trajectory.paths[g]).dump() + (g + 1 < trajectory.paths.size() ? ",\n" : "\n");
    }
    out += "  ]\n}\n";
    return out;
}

std::string reduction_to_json(const BinaryReduction& reduction) {
    Json j;
    j["forward_map"] = reduction.forward_map;
    j["introduced"] = reduction.introduced;
    std::string out = "{\n  \"forward_map\": " + j["forward_map"].dump() + ",\n";
    out += "  \"introduced\": " + j["introduced"].dump() + ",\n";
    std::string inst = instance_to_json(reduction.reduced);
    // Nest the instance document under "reduced", indented one level.
    std::string nested;
    for (std::size_t k = 0; k < inst.size(); ++k) {
        nested += inst[k];
        if (inst[k] == '\n' && k + 1 < inst.size()) nested += "  ";
    }
    while (!nested.empty() && nested.back() == '\n') nested.pop_back();
    out += "  \"reduced\": " + nested + "\n}\n";
    return out;
}

std::string report_to_json(const QuotaReport& report) {
    Json j;
    j["mode"] = to_string(report.mode);
    j["compliant"] = report.compliant();
    j["lower_violation_count"] = report.lower_violation_count;
    j["upper_violation_count"] = report.upper_violation_count;
    Json flows = Json::array();
    for (const auto& f : report.flow_violations) {
        flows.push_back({{"node", f.node}, {"seats", f.seats}, {"expected", f.expected}});
    }
    j["flow_violations"] = flows;
    Json nodes = Json::array();
    for (const auto& q : report.nodes) {
        nodes.push_back({{"node", q.bounds.node},
                         {"seats", q.seats},
                         {"lower", q.bounds.lower},
                         {"upper", q.bounds.upper},
                         {"binding_lower_ancestor", q.bounds.binding_lower_ancestor},
                         {"binding_upper_ancestor", q.bounds.binding_upper_ancestor},
                         {"lower_violated", q.lower_violated},
                         {"upper_violated", q.upper_violated}});
    }
    j["nodes"] = nodes;
    return j.dump(2) + "\n";
}

std::string validation_to_json(const std::vector<InstanceError>& errors) {
    Json j;
    j["valid"] = errors.empty();
    Json list = Json::array();
    for (const auto& e : errors) {
        Json item;
        item["kind"] = to_string(e.kind);
        item["node"] = e.node ? Json(*e.node) : Json(nullptr);
        if (e.sum) item["sum"] = e.sum->str();
        item["message"] = e.message;
        list.push_back(item);
    }
    j["errors"] = list;
    return j.dump(2) + "\n";
}

ExperimentConfig parse_experiment_config(std::string_view json_text) {
    const Json doc = parse_json(json_text);
    if (!doc.is_object()) throw FormatError("experiment config must be an object");
    ExperimentConfig config;

    auto parse_family_obj = [](const Json& f, const std::string& where) {
        TreeFamily family;
        const Json& kind = require(f, "kind", where);
        if (!kind.is_string()) throw FormatError(where + ".kind must be a string");
        auto parsed = parse_family(kind.get<std::string>());
        if (!parsed) throw FormatError(where + ".kind must be \"binary\" or \"4ary\"");
        family.kind = *parsed;
        family.height = static_cast<int>(as_integer(require(f, "height", where), where + ".height"));
        return family;
    };
    if (doc.contains("families")) {
        const Json& fams = doc.at("families");
        if (!fams.is_array()) throw FormatError("\"families\" must be an array");
        for (std::size_t k = 0; k < fams.size(); ++k) {
            config.families.push_back(parse_family_obj(fams[k], "families[" + std::to_string(k) + "]"));
        }
    } else if (doc.contains("family")) {
        config.families.push_back(parse_family_obj(doc.at("family"), "family"));
    }
    if (doc.contains("instance_count")) {
        const auto count = as_integer(doc.at("instance_count"), "instance_count");
        if (count < 1) throw FormatError("instance_count must be at least 1");
        config.instance_count = static_cast<std::size_t>(count);
    }
    if (doc.contains("base_seed")) {
        const Json& seed = doc.at("base_seed");
        if (!seed.is_number_unsigned() && !seed.is_number_integer()) throw FormatError("base_seed must be an integer");
        if (seed.is_number_integer() && seed.get<std::int64_t>() < 0) throw FormatError("base_seed must be non-negative");
        config.base_seed = seed.get<std::uint64_t>();
    }
    if (doc.contains("house_sizes")) {
        const Json& hs = doc.at("house_sizes");
        if (!hs.is_array()) throw FormatError("house_sizes must be an array");
        config.house_sizes.clear();
        for (const auto& h : hs) config.house_sizes.push_back(as_integer(h, "house_sizes entry"));
    }
    if (doc.contains("methods")) {
        const Json& ms = doc.at("methods");
        if (!ms.is_array()) throw FormatError("methods must be an array");
        config.methods.clear();
        for (const auto& m : ms) {
            auto parsed = m.is_string() ? parse_method(m.get<std::string>()) : std::nullopt;
            if (!parsed) throw FormatError("unknown method " + m.dump());
            config.methods.push_back(*parsed);
        }
    }
    if (doc.contains("max_weight")) config.max_weight = as_integer(doc.at("max_weight"), "max_weight");
    if (doc.contains("mode")) {
        const Json& mode = doc.at("mode");
        if (mode == "all") {
            config.mode = QuotaMode::AllAncestors;
        } else if (mode == "root") {
            config.mode = QuotaMode::RootOnly;
        } else {
            throw FormatError("mode must be \"all\" or \"root\"");
        }
    }
    if (doc.contains("threads")) {
        const auto threads = as_integer(doc.at("threads"), "threads");
        if (threads < 0) throw FormatError("threads must be non-negative");
        config.threads = static_cast<std::size_t>(threads);
    }
    return config;
}

}  // namespace mla
