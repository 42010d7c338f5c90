#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mgo/decomposition.hpp"
#include "mgo/graph.hpp"
#include "mgo/solvers.hpp"

namespace mgo {

/// In-memory form of an instance file. Line-oriented text format:
///   MGO 1 <n> <|E_D|> <|E_U|> <|P|>
///   D tail head        directed edge
///   U a b              undirected edge (ids by order of appearance)
///   R s t              request (ids by order of appearance)
///   F v                feedback-vertex-set hint, one vertex per line
///   B id v1 v2 ...     decomposition bag
///   T id1 id2          decomposition tree edge
///   X reqid v1 v2 ...  mandated path for a request
/// '#' starts a comment; emit is canonical (fixed section order, sorted
/// hints), so parse-emit round trips are byte-exact.
struct Instance {
    MixedGraph graph;
    std::vector<Request> requests;
    std::vector<Vertex> fvs_hint;
    std::optional<TreeDecomposition> decomposition;
    std::vector<std::optional<std::vector<Vertex>>> mandated;  // per request

    bool has_fvs_hint() const { return !fvs_hint.empty(); }
    bool all_mandated() const;
};

Instance parse_instance_text(const std::string& text);
Instance load_instance(const std::string& path);
std::string emit_instance(const Instance& instance);
void save_instance(const Instance& instance, const std::string& path);

/// Orientation files carry one `O a b` line per undirected edge, in edge-id
/// order; parsing leaves missing trailing lines unassigned so validation can
/// report them.
PartialOrientation parse_orientation_text(const std::string& text, const MixedGraph& graph);
PartialOrientation load_orientation(const std::string& path, const MixedGraph& graph);
std::string emit_orientation(const Orientation& orientation);
void save_orientation(const Orientation& orientation, const std::string& path);

std::string emit_metadata(const std::vector<std::pair<std::string, std::string>>& metadata);

/// FNV-1a hash of the canonical instance text, as fixed-width hex.
std::string instance_digest(const Instance& instance);

/// Flat key-value block describing one solver run.
struct ReportRecord {
    std::string instance_digest;
    std::string algorithm;
    int satisfied = 0;
    int auto_satisfied = 0;
    Certificate certificate;
    double wall_seconds = 0.0;
};

std::string emit_report(const ReportRecord& report);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace mgo
