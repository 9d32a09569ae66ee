#pragma once

#include <injhom/solver.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace injhom {

enum class FactKind { NonEmpty, Forced, Equal, Range, Extends };

/// One machine-checkable claim about the set of valid colourings. Vertices are referenced
/// by scoped names: a label ("31"), a port ("dport"), or "alias.label" inside a composition.
struct Fact {
    FactKind kind = FactKind::NonEmpty;
    std::vector<std::string> refs;
    /// Forced: one colour. Range: the allowed colours. Extends: aligned with refs.
    std::vector<VertexId> colours;

    /// The contract-file line for this fact.
    auto text() const -> std::string;
};

struct Anchor {
    std::string ref;
    VertexId colour;
};

struct Contract {
    std::string target = "T4";
    InjectivityMode mode = InjectivityMode::IosSeparate;
    std::optional<Anchor> anchor;
    std::vector<Fact> facts;
};

/// One fact or directive per line: "target T4", "mode ios", "nonempty", "forced 31 d",
/// "equal 0 9", "range 0 b,c,d", "extends 1=b,11=c,21=d", "anchor 0 a". Throws ContractMalformed.
auto parse_contract(const std::string & text) -> Contract;
auto serialize_contract(const Contract & contract) -> std::string;

using ScopeMap = std::map<std::string, VertexId>;

struct GadgetSpec {
    std::string name;
    OrientedGraph graph;
    std::map<std::string, VertexId> ports;
    Contract contract;
    std::string provenance = "reconstructed";
};

/// Labels "0".."n-1" plus the port names.
auto gadget_scope(const GadgetSpec & spec) -> ScopeMap;

/// INJHOM_ASSET_DIR if set, otherwise the directory configured at build time.
auto default_asset_dir() -> std::string;

/// Reads <dir>/<name>.graph and <dir>/<name>.contract. Throws AssetMissing, ContractMalformed.
auto load_gadget(const std::string & name, const std::string & asset_dir = default_asset_dir()) -> GadgetSpec;

struct Placement {
    std::string alias;
    GadgetSpec spec;
};

struct Composition {
    OrientedGraph graph;
    /// "alias.label" and "alias.port" to final vertex ids.
    ScopeMap scope;
};

/// Disjoint union of the placements, plus extra arcs between scoped references, then each
/// identification merges its second port into its first. Identifications must name declared
/// ports (UnknownPort otherwise). Throws DigonViolation.
auto compose(const std::vector<Placement> & parts,
    const std::vector<std::pair<std::string, std::string>> & identifications,
    const std::vector<std::pair<std::string, std::string>> & extra_arcs = {}) -> Composition;

enum class FactStatus { Pass, Fail, Inconclusive };

auto to_string(FactStatus status) -> std::string;

struct FactResult {
    std::string fact;
    FactStatus status = FactStatus::Pass;
    std::string detail;
    /// A full valid colouring contradicting the fact, when one exists.
    std::optional<Colouring> counterexample;
};

struct VerificationReport {
    std::string id;
    std::vector<FactResult> facts;
    /// Distinct restrictions of the witness set to the vertices the facts mention.
    std::uint64_t witness_count = 0;
    SearchStats stats;

    auto passed() const -> bool;
    auto format() const -> std::string;
};

struct VerifyOptions {
    std::optional<std::uint64_t> node_budget = 200'000'000;
};

/// Checks every fact against the exhaustive witness set, restricted to the mentioned vertices.
/// With an anchor, the anchor vertex is fixed to its colour; colours outside the anchor
/// colour's automorphism orbit must be impossible for the anchor to be sound.
auto verify_contract(const OrientedGraph & g, const Contract & contract, const ScopeMap & scope,
    const VerifyOptions & options = {}, const std::string & id = "") -> VerificationReport;

struct LemmaCase {
    std::string name;
    Composition composition;
    Contract contract;
};

/// Named checks over the shipped gadgets: hx-forced, he-equal, jv-ring, fx-forced,
/// fe-forced, fe-equal, dv-ring.
auto lemma_ids() -> std::vector<std::string>;
/// Lemma ids exercising the named gadget.
auto lemmas_for_gadget(const std::string & gadget) -> std::vector<std::string>;
auto lemma_cases(const std::string & id, const std::string & asset_dir = default_asset_dir()) -> std::vector<LemmaCase>;
auto verify_lemma(const std::string & id, const std::string & asset_dir = default_asset_dir(),
    const VerifyOptions & options = {}) -> std::vector<VerificationReport>;

struct SynthesisOptions {
    int max_vertices = 8;
    int ports = 1;
    std::uint64_t seed = 1;
    /// Random candidates tried per size once exhaustive search is too large.
    int samples_per_size = 2000;
};

/// Searches loopless oriented graphs, smallest first, for one satisfying the contract.
/// Ports p0, p1, ... are vertices 0, 1, ...; contract references are labels or port names.
/// Sizes up to five vertices are searched exhaustively, larger sizes by seeded sampling.
/// Throws NotFound, InvalidArgument (bound above 12).
auto synthesize_gadget(const Contract & contract, const SynthesisOptions & options = {}) -> GadgetSpec;

}
