#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fiidlab/ball.hpp"
#include "fiidlab/graph.hpp"
#include "fiidlab/labels.hpp"

namespace fiidlab {

using Symbol = std::uint8_t;

// A radius-r equivariant local rule. evaluate() is the contract path: the
// output at a vertex is a function of the labelled rooted ball only, so it is
// unchanged under relabelling of ball indices (tested by recomputation on
// relabelled isomorphic balls). apply() may take a faster route but must
// agree with evaluate() everywhere.
class BlockFactor {
public:
    virtual ~BlockFactor() = default;

    const std::string& id() const { return id_; }
    std::uint32_t radius() const { return radius_; }
    const std::map<std::string, double>& params() const { return params_; }
    const std::vector<std::string>& alphabet() const { return alphabet_; }

    virtual Symbol evaluate(const RootedBall& b) const = 0;
    virtual void apply(const Graph& g, const LabelField& f, std::span<Symbol> out) const;

    // Canonical spec string "rule_id:key=val,key=val" (keys sorted).
    std::string spec_string() const;

    Symbol symbol_index(const std::string& name) const;  // throws if unknown

protected:
    BlockFactor(std::string id, std::uint32_t radius, std::map<std::string, double> params,
                std::vector<std::string> alphabet)
        : id_(std::move(id)), radius_(radius), params_(std::move(params)),
          alphabet_(std::move(alphabet)) {}

private:
    std::string id_;
    std::uint32_t radius_;
    std::map<std::string, double> params_;
    std::vector<std::string> alphabet_;
};

// Per-vertex output of a factor over a label field.
struct Configuration {
    std::vector<Symbol> symbols;
    std::vector<std::string> alphabet;
    std::string factor_spec;
    std::uint32_t radius = 0;
    std::uint64_t label_seed = 0;

    VertexSet support(Symbol s) const;
    std::uint64_t count(Symbol s) const;
};

// Factory from "rule_id:key=val,key=val" (or bare "rule_id").
// Parameters are validated at construction; probabilities outside [0,1] are
// rejected, never clamped.
std::unique_ptr<BlockFactor> make_factor(const std::string& spec);

struct FactorInfo {
    std::string rule_id;
    std::uint32_t default_radius;
    std::string params_schema;   // human-readable, e.g. "p in [0,1]"
    std::string example_spec;
};
std::vector<FactorInfo> builtin_factor_catalog();

Configuration apply_factor(const Graph& g, const LabelField& f, const BlockFactor& b);

// Run-length-encoded text serialization:
//   line 1: JSON header {"rule":..., "radius":..., "seed":..., "n":..., "alphabet":[...]}
//   line 2: runs "sym*len" separated by spaces.
void write_configuration(const Configuration& c, std::ostream& os);
Configuration read_configuration(std::istream& is);

} // namespace fiidlab
