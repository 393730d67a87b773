// Structured text model/potential configs (key=value lines, # comments).
// Parsing is strict: unknown keys are rejected so a typo cannot silently
// change which shift gets analyzed.
//
//   kind=sft          matrix=1,1;1,0
//   kind=sofic        states=2 alphabet=2 edges=0:0>0;0:1>1;1:0>0
//   kind=beta         z=2102001            (or beta=101/40 digits=14)
//   kind=sgap         S=1,2  |  S=0,3+2k   (finite part and a+dk tails)
//
//   potential.kind=locally_constant  potential.window=1  potential.table=0:0,1:0.7
//   potential.kind=series  potential.coeffs=1,0.5  potential.base=0,1  potential.tail=0.5

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "shiftlab/potential.hpp"
#include "shiftlab/shift_model.hpp"

namespace shiftlab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& in);
KeyValues parse_config_file(const std::string& path);

// Builds the model; every key consumed must be known for the given kind.
ModelPtr model_from_config(const KeyValues& kv);

// Potential from potential.* keys; nullopt when none are present.
std::optional<Potential> potential_from_config(const KeyValues& kv);

// Full strictness check: every key must belong to the model, the potential,
// or the caller-supplied extra whitelist.
void reject_unknown_keys(const KeyValues& kv, const std::vector<std::string>& extra_allowed = {});

}  // namespace shiftlab
