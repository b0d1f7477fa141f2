#pragma once

#include "g2calc/decomp.hpp"

#include <optional>
#include <string>

namespace g2calc {

// Outcome of comparing an operator component with a reference map.
struct ProbeResult {
    enum class Kind { Zero, Scalar, NotScalar };
    Kind kind = Kind::Zero;
    QI value;  // meaningful for Scalar

    std::string str() const;  // "zero", "-3/2", "not-scalar"
    // nullopt expects Zero.
    bool matches(const std::optional<Q>& expected) const;
};

// One arrow of a component diagram: from ↦ to is c times the reference.
struct Arrow {
    TypeLabel from;
    TypeLabel to;
    Q c;
    std::string reference;  // empty for the identity on parameters
};

// L_to · op · B_from, the component read through both parameterizations.
MatQ parameter_component(const MatQ& op, TypeLabel from, TypeLabel to);
MatQI parameter_component(const MatQI& op, TypeLabel from, TypeLabel to);

// Finds c with component = c · reference by exact comparison. An empty
// reference means there is no admissible nonzero value.
ProbeResult probe_ratio(const MatQI& component, const MatQI& reference);

}  // namespace g2calc
