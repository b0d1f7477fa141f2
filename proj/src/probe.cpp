#include "g2calc/probe.hpp"

namespace g2calc {

std::string ProbeResult::str() const {
    switch (kind) {
    case Kind::Zero: return "zero";
    case Kind::Scalar: return to_string(value);
    case Kind::NotScalar: break;
    }
    return "not-scalar";
}

bool ProbeResult::matches(const std::optional<Q>& expected) const {
    if (!expected) return kind == Kind::Zero;
    return kind == Kind::Scalar && value == QI(*expected);
}

MatQ parameter_component(const MatQ& op, TypeLabel from, TypeLabel to) {
    const auto& d = Decomposition::instance();
    return d.parameter_map(to) * (op * d.parameterization(from));
}

MatQI parameter_component(const MatQI& op, TypeLabel from, TypeLabel to) {
    return MatQI(parameter_component(op.re, from, to), parameter_component(op.im, from, to));
}

ProbeResult probe_ratio(const MatQI& component, const MatQI& reference) {
    ProbeResult r;
    if (component.is_zero()) return r;
    r.kind = ProbeResult::Kind::NotScalar;
    if (reference.rows() != component.rows() || reference.cols() != component.cols() || reference.is_zero())
        return r;
    for (int i = 0; i < reference.rows(); ++i)
        for (int j = 0; j < reference.cols(); ++j) {
            QI ref = reference.at(i, j);
            if (ref.is_zero()) continue;
            QI c = component.at(i, j) / ref;
            if (c * reference == component) {
                r.kind = ProbeResult::Kind::Scalar;
                r.value = c;
            }
            return r;
        }
    return r;
}

}  // namespace g2calc
