#include "g2calc/report.hpp"

#include <algorithm>

namespace g2calc {

bool Report::passed() const { return failures() == 0; }

std::size_t Report::failures() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

void Report::add(std::string id, std::string statement, bool pass, std::string value) {
    if (value.empty()) value = pass ? "holds" : "fails";
    checks.push_back(Check{std::move(id), std::move(statement), pass, std::move(value)});
}

void Report::add_residual(std::string id, std::string statement, const Q& residual) {
    add(std::move(id), std::move(statement), sgn(residual) == 0, to_string(residual));
}

void Report::append(const Report& other, const std::string& prefix) {
    for (const auto& c : other.checks) checks.push_back(Check{prefix + c.id, c.statement, c.pass, c.value});
}

}  // namespace g2calc
