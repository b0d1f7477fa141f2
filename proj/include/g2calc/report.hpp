#pragma once

#include "g2calc/rational.hpp"

#include <string>
#include <vector>

namespace g2calc {

// One verified statement: an identifier, what was checked, and the exact
// residual or observed value.
struct Check {
    std::string id;
    std::string statement;
    bool pass = false;
    std::string value;
};

struct Report {
    std::string suite;
    std::vector<Check> checks;

    bool passed() const;
    std::size_t failures() const;
    void add(std::string id, std::string statement, bool pass, std::string value);
    // Passes iff the residual is exactly zero.
    void add_residual(std::string id, std::string statement, const Q& residual);
    void append(const Report& other, const std::string& prefix = "");
};

}  // namespace g2calc
