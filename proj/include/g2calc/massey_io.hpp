#pragma once

#include "g2calc/massey.hpp"

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2calc {

// Syntax error with "source:line: message".
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Contents of a model file; see docs/formats.md.
struct ModelFile {
    LieAlgebra algebra;
    std::vector<std::array<std::string, 3>> massey;
    std::vector<FourManifoldPart> parts;
    std::vector<std::string> torus;  // generators of an abelian second factor

    ObstructionInput obstruction_input() const;
};

ModelFile parse_model(std::istream& in, const std::string& source = "<input>");
ModelFile parse_model_file(const std::string& path);
ModelFile parse_model_text(const std::string& text, const std::string& source = "<text>");

// "e1 ; e2 ; e2".
std::array<std::string, 3> parse_classes(const std::string& text);

// Built-in models: "iwasawa", "torus3", "iwasawa-product", "k3-connect-sum", "t7".
const std::vector<std::string>& example_names();
std::string example_text(const std::string& name);

}  // namespace g2calc
