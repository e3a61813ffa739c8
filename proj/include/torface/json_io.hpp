#pragma once

#include <memory>
#include <string>

#include "torface/squarefree.hpp"
#include "torface/toricring.hpp"

namespace torface {

/// A parsed and fully validated input document.
struct Input {
    std::unique_ptr<ToricFaceRing> ring;
    std::vector<Variable> labels;
    std::string name;
};

Input load_input(const std::string& path);
Input parse_input(const std::string& text);

/// Module description for sqcheck: builtin kinds or explicit graded data.
BoxedModule load_module(const std::string& path, const ToricFaceRing& r, int window);

} // namespace torface
