#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qhv/diagram.hpp"
#include "qhv/linear_system.hpp"

namespace qhv {

// Text forms:
//   system   L(13;5,4^9)   L(0;2^3,1,-1^5,-2,-4)   L(4;)
//   diagram  (~19,18,17,16,14,10,5)   (~32)   (1,2,2)   ()
// "x^n" repeats x n times, "~a" is the prefix 1,2,...,a.

LinearSystem parse_system(std::string_view text);
Diagram parse_diagram(std::string_view text);
/// Bare list such as "12,9^9" (empty allowed).
std::vector<std::int64_t> parse_mults(std::string_view text);

std::string format_mults(const std::vector<std::int64_t>& mults);
std::string format(const LinearSystem& system);
std::string format(const Diagram& diagram);

}  // namespace qhv
