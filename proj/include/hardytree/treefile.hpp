#pragma once

#include <cstdint>
#include <string>

#include "hardytree/exponents.hpp"
#include "hardytree/tree.hpp"

namespace hardytree {

struct ParsedTree {
    WeightedTree tree;
    Exponents exponents;
};

// Line-oriented tree format:
//   # comment
//   p=<exponent> q=<exponent>
//   <id> <parent|-> <u> <w>
// Exponents accept decimals, rationals like "3/2", and "inf". Vertex ids
// must be exactly 0..n-1 with one root line ("-" parent). Errors carry
// line (and where useful column) positions.
ParsedTree parse_tree_file(const std::string& text);

// Canonical text form; parse_tree_file(emit_tree_file(x)) reproduces x.
std::string emit_tree_file(const WeightedTree& wt, const Exponents& e);

// Order-sensitive FNV-1a digest of the structure and weight bit patterns;
// used to fingerprint inputs in reports.
std::uint64_t weighted_tree_digest(const WeightedTree& wt);

} // namespace hardytree
