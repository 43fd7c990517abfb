#ifndef EMTK_EARLEY_HPP
#define EMTK_EARLEY_HPP

#include <vector>

#include "emtk/cfg.hpp"

namespace emtk {

// All full-parse trees of `grammar` whose yield is `sentence`, duplicate-free
// and in deterministic order: rules are tried in grammar order and split
// points left to right, so the first tree is the lexicographically first
// derivation.  An unparseable sentence gives an empty result, not an error.
// Grammar restrictions (no empty right-hand sides, no unary cycles) are
// enforced by Cfg itself, which keeps the parse set finite.
std::vector<ParseTree> parse_all(const Cfg& grammar, const Sentence& sentence);

// Recognition only.
bool parseable(const Cfg& grammar, const Sentence& sentence);

}  // namespace emtk

#endif
