#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "nesim/digraph.hpp"
#include "nesim/game.hpp"

namespace nesim {

// Graph file: `nodes <n>` header, then `edge <from> <to> <weight>` records
// (information flows from <from> to <to>, i.e. a_{to,from} = weight).
// 1-based node indices, `#` comments. Self-loops are rejected.
DiGraph load_graph(const std::filesystem::path& path);
DiGraph parse_graph(std::istream& in, const std::string& origin);

// Game file: `players <n>`, then per player `Q <i>` with n rows of n reals
// and `b <i>` with one row of n reals. Symmetry and monotonicity are
// validated by the QuadraticGame constructor.
QuadraticGame load_game(const std::filesystem::path& path);
QuadraticGame parse_game(std::istream& in, const std::string& origin);

}  // namespace nesim
