#include "nesim/io.hpp"

#include <fstream>
#include <sstream>

namespace nesim {

namespace {

[[noreturn]] void parse_fail(const std::string& origin, const std::string& msg) {
  throw IoError(origin + ": " + msg);
}

// Strips comments and returns false on blank lines.
bool next_tokens(std::istream& in, std::vector<std::string>& tokens) {
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    tokens.clear();
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (!tokens.empty()) return true;
  }
  return false;
}

double to_real(const std::string& s, const std::string& origin) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) parse_fail(origin, "bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    parse_fail(origin, "bad number '" + s + "'");
  }
}

int to_index(const std::string& s, int n, const std::string& origin) {
  double v = to_real(s, origin);
  int i = static_cast<int>(v);
  if (i != v || i < 1 || i > n) {
    parse_fail(origin, "node/player index out of range: " + s);
  }
  return i;
}

std::ifstream open_or_fail(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace

DiGraph parse_graph(std::istream& in, const std::string& origin) {
  std::vector<std::string> tok;
  if (!next_tokens(in, tok) || tok[0] != "nodes" || tok.size() != 2) {
    parse_fail(origin, "expected 'nodes <n>' header");
  }
  int n = static_cast<int>(to_real(tok[1], origin));
  if (n < 2) parse_fail(origin, "need at least 2 nodes");
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  while (next_tokens(in, tok)) {
    if (tok[0] != "edge" || tok.size() != 4) {
      parse_fail(origin, "expected 'edge <from> <to> <weight>'");
    }
    int from = to_index(tok[1], n, origin);
    int to = to_index(tok[2], n, origin);
    double w = to_real(tok[3], origin);
    if (from == to) parse_fail(origin, "self-loops are not allowed");
    if (w < 0.0) parse_fail(origin, "negative edge weight");
    // Information flows from -> to, so receiver `to` gets a_{to,from}.
    A(to - 1, from - 1) = w;
  }
  return DiGraph(A);
}

DiGraph load_graph(const std::filesystem::path& path) {
  auto in = open_or_fail(path);
  return parse_graph(in, path.string());
}

QuadraticGame parse_game(std::istream& in, const std::string& origin) {
  std::vector<std::string> tok;
  if (!next_tokens(in, tok) || tok[0] != "players" || tok.size() != 2) {
    parse_fail(origin, "expected 'players <n>' header");
  }
  int n = static_cast<int>(to_real(tok[1], origin));
  if (n < 1) parse_fail(origin, "need at least 1 player");
  std::vector<Eigen::MatrixXd> Q(n);
  std::vector<Eigen::VectorXd> b(n);
  std::vector<char> haveQ(n, 0), haveB(n, 0);
  while (next_tokens(in, tok)) {
    if (tok[0] == "Q" && tok.size() == 2) {
      int i = to_index(tok[1], n, origin) - 1;
      Q[i].resize(n, n);
      for (int r = 0; r < n; ++r) {
        if (!next_tokens(in, tok) || static_cast<int>(tok.size()) != n) {
          parse_fail(origin, "Q block needs n rows of n reals");
        }
        for (int c = 0; c < n; ++c) Q[i](r, c) = to_real(tok[c], origin);
      }
      haveQ[i] = 1;
    } else if (tok[0] == "b" && tok.size() == 2) {
      int i = to_index(tok[1], n, origin) - 1;
      if (!next_tokens(in, tok) || static_cast<int>(tok.size()) != n) {
        parse_fail(origin, "b block needs one row of n reals");
      }
      b[i].resize(n);
      for (int c = 0; c < n; ++c) b[i](c) = to_real(tok[c], origin);
      haveB[i] = 1;
    } else {
      parse_fail(origin, "expected 'Q <i>' or 'b <i>' block");
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!haveQ[i]) parse_fail(origin, "missing Q block for player " + std::to_string(i + 1));
    if (!haveB[i]) b[i] = Eigen::VectorXd::Zero(n);
  }
  return QuadraticGame(std::move(Q), std::move(b));
}

QuadraticGame load_game(const std::filesystem::path& path) {
  auto in = open_or_fail(path);
  return parse_game(in, path.string());
}

}  // namespace nesim
