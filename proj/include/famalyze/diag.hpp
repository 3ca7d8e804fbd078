#pragma once

#include <stdexcept>
#include <string>

namespace famalyze {

// Frontend diagnostics carry a 1-based source position.
struct source_pos {
  int line = 0;
  int col = 0;
};

class syntax_error : public std::runtime_error {
public:
  syntax_error(const std::string &msg, source_pos pos)
      : std::runtime_error(msg + " (line " + std::to_string(pos.line) +
                           ", col " + std::to_string(pos.col) + ")"),
        pos(pos) {}
  source_pos pos;
};

class scope_error : public std::runtime_error {
public:
  scope_error(const std::string &msg, source_pos pos)
      : std::runtime_error(msg + " (line " + std::to_string(pos.line) +
                           ", col " + std::to_string(pos.col) + ")"),
        pos(pos) {}
  source_pos pos;
};

// Feature declared with lo > hi.
class feature_domain_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Configuration-space enumeration would exceed the cap; carries the exact
// size computed by product counting before materialization.
class cap_exceeded : public std::runtime_error {
public:
  cap_exceeded(const std::string &msg, std::string size)
      : std::runtime_error(msg), space_size(std::move(size)) {}
  std::string space_size;
};

class timeout_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class universe_mismatch : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class shape_mismatch : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A constraint cannot be encoded in the requested abstract domain
// (e.g. a two-variable relation handed to the interval domain).
class not_representable : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class nontermination_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace famalyze
