#pragma once

#include <string>
#include <vector>

#include "abstain/oracle.hpp"

// JSON (de)serialization of finite game instances.  A file holds either one
// instance object or an array of them.  Required fields: n, prior,
// posterior, labels_f, gamma, c, and exactly one of positions (1-D points;
// distances become squared differences) or dist (n rows of n squared
// distances).  Optional: l01, l10 (default 1).
namespace abstain::instance_io {

// Raised for malformed documents; the message carries file/line context for
// syntax errors and the instance index plus offending field for semantic
// ones.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<oracle::DiscreteInstance> load_instances(const std::string& path);
std::vector<oracle::DiscreteInstance> parse_instances(const std::string& text,
                                                      const std::string& origin);

std::string to_json(const oracle::DiscreteInstance& inst);

}  // namespace abstain::instance_io
