#pragma once

#include <stdexcept>
#include <string>

namespace recipgamma {

/// A shape-parameter full conditional came out with a non-positive rate.
class PriorProprietyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The upper-tail mass of a truncated gamma underflows.
class InfeasibleTruncation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid experiment configuration; the message carries the field path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace recipgamma
