#pragma once

#include <stdexcept>
#include <string>

namespace qplane {

/// Violated precondition or invalid model input (bad spectrum, bad class
/// spec, element outside the algebra it was evaluated on).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive trace truncation did not settle before the maximum window.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double previous, double last, int window)
      : std::runtime_error(what), previous_(previous), last_(last), window_(window) {}

  double previous() const { return previous_; }
  double last() const { return last_; }
  int window() const { return window_; }

 private:
  double previous_;
  double last_;
  int window_;
};

/// Run-store I/O and format failures.
class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qplane
