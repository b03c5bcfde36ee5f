#pragma once

#include <stdexcept>
#include <string>

namespace qsep {

/// Base class of every exception thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class not_hermitian : public error {
 public:
  not_hermitian(const std::string& what, double deviation) : error(what), deviation_(deviation) {}
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

class not_converged : public error {
 public:
  using error::error;
};

class invalid_spectrum : public error {
 public:
  using error::error;
};

/// Which density-matrix invariant a candidate state broke.
enum class StateViolation { non_finite, hermiticity, trace, positivity };

inline const char* to_string(StateViolation v) {
  switch (v) {
    case StateViolation::non_finite: return "finiteness";
    case StateViolation::hermiticity: return "hermiticity";
    case StateViolation::trace: return "unit trace";
    case StateViolation::positivity: return "positive semidefiniteness";
  }
  return "?";
}

class invalid_state : public error {
 public:
  invalid_state(StateViolation v, double magnitude)
      : error(std::string("invalid density matrix: violates ") + to_string(v) + " (magnitude " +
              std::to_string(magnitude) + ")"),
        violation_(v),
        magnitude_(magnitude) {}
  StateViolation violation() const noexcept { return violation_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  StateViolation violation_;
  double magnitude_;
};

class not_unitary : public error {
 public:
  explicit not_unitary(double violation)
      : error("matrix is not unitary (max |UU^dag - I| = " + std::to_string(violation) + ")"), violation_(violation) {}
  double violation() const noexcept { return violation_; }

 private:
  double violation_;
};

class degenerate_params : public error {
 public:
  using error::error;
};

class parameter_out_of_range : public error {
 public:
  using error::error;
};

class wrong_sparsity : public error {
 public:
  wrong_sparsity(const std::string& what, double off_pattern) : error(what), off_pattern_(off_pattern) {}
  double off_pattern_mass() const noexcept { return off_pattern_; }

 private:
  double off_pattern_;
};

class not_x_state : public error {
 public:
  using error::error;
};

class non_physical_input : public error {
 public:
  using error::error;
};

class not_normalized : public error {
 public:
  using error::error;
};

class no_boundary : public error {
 public:
  using error::error;
};

class invalid_scan_spec : public error {
 public:
  using error::error;
};

}  // namespace qsep
