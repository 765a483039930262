#ifndef qdc_error_hpp
#define qdc_error_hpp

#include <stdexcept>
#include <string>

namespace qdc {

/// Broad failure categories. The CLI maps each one to an exit status.
enum class error_kind {
  invalid_input,
  condition_violated,
  degenerate_window,
  unstable_system,
  validation_failure,
  io_failure,
};

class error : public std::runtime_error {
public:
  error(error_kind kind, std::string const& what)
      : std::runtime_error(what), kind_(kind) {}

  error_kind kind() const noexcept { return kind_; }

private:
  error_kind kind_;
};

class invalid_input_error : public error {
public:
  explicit invalid_input_error(std::string const& what)
      : error(error_kind::invalid_input, what) {}
};

/// Raised when a step-function schedule is used with service times that
/// span more than one epoch.
class condition_violated_error : public error {
public:
  explicit condition_violated_error(std::string const& what)
      : error(error_kind::condition_violated, what) {}
};

class degenerate_window_error : public error {
public:
  explicit degenerate_window_error(std::string const& what)
      : error(error_kind::degenerate_window, what) {}
};

class unstable_system_error : public error {
public:
  explicit unstable_system_error(std::string const& what)
      : error(error_kind::unstable_system, what) {}
};

class validation_failure_error : public error {
public:
  explicit validation_failure_error(std::string const& what)
      : error(error_kind::validation_failure, what) {}
};

class io_error : public error {
public:
  explicit io_error(std::string const& what)
      : error(error_kind::io_failure, what) {}
};

} // namespace qdc

#endif // qdc_error_hpp
