#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace capitulab {

using Integer = mpz_class;
using Rational = mpq_class;

// Raised when an operation's preconditions on its mathematical inputs fail.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Raised by the transcript reader and the CLI argument decoders.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

inline std::string to_string(const Integer& n) { return n.get_str(); }
inline std::string to_string(const Rational& q) { return q.get_str(); }

// "[a,b,c]" in the PARI list style.
std::string format_list(const std::vector<Integer>& v);

}  // namespace capitulab
