#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace thy {

/// Base of every exception raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TypeError : public Error {
 public:
  enum class Kind { UnknownName, ArityMismatch, TypeMismatch };

  TypeError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class EvalError : public Error {
 public:
  enum class Kind { UnboundVariable, DomainError };

  EvalError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Saturation produced more clauses than the configured cap.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class PivotAbsent : public Error {
 public:
  using Error::Error;
};

class TooManyAtoms : public Error {
 public:
  using Error::Error;
};

class HornPreconditionFailed : public Error {
 public:
  using Error::Error;
};

/// A formula of the theory is not of the shape l -> l'.
class NotImplicational : public Error {
 public:
  NotImplicational(std::size_t index, const std::string& what)
      : Error(what), index_(index) {}
  std::size_t formula_index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class AsymmetricGraph : public Error {
 public:
  using Error::Error;
};

/// A clause of the theory is not definite, so it has no `q :- body.` form.
class NotHorn : public Error {
 public:
  NotHorn(std::size_t formula_index, const std::string& what)
      : Error(what), index_(formula_index) {}
  std::size_t formula_index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace thy
