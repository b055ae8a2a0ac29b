// Copyright (c) the manirec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace manirec {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An argument violates a documented precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Non-finite values or a numerically meaningless request.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Input vectors are (numerically) linearly dependent.
class RankDeficientError : public Error {
 public:
  using Error::Error;
};

// No sample lies strictly inside the support radius of the query point.
class OutOfSupportError : public Error {
 public:
  using Error::Error;
};

// Query point is within the guard radius of the medial axis.
class MedialAxisError : public Error {
 public:
  using Error::Error;
};

// A local fit has fewer neighbors than unknowns.
class InsufficientNeighborsError : public Error {
 public:
  using Error::Error;
};

// A statistic was requested from too short a trace.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// An iterate moved outside the support of the field.
class LeftSupportError : public Error {
 public:
  using Error::Error;
};

}  // namespace manirec
