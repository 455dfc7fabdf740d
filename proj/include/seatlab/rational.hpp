// Copyright 2026 The seatlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "seatlab/error.hpp"

namespace seatlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact probability. Always stored in lowest terms with a positive
/// denominator; serializes as "p/q" (integers too, e.g. "1/1", "0/1").
class ExactProb {
 public:
  ExactProb() = default;
  ExactProb(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw Error(Errc::DomainError, "zero denominator");
    value_ = BigRational(BigInt(num), BigInt(den));
  }
  explicit ExactProb(BigRational v) : value_(std::move(v)) {}

  static ExactProb from_string(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return ExactProb(BigRational(BigInt(text)));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw Error(Errc::DomainError, "zero denominator in " + text);
    return ExactProb(BigRational(BigInt(text.substr(0, slash)), den));
  }

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }
  const BigRational& value() const { return value_; }

  std::string str() const {
    return numerator().str() + "/" + denominator().str();
  }
  double to_double() const { return value_.convert_to<double>(); }

  ExactProb& operator+=(const ExactProb& o) { value_ += o.value_; return *this; }
  ExactProb& operator-=(const ExactProb& o) { value_ -= o.value_; return *this; }
  ExactProb& operator*=(const ExactProb& o) { value_ *= o.value_; return *this; }
  ExactProb& operator/=(const ExactProb& o) {
    if (o.value_ == 0) throw Error(Errc::DomainError, "division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend ExactProb operator+(ExactProb a, const ExactProb& b) { return a += b; }
  friend ExactProb operator-(ExactProb a, const ExactProb& b) { return a -= b; }
  friend ExactProb operator*(ExactProb a, const ExactProb& b) { return a *= b; }
  friend ExactProb operator/(ExactProb a, const ExactProb& b) { return a /= b; }

  friend bool operator==(const ExactProb& a, const ExactProb& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const ExactProb& a, const ExactProb& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExactProb& p) { return os << p.str(); }

 private:
  BigRational value_{0};
};

}  // namespace seatlab
