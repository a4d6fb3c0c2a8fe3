// Copyright 2026 The qmpa authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QMPA_MONOTONE_HPP_
#define QMPA_MONOTONE_HPP_

#include <functional>
#include <string>

#include "qmpa/types.hpp"

namespace qmpa {

// An operator monotone function k on (0, inf), used to build the k-scalar
// products that pair the two pictures of the evolution. Built-in kinds are
// known to be operator monotone; a custom scalar function is accepted only
// with an explicit attestation that it is operator monotone (the library
// cannot verify that property, it only spot-checks positivity of the values
// it consumes).
class MonotoneFunction {
 public:
  enum class Kind { kPower, kLog1p, kCustom };

  // k(y) = y^alpha with alpha in (0, 1].
  static MonotoneFunction power(double alpha);
  // k(y) = log(1 + y).
  static MonotoneFunction log1p();
  // User-supplied scalar function; `attested_operator_monotone` must be true.
  static MonotoneFunction custom(std::function<double(double)> f,
                                 bool attested_operator_monotone,
                                 const std::string& name = "custom");

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }  // meaningful for kPower only
  const std::string& name() const { return name_; }

  // Evaluate k at y > 0.
  double operator()(double y) const;

 private:
  MonotoneFunction(Kind kind, double alpha, std::function<double(double)> f,
                   std::string name)
      : kind_(kind), alpha_(alpha), f_(std::move(f)), name_(std::move(name)) {}

  Kind kind_;
  double alpha_ = 0.0;
  std::function<double(double)> f_;
  std::string name_;
};

// Apply k(Delta_{sigma1,sigma2}) to X, where Delta_{Q,P} = L_Q R_{P^{-1}} is
// the relative modular operator of two strictly positive operators. The
// action is evaluated through the spectral decompositions of sigma1 and
// sigma2 alone:
//
//   k(Delta)(X) = sum_{ij} k(p_i / q_j) <u_i|X|v_j> |u_i><v_j|
//
// with sigma1 = sum_i p_i |u_i><u_i| and sigma2 = sum_j q_j |v_j><v_j|.
// No N^2 x N^2 matrix function is ever formed. Every consumed value
// k(p_i/q_j) is checked to be positive.
Operator k_of_delta_apply(const MonotoneFunction& k, const Operator& sigma1,
                          const Operator& sigma2, const Operator& X,
                          const Tolerances& tol = {});

}  // namespace qmpa

#endif  // QMPA_MONOTONE_HPP_
