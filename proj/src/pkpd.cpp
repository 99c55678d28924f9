// Copyright 2026-present the fracsim project
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

#include "fracsim/pkpd.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fracsim::pkpd {

void BisParams::validate() const {
  if (!(bis0 > 0.0) || !(ec50 > 0.0) || !(gamma > 0.0))
    throw std::invalid_argument("BisParams: bis0, ec50 and gamma must all be positive");
}

namespace {

void check_profile(const PatientProfile& p) {
  if (!(p.age_years > 0.0) || !(p.weight_kg > 0.0) || !(p.height_cm > 0.0))
    throw std::invalid_argument("PatientProfile: age, weight and height must be positive");
}

}  // namespace

double lean_body_mass(const PatientProfile& p) {
  check_profile(p);
  const double wh = p.weight_kg / p.height_cm;
  const double lbm = (p.sex == Sex::male) ? 1.1 * p.weight_kg - 128.0 * wh * wh
                                          : 1.07 * p.weight_kg - 148.0 * wh * wh;
  if (!(lbm > 0.0))
    throw std::invalid_argument("lean_body_mass: James formula out of range for this profile");
  return lbm;
}

std::vector<std::string> profile_warnings(const PatientProfile& p) {
  std::vector<std::string> out;
  auto warn = [&out](const std::string& s) { out.push_back(s); };
  if (p.age_years < 20.0 || p.age_years > 80.0) warn("age outside 20-80 years");
  if (p.weight_kg < 50.0 || p.weight_kg > 120.0) warn("weight outside 50-120 kg");
  if (p.height_cm < 150.0 || p.height_cm > 200.0) warn("height outside 150-200 cm");
  return out;
}

PkpdParams schnider_params(const PatientProfile& p) {
  check_profile(p);
  const double lbm = lean_body_mass(p);

  const double age = p.age_years;
  const double a21_den = 18.9 - 0.391 * (age - 53.0);
  if (!(a21_den > 0.0)) {
    std::ostringstream msg;
    msg << "schnider_params: a21 denominator 18.9 - 0.391*(age-53) is non-positive at age " << age;
    throw std::invalid_argument(msg.str());
  }

  PkpdParams q;
  q.lbm = lbm;
  q.a10 = 0.443 + 0.0107 * (p.weight_kg - 77.0) - 0.0159 * (lbm - 59.0) +
          0.0062 * (p.height_cm - 177.0);
  q.a12 = 0.302 - 0.0056 * (age - 53.0);
  q.a13 = 0.196;
  q.a21 = (1.29 - 0.024 * (age - 53.0)) / a21_den;
  q.a31 = 0.0035;
  q.ae0 = 0.456;
  q.v1 = 4.27;

  if (!(q.a10 > 0.0) || !(q.a12 > 0.0) || !(q.a21 > 0.0))
    throw std::invalid_argument("schnider_params: rate constants non-positive for this profile");
  return q;
}

SystemMatrices assemble_system(const PkpdParams& q) {
  SquareMatrix a(4);
  a(0, 0) = -(q.a10 + q.a12 + q.a13);
  a(0, 1) = q.a21;
  a(0, 2) = q.a31;
  a(1, 0) = q.a12;
  a(1, 1) = -q.a21;
  a(2, 0) = q.a13;
  a(2, 2) = -q.a31;
  a(3, 0) = q.ae0 / q.v1;
  a(3, 3) = -q.ae0;
  return {a, Vec{1.0, 0.0, 0.0, 0.0}};
}

EquilibriumPoint equilibrium(const PkpdParams& q, const BisParams& bis) {
  bis.validate();
  if (!(q.a21 > 0.0) || !(q.a31 > 0.0))
    throw std::invalid_argument("equilibrium: a21 and a31 must be positive");
  const double y1 = q.v1 * bis.ec50;
  return {Vec{y1, q.a12 * y1 / q.a21, q.a13 * y1 / q.a31, bis.ec50}, q.a10 * y1};
}

double bis(double y4, const BisParams& params) {
  params.validate();
  if (y4 < 0.0) throw std::domain_error("bis: effect-site concentration must be >= 0");
  const double num = std::pow(y4, params.gamma);
  const double den = num + std::pow(params.ec50, params.gamma);
  return params.bis0 * (1.0 - num / den);
}

std::vector<std::array<double, 2>> fast_state(const std::vector<Vec>& states) {
  std::vector<std::array<double, 2>> out;
  out.reserve(states.size());
  for (const Vec& y : states) out.push_back({y[0], y[3]});
  return out;
}

}  // namespace fracsim::pkpd
