// Copyright 2026 The benchdyn Authors. All rights reserved.
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

#include "benchdyn/rational.h"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace benchdyn {

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

double to_double(const Rational& q) {
  // Correctly rounded when both parts are exact doubles.
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (mpz_sizeinbase(num.get_mpz_t(), 2) <= 53 &&
      mpz_sizeinbase(den.get_mpz_t(), 2) <= 53) {
    return num.get_d() / den.get_d();
  }
  return q.get_d();
}

namespace {

// Walks the continued-fraction convergents of exact(x); `accept` decides
// when to stop.
template <typename Accept>
std::optional<Rational> walk_convergents(double x, std::int64_t max_den,
                                         Accept accept) {
  const Rational exact = exact_rational(x);
  mpz_class num = exact.get_num();
  mpz_class den = exact.get_den();
  mpz_class h_prev = 1, h_prev2 = 0;
  mpz_class k_prev = 0, k_prev2 = 1;
  while (den != 0) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class h = a * h_prev + h_prev2;
    mpz_class k = a * k_prev + k_prev2;
    if (k > max_den) return std::nullopt;
    Rational candidate(h, k);
    candidate.canonicalize();
    if (accept(candidate)) return candidate;
    mpz_class rem = num - a * den;
    num = den;
    den = rem;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Rational> recover_rational(double x, std::int64_t max_den) {
  return walk_convergents(x, max_den,
                          [x](const Rational& q) { return to_double(q) == x; });
}

std::optional<Rational> approximate_rational(double x, double tol,
                                             std::int64_t max_den) {
  const Rational exact = exact_rational(x);
  const Rational bound = exact_rational(tol);
  return walk_convergents(x, max_den, [&](const Rational& q) {
    Rational diff = q - exact;
    return abs(diff) <= bound;
  });
}

RationalMasses rationalize_masses(std::span<const double> masses, double epsilon) {
  if (masses.empty()) throw std::invalid_argument("empty mass vector");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be nonnegative");
  std::vector<Rational> approx;
  approx.reserve(masses.size());
  for (double m : masses) {
    if (!(m >= 0.0)) throw std::invalid_argument("negative mass");
    std::optional<Rational> q =
        epsilon == 0.0
            ? recover_rational(m)
            : approximate_rational(m, epsilon / (2.0 * static_cast<double>(masses.size())));
    if (!q) {
      throw std::invalid_argument(
          epsilon == 0.0
              ? "mass is not an exact fraction with denominator <= 10^6; use epsilon > 0"
              : "mass cannot be approximated within epsilon under the denominator cap");
    }
    approx.push_back(*q);
  }

  mpz_class lcm = 1;
  for (const auto& q : approx) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    if (lcm > kMaxDenominator) {
      throw std::invalid_argument("common denominator exceeds 10^6");
    }
  }
  const std::int64_t den = lcm.get_si();
  RationalMasses out;
  out.denominator = den;
  std::int64_t total = 0;
  std::size_t largest = 0;
  for (std::size_t s = 0; s < approx.size(); ++s) {
    mpz_class count = approx[s].get_num() * (lcm / approx[s].get_den());
    out.counts.push_back(count.get_si());
    total += out.counts.back();
    if (masses[s] > masses[largest]) largest = s;
  }
  if (total != den) {
    if (epsilon == 0.0) {
      throw std::invalid_argument("exact masses do not sum to 1");
    }
    out.counts[largest] += den - total;
    if (out.counts[largest] < 0) {
      throw std::invalid_argument("cannot rationalize masses within epsilon");
    }
  }
  double err = 0.0;
  for (std::size_t s = 0; s < masses.size(); ++s) {
    err += std::abs(static_cast<double>(out.counts[s]) / static_cast<double>(den) -
                    masses[s]);
  }
  out.l1_error = err;
  if (epsilon > 0.0 && err > epsilon * (1.0 + 1e-9)) {
    throw std::invalid_argument("cannot rationalize masses within epsilon");
  }
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace benchdyn
