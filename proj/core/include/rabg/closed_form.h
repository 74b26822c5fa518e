// Copyright 2026 The RABG Authors
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

#ifndef RABG_CLOSED_FORM_H
#define RABG_CLOSED_FORM_H

// Analytic round-k states and Bell values of the sequential protocol. Nothing
// in here evolves a state: every quantity is written down directly from the
// running products
//   R(k) = prod_{i<=k} sqrt(1 - lambda_i^2)
//   S(k) = prod_{i<=k} (1 + sqrt(1 - lambda_i^2)) / 2
// so these functions serve as the independent reference for the simulator.

#include <cstddef>
#include <span>
#include <vector>

#include "rabg/bell.h"
#include "rabg/measurement.h"
#include "rabg/states.h"

namespace rabg {

/// Entanglement parameter alpha of the initial GHZ state plus the sharpness
/// of each round's control measurement, lambda_1 first.
class Schedule {
   public:
    /// Throws OutOfRange if alpha or any lambda lies outside [0, 1]. An empty
    /// lambda list is allowed and describes a protocol before its first
    /// measurement.
    Schedule(double alpha, std::vector<double> lambdas);

    double alpha() const noexcept {
        return alpha_;
    }
    const std::vector<double> &lambdas() const noexcept {
        return lambdas_;
    }
    std::size_t rounds() const noexcept {
        return lambdas_.size();
    }
    /// lambda_k, 1-based.
    double lambda(std::size_t k) const;
    Schedule with_appended(double lambda) const;

   private:
    double alpha_;
    std::vector<double> lambdas_;
};

/// R(0..n) and S(0..n) for a list of n sharpness values.
class ClosedFormContext {
   public:
    explicit ClosedFormContext(std::span<const double> lambdas);

    double r(std::size_t k) const;
    double s(std::size_t k) const;
    std::size_t rounds() const noexcept {
        return r_.size() - 1;
    }

   private:
    std::vector<double> r_;
    std::vector<double> s_;
};

/// Post-switch state of round k (1 <= k <= rounds + 1); depends on
/// lambda_1..lambda_{k-1} only. Throws BadRound.
DensityMatrix rho_cab_k(const Schedule &sched, std::size_t k);

/// Post-measurement (A, B) state of round k for the given outcome,
/// 1 <= k <= rounds. Bell-diagonal in the generalized Bell basis.
DensityMatrix rho_ab_k_post(const Schedule &sched, std::size_t k, Outcome outcome);

/// diag(+-2 sqrt(a(1-a)) S(k-1) lambda_k, -+2 sqrt(a(1-a)) S(k-1) lambda_k, R(k-1)).
CorrelationMatrix t_matrix_k(const Schedule &sched, std::size_t k, Outcome outcome);

/// Bell value of round k from the running products of the previous rounds:
/// with x = 4 alpha (1 - alpha) S^2 lambda_k^2 the top two eigenvalues of
/// T^T T = diag(x, x, R^2) sum to x + max(x, R^2).
double bell_from_products(double alpha, double r_prev, double s_prev, double lambda_k);

/// Outcome-independent Bell value of round k, 1 <= k <= rounds.
double bell_k(const Schedule &sched, std::size_t k);

/// Geometric sharpness ladder ending in a projective round:
/// lambda_m = q^{-(k - m)} for m = 1..k.
struct GeometricScheduleSpec {
    std::size_t k;
    double q;

    /// Throws OutOfRange unless k >= 1 and q > 1.
    void validate() const;
    std::vector<double> lambdas() const;
};

/// Round-m Bell value of the geometric ladder, 1 <= m <= k.
double geometric_bell(const GeometricScheduleSpec &spec, double alpha, std::size_t m);

/// Sufficient ladder ratio for a violation in every round:
/// sqrt(2 / (alpha (1 - alpha))).
double guaranteed_ratio(double alpha);

/// Large-q expansion 2 sqrt(2) - 1 / (sqrt(2) q^2) of the final-round value
/// at alpha = 1/2. Test helper; never used as a primary value.
double near_maximal_expansion(double q);

/// W-state run: post-switch state of round k (1 <= k <= lambdas + 1),
/// 1/3 (|000><000| + |101><101|) + (1 + R)/6 |010><010| + (1 - R)/6 |111><111|
/// with R = R(k-1).
DensityMatrix wstate_rho_cab_k(std::span<const double> lambdas, std::size_t k);

/// W-state run: (A, B) state after the round-k measurement (either outcome),
/// 1/3 (|00><00| + |01><01|) + (1 + R)/6 |10><10| + (1 - R)/6 |11><11|.
DensityMatrix wstate_rho_ab_k(std::span<const double> lambdas, std::size_t k);

/// Bell value of that state: T = diag(0, 0, -R/3), so 2 R(k-1) / 3.
double wstate_bell_k(std::span<const double> lambdas, std::size_t k);

}  // namespace rabg

#endif
