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

#include "rabg/closed_form.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "rabg/errors.h"

namespace rabg {

namespace {

void require_unit_interval(double v, const char *what) {
    if (!(v >= 0 && v <= 1)) {
        throw Error(ErrorCode::OutOfRange, std::string(what) + " must lie in [0, 1], got " + std::to_string(v));
    }
}

void require_round(std::size_t k, std::size_t max_k) {
    if (k < 1 || k > max_k) {
        throw Error(ErrorCode::BadRound, "round " + std::to_string(k) + " outside [1, " + std::to_string(max_k) + "]");
    }
}

ComplexMatrix basis_projector(const RegisterLayout &layout, std::size_t index) {
    ComplexMatrix m(layout.dim());
    m(index, index) = 1;
    return m;
}

ComplexMatrix pure_projector(const PureState &psi) {
    return ComplexMatrix::projector(psi.amplitudes());
}

}  // namespace

Schedule::Schedule(double alpha, std::vector<double> lambdas) : alpha_(alpha), lambdas_(std::move(lambdas)) {
    require_unit_interval(alpha_, "alpha");
    for (double l : lambdas_) {
        require_unit_interval(l, "lambda");
    }
}

double Schedule::lambda(std::size_t k) const {
    require_round(k, lambdas_.size());
    return lambdas_[k - 1];
}

Schedule Schedule::with_appended(double lambda) const {
    std::vector<double> next = lambdas_;
    next.push_back(lambda);
    return Schedule(alpha_, std::move(next));
}

ClosedFormContext::ClosedFormContext(std::span<const double> lambdas) {
    r_.reserve(lambdas.size() + 1);
    s_.reserve(lambdas.size() + 1);
    r_.push_back(1);
    s_.push_back(1);
    for (double l : lambdas) {
        require_unit_interval(l, "lambda");
        double c = std::sqrt(1 - l * l);
        r_.push_back(r_.back() * c);
        s_.push_back(s_.back() * (1 + c) / 2);
    }
}

double ClosedFormContext::r(std::size_t k) const {
    if (k >= r_.size()) {
        throw Error(ErrorCode::BadRound, "R(" + std::to_string(k) + ") beyond schedule");
    }
    return r_[k];
}

double ClosedFormContext::s(std::size_t k) const {
    if (k >= s_.size()) {
        throw Error(ErrorCode::BadRound, "S(" + std::to_string(k) + ") beyond schedule");
    }
    return s_[k];
}

DensityMatrix rho_cab_k(const Schedule &sched, std::size_t k) {
    require_round(k, sched.rounds() + 1);
    ClosedFormContext ctx(sched.lambdas());
    double r = ctx.r(k - 1);
    double s = ctx.s(k - 1);
    double alpha = sched.alpha();
    RegisterLayout cab = RegisterLayout::cab();

    double w_plus = (1 + r) / 4 + s / 2;
    double w_minus = (1 + r) / 4 - s / 2;
    double w_leak = (1 - r) / 4;
    ComplexMatrix m = w_plus * pure_projector(ghz_alpha(alpha, Sign::Plus)) +
                      w_minus * pure_projector(ghz_alpha(alpha, Sign::Minus)) +
                      (w_leak * 2 * (1 - alpha)) * basis_projector(cab, 0b010) +
                      (w_leak * 2 * alpha) * basis_projector(cab, 0b101);
    return DensityMatrix(cab, std::move(m));
}

DensityMatrix rho_ab_k_post(const Schedule &sched, std::size_t k, Outcome outcome) {
    require_round(k, sched.rounds());
    ClosedFormContext ctx(sched.lambdas());
    double r = ctx.r(k - 1);
    double s = ctx.s(k - 1);
    double lambda = sched.lambda(k);
    double alpha = sched.alpha();

    double w_plus = (1 + r) / 4 + s / 2;
    double w_minus = (1 + r) / 4 - s / 2;
    double same = outcome == Outcome::Plus ? (1 + lambda) / 2 : (1 - lambda) / 2;
    double flip = 1 - same;

    double phi_plus = w_plus * same + w_minus * flip;
    double phi_minus = w_plus * flip + w_minus * same;
    double psi_each = (1 - r) / 4;

    ComplexMatrix m = phi_plus * pure_projector(bell_alpha(BellFamily::Phi, Sign::Plus, alpha)) +
                      phi_minus * pure_projector(bell_alpha(BellFamily::Phi, Sign::Minus, alpha)) +
                      psi_each * pure_projector(bell_alpha(BellFamily::Psi, Sign::Plus, alpha)) +
                      psi_each * pure_projector(bell_alpha(BellFamily::Psi, Sign::Minus, alpha));
    return DensityMatrix(RegisterLayout::ab(), std::move(m));
}

CorrelationMatrix t_matrix_k(const Schedule &sched, std::size_t k, Outcome outcome) {
    require_round(k, sched.rounds());
    ClosedFormContext ctx(sched.lambdas());
    double alpha = sched.alpha();
    double x = 2 * std::sqrt(alpha * (1 - alpha)) * ctx.s(k - 1) * sched.lambda(k);
    if (outcome == Outcome::Minus) {
        x = -x;
    }
    return CorrelationMatrix::diagonal(x, -x, ctx.r(k - 1));
}

double bell_from_products(double alpha, double r_prev, double s_prev, double lambda_k) {
    double x = 4 * alpha * (1 - alpha) * s_prev * s_prev * lambda_k * lambda_k;
    return 2 * std::sqrt(x + std::max(x, r_prev * r_prev));
}

double bell_k(const Schedule &sched, std::size_t k) {
    require_round(k, sched.rounds());
    ClosedFormContext ctx(sched.lambdas());
    return bell_from_products(sched.alpha(), ctx.r(k - 1), ctx.s(k - 1), sched.lambda(k));
}

void GeometricScheduleSpec::validate() const {
    if (k < 1) {
        throw Error(ErrorCode::OutOfRange, "geometric schedule needs k >= 1");
    }
    if (!(q > 1) || !std::isfinite(q)) {
        throw Error(ErrorCode::OutOfRange, "geometric ratio q must exceed 1, got " + std::to_string(q));
    }
}

std::vector<double> GeometricScheduleSpec::lambdas() const {
    validate();
    std::vector<double> out(k);
    for (std::size_t m = 1; m <= k; m++) {
        out[m - 1] = std::pow(q, -static_cast<double>(k - m));
    }
    return out;
}

double geometric_bell(const GeometricScheduleSpec &spec, double alpha, std::size_t m) {
    spec.validate();
    require_round(m, spec.k);
    return bell_k(Schedule(alpha, spec.lambdas()), m);
}

double guaranteed_ratio(double alpha) {
    if (!(alpha > 0 && alpha < 1)) {
        throw Error(ErrorCode::OutOfRange, "guaranteed ratio needs alpha in (0, 1)");
    }
    return std::sqrt(2 / (alpha * (1 - alpha)));
}

double near_maximal_expansion(double q) {
    return 2 * std::sqrt(2.0) - 1 / (std::sqrt(2.0) * q * q);
}

DensityMatrix wstate_rho_cab_k(std::span<const double> lambdas, std::size_t k) {
    require_round(k, lambdas.size() + 1);
    double r = ClosedFormContext(lambdas).r(k - 1);
    RegisterLayout cab = RegisterLayout::cab();
    ComplexMatrix m = (1.0 / 3) * (basis_projector(cab, 0b000) + basis_projector(cab, 0b101)) +
                      ((1 + r) / 6) * basis_projector(cab, 0b010) + ((1 - r) / 6) * basis_projector(cab, 0b111);
    return DensityMatrix(cab, std::move(m));
}

DensityMatrix wstate_rho_ab_k(std::span<const double> lambdas, std::size_t k) {
    require_round(k, lambdas.size() + 1);
    double r = ClosedFormContext(lambdas).r(k - 1);
    RegisterLayout ab = RegisterLayout::ab();
    ComplexMatrix m = (1.0 / 3) * (basis_projector(ab, 0b00) + basis_projector(ab, 0b01)) +
                      ((1 + r) / 6) * basis_projector(ab, 0b10) + ((1 - r) / 6) * basis_projector(ab, 0b11);
    return DensityMatrix(ab, std::move(m));
}

double wstate_bell_k(std::span<const double> lambdas, std::size_t k) {
    require_round(k, lambdas.size() + 1);
    return 2 * ClosedFormContext(lambdas).r(k - 1) / 3;
}

}  // namespace rabg
