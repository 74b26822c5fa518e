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

#include "rabg/channels.h"

#include <cmath>

#include "rabg/errors.h"

namespace rabg {

namespace {

constexpr double kWeightTol = 1e-12;

}  // namespace

KrausChannel::KrausChannel(std::size_t in_dim, std::size_t out_dim, std::vector<ComplexMatrix> kraus_ops, std::string name)
    : in_dim_(in_dim), out_dim_(out_dim), ops_(std::move(kraus_ops)), name_(std::move(name)) {
    if (ops_.empty()) {
        throw Error(ErrorCode::DimensionMismatch, "channel needs at least one Kraus operator");
    }
    // Operators are stored as square matrices, so only endomorphic channels
    // are representable.
    if (in_dim_ != out_dim_) {
        throw Error(ErrorCode::DimensionMismatch, "only channels with in_dim == out_dim are supported");
    }
    for (const auto &k : ops_) {
        if (k.dim() != in_dim_) {
            throw Error(ErrorCode::DimensionMismatch, "Kraus operator dimension does not match channel");
        }
    }
    double defect = completeness_defect();
    if (defect > CPTP_TOL) {
        throw Error(ErrorCode::NotTracePreserving, "completeness defect " + std::to_string(defect));
    }
}

double KrausChannel::completeness_defect() const {
    ComplexMatrix acc(in_dim_);
    for (const auto &k : ops_) {
        acc = acc + dagger(k) * k;
    }
    return max_abs_distance(acc, ComplexMatrix::identity(in_dim_));
}

KrausChannel pin_map(int target) {
    if (target != 0 && target != 1) {
        throw Error(ErrorCode::OutOfRange, "pin map target must be 0 or 1");
    }
    std::vector<ComplexMatrix> ops;
    for (int source = 0; source < 2; source++) {
        ComplexMatrix k(2);
        k(target, source) = 1;
        ops.push_back(std::move(k));
    }
    return KrausChannel(2, 2, std::move(ops), target == 0 ? "E" : "F");
}

KrausChannel identity_channel(std::size_t dim) {
    return KrausChannel(dim, dim, {ComplexMatrix::identity(dim)}, "id");
}

ComplexMatrix channel_action(const KrausChannel &ch, const ComplexMatrix &x) {
    if (x.dim() != ch.in_dim()) {
        throw Error(ErrorCode::DimensionMismatch, "channel input dimension mismatch");
    }
    ComplexMatrix acc(ch.out_dim());
    for (const auto &k : ch.kraus_ops()) {
        if (k.is_zero()) {
            continue;
        }
        acc = acc + k * x * dagger(k);
    }
    return acc;
}

DensityMatrix apply(const KrausChannel &ch, const DensityMatrix &rho) {
    if (ch.in_dim() != rho.layout().dim()) {
        throw Error(ErrorCode::DimensionMismatch, "channel does not act on register " + rho.layout().to_string());
    }
    return DensityMatrix(rho.layout(), channel_action(ch, rho.matrix()));
}

DensityMatrix apply(const KrausChannel &ch, const DensityMatrix &rho, Subsystem on) {
    if (ch.in_dim() != 2) {
        throw Error(ErrorCode::DimensionMismatch, "single-label application needs a qubit channel");
    }
    if (!rho.layout().contains(on)) {
        throw Error(
            ErrorCode::BadSubsystem,
            std::string("no label ") + subsystem_name(on) + " in " + rho.layout().to_string());
    }
    RegisterLayout local{on};
    std::vector<ComplexMatrix> lifted;
    for (const auto &k : ch.kraus_ops()) {
        lifted.push_back(embed_operator(k, local, rho.layout()));
    }
    KrausChannel extended(rho.layout().dim(), rho.layout().dim(), std::move(lifted), ch.name());
    return apply(extended, rho);
}

KrausChannel compose(const KrausChannel &outer, const KrausChannel &inner) {
    if (inner.out_dim() != outer.in_dim()) {
        throw Error(ErrorCode::DimensionMismatch, "compose: inner output does not feed outer input");
    }
    std::vector<ComplexMatrix> ops;
    for (const auto &o : outer.kraus_ops()) {
        for (const auto &i : inner.kraus_ops()) {
            ops.push_back(o * i);
        }
    }
    return KrausChannel(inner.in_dim(), outer.out_dim(), std::move(ops), outer.name() + "o" + inner.name());
}

KrausChannel mixture(std::span<const double> weights, std::span<const KrausChannel> channels) {
    if (weights.size() != channels.size() || channels.empty()) {
        throw Error(ErrorCode::BadWeights, "mixture needs one weight per channel");
    }
    double total = 0;
    for (double w : weights) {
        if (!(w >= 0)) {
            throw Error(ErrorCode::BadWeights, "mixture weights must be nonnegative");
        }
        total += w;
    }
    if (std::abs(total - 1) > kWeightTol) {
        throw Error(ErrorCode::BadWeights, "mixture weights sum to " + std::to_string(total));
    }
    std::vector<ComplexMatrix> ops;
    std::string name;
    for (std::size_t j = 0; j < channels.size(); j++) {
        if (channels[j].in_dim() != channels.front().in_dim()) {
            throw Error(ErrorCode::DimensionMismatch, "mixture members have different dimensions");
        }
        double amp = std::sqrt(weights[j]);
        for (const auto &k : channels[j].kraus_ops()) {
            ops.push_back(amp * k);
        }
        name += (j ? "+" : "") + channels[j].name();
    }
    return KrausChannel(channels.front().in_dim(), channels.front().out_dim(), std::move(ops), name);
}

ChoiMatrix choi(const KrausChannel &ch) {
    std::size_t din = ch.in_dim();
    std::size_t dout = ch.out_dim();
    ComplexMatrix out(din * dout);
    for (std::size_t i = 0; i < din; i++) {
        for (std::size_t j = 0; j < din; j++) {
            ComplexMatrix unit(din);
            unit(i, j) = 1;
            ComplexMatrix image = channel_action(ch, unit);
            for (std::size_t r = 0; r < dout; r++) {
                for (std::size_t c = 0; c < dout; c++) {
                    out(i * dout + r, j * dout + c) = image(r, c);
                }
            }
        }
    }
    return ChoiMatrix{std::move(out), din, dout};
}

double choi_min_pt_eigenvalue(const ChoiMatrix &c) {
    std::size_t dims[] = {c.in_dim, c.out_dim};
    return hermitian_eigenvalues(partial_transpose(c.matrix, dims, 0)).min();
}

PptFlag choi_ppt_flag(const ChoiMatrix &c) {
    return choi_min_pt_eigenvalue(c) >= PSD_CLAMP ? PptFlag::PPT : PptFlag::NPT;
}

}  // namespace rabg
