// Copyright 2026 The ifm-imaging Authors
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

#include "ifm/element.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace ifm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t state_size(std::size_t d) {
    return 2 * d * (d + 1);
}

/// Builds a permutation from a map on basis labels.
Permutation permutation_from(std::size_t d, const std::function<BasisLabel(const BasisLabel &)> &map) {
    PhotonState probe(d);
    Permutation p;
    p.target.resize(probe.size());
    for (std::size_t j = 0; j < probe.size(); j++) {
        auto b = map(probe.label(j));
        p.target[j] = probe.index(b.pol, b.oam, b.mode);
    }
    return p;
}

bool touches(Arms arms, std::size_t mode, std::size_t d) {
    switch (arms) {
        case Arms::all:
            return true;
        case Arms::pixel_paths:
            return mode < d;
        case Arms::reference:
            return mode == d;
    }
    return false;
}

ElementOp mode_pair_splitter(std::string label, std::size_t d, std::array<Amplitude, 4> m) {
    PhotonState probe(d);
    PairBlocks pb;
    for (auto pol : {Polarisation::H, Polarisation::V}) {
        for (std::size_t l = 0; l < d; l++) {
            pb.blocks.push_back({probe.index(pol, l, 0), probe.index(pol, l, d), m});
        }
    }
    return ElementOp(std::move(label), ElementKind::unitary, d, std::move(pb));
}

}  // namespace

ElementOp::ElementOp(std::string label, ElementKind kind, std::size_t d, ElementAction action)
    : label_(std::move(label)), kind_(kind), d_(d), action_(std::move(action)) {
    if (d == 0) {
        throw std::invalid_argument("ElementOp: dimension must be at least 1");
    }
    const std::size_t n = state_size(d);
    std::visit(Overloaded{
                   [&](const Permutation &p) {
                       if (p.target.size() != n) {
                           throw std::invalid_argument("ElementOp: permutation has wrong size");
                       }
                       std::vector<bool> hit(n, false);
                       for (auto t : p.target) {
                           if (t >= n || hit[t]) {
                               throw std::invalid_argument("ElementOp: target map is not a bijection");
                           }
                           hit[t] = true;
                       }
                   },
                   [&](const Diagonal &g) {
                       if (g.factor.size() != n) {
                           throw std::invalid_argument("ElementOp: diagonal has wrong size");
                       }
                   },
                   [&](const PairBlocks &pb) {
                       for (const auto &b : pb.blocks) {
                           if (b.first >= n || b.second >= n || b.first == b.second) {
                               throw std::invalid_argument("ElementOp: bad pair block indices");
                           }
                       }
                   },
                   [&](const Dense &m) {
                       if (m.matrix.rows() != static_cast<Eigen::Index>(n) ||
                           m.matrix.cols() != static_cast<Eigen::Index>(n)) {
                           throw std::invalid_argument("ElementOp: dense matrix has wrong shape");
                       }
                   },
               },
               action_);
}

std::string_view ElementOp::structure() const {
    return std::visit(Overloaded{
                          [](const Permutation &) { return std::string_view("permutation"); },
                          [](const Diagonal &) { return std::string_view("diagonal"); },
                          [](const PairBlocks &) { return std::string_view("block"); },
                          [](const Dense &) { return std::string_view("dense"); },
                      },
                      action_);
}

void ElementOp::apply_in_place(PhotonState &state) const {
    if (state.dimension() != d_) {
        throw std::invalid_argument("ElementOp '" + label_ + "': state dimension " +
                                    std::to_string(state.dimension()) + " != element dimension " +
                                    std::to_string(d_));
    }
    auto amps = state.amplitudes();
    std::visit(Overloaded{
                   [&](const Permutation &p) {
                       std::vector<Amplitude> in(amps.begin(), amps.end());
                       for (std::size_t j = 0; j < in.size(); j++) {
                           amps[p.target[j]] = in[j];
                       }
                   },
                   [&](const Diagonal &g) {
                       for (std::size_t j = 0; j < amps.size(); j++) {
                           amps[j] *= g.factor[j];
                       }
                   },
                   [&](const PairBlocks &pb) {
                       for (const auto &b : pb.blocks) {
                           Amplitude x = amps[b.first];
                           Amplitude y = amps[b.second];
                           amps[b.first] = b.m[0] * x + b.m[1] * y;
                           amps[b.second] = b.m[2] * x + b.m[3] * y;
                       }
                   },
                   [&](const Dense &m) {
                       Eigen::Map<Eigen::VectorXcd> v(amps.data(), static_cast<Eigen::Index>(amps.size()));
                       Eigen::VectorXcd out = m.matrix * v;
                       v = out;
                   },
               },
               action_);
}

PhotonState ElementOp::apply(const PhotonState &state) const {
    PhotonState out = state;
    apply_in_place(out);
    return out;
}

Eigen::MatrixXcd ElementOp::to_dense() const {
    const auto n = static_cast<Eigen::Index>(state_size(d_));
    return std::visit(Overloaded{
                          [&](const Permutation &p) -> Eigen::MatrixXcd {
                              Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
                              for (std::size_t j = 0; j < p.target.size(); j++) {
                                  m(static_cast<Eigen::Index>(p.target[j]), static_cast<Eigen::Index>(j)) = 1.0;
                              }
                              return m;
                          },
                          [&](const Diagonal &g) -> Eigen::MatrixXcd {
                              Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
                              for (std::size_t j = 0; j < g.factor.size(); j++) {
                                  auto k = static_cast<Eigen::Index>(j);
                                  m(k, k) = g.factor[j];
                              }
                              return m;
                          },
                          [&](const PairBlocks &pb) -> Eigen::MatrixXcd {
                              // Blocks may share indices, so compose them in order.
                              Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
                              for (const auto &b : pb.blocks) {
                                  Eigen::MatrixXcd step = Eigen::MatrixXcd::Identity(n, n);
                                  auto f = static_cast<Eigen::Index>(b.first);
                                  auto s = static_cast<Eigen::Index>(b.second);
                                  step(f, f) = b.m[0];
                                  step(f, s) = b.m[1];
                                  step(s, f) = b.m[2];
                                  step(s, s) = b.m[3];
                                  m = step * m;
                              }
                              return m;
                          },
                          [&](const Dense &m) -> Eigen::MatrixXcd { return m.matrix; },
                      },
                      action_);
}

ElementOp ElementOp::then(const ElementOp &next) const {
    if (next.d_ != d_) {
        throw std::invalid_argument("ElementOp::then: dimension mismatch");
    }
    auto kind = (kind_ == ElementKind::unitary && next.kind_ == ElementKind::unitary) ? ElementKind::unitary
                                                                                        : ElementKind::attenuator;
    return ElementOp(label_ + ";" + next.label_, kind, d_, Dense{next.to_dense() * to_dense()});
}

ElementOp beam_splitter(std::size_t d) {
    const double r = std::numbers::sqrt2 / 2;
    return mode_pair_splitter("BS", d, {r, r, r, -r});
}

ElementOp symmetric_beam_splitter(std::size_t d) {
    const double r = std::numbers::sqrt2 / 2;
    const Amplitude ir{0.0, r};
    return mode_pair_splitter("BS(sym)", d, {r, ir, ir, r});
}

ElementOp polarising_beam_splitter(std::size_t d) {
    auto p = permutation_from(d, [d](const BasisLabel &b) {
        if (b.pol == Polarisation::V && (b.mode == 0 || b.mode == d)) {
            return BasisLabel{b.pol, b.oam, b.mode == 0 ? d : 0};
        }
        return b;
    });
    return ElementOp("PBS", ElementKind::unitary, d, std::move(p));
}

ElementOp polarisation_rotator(std::size_t d, double theta) {
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("polarisation_rotator: angle must be finite");
    }
    PhotonState probe(d);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    PairBlocks pb;
    for (std::size_t l = 0; l < d; l++) {
        for (std::size_t m = 0; m <= d; m++) {
            pb.blocks.push_back(
                {probe.index(Polarisation::H, l, m), probe.index(Polarisation::V, l, m), {c, -s, s, c}});
        }
    }
    return ElementOp("R(" + std::to_string(theta) + ")", ElementKind::unitary, d, std::move(pb));
}

ElementOp oam_sorter(std::size_t d, Direction direction) {
    const bool fwd = direction == Direction::forward;
    auto p = permutation_from(d, [d, fwd](const BasisLabel &b) {
        if (b.mode == d) {
            return b;
        }
        std::size_t m = fwd ? (b.mode + b.oam) % d : (b.mode + d - b.oam) % d;
        return BasisLabel{b.pol, b.oam, m};
    });
    return ElementOp(fwd ? "S" : "S^-1", ElementKind::unitary, d, std::move(p));
}

ElementOp oam_converter(std::size_t d, Direction direction) {
    const bool fwd = direction == Direction::forward;
    auto p = permutation_from(d, [d, fwd](const BasisLabel &b) {
        if (b.mode == d) {
            return b;
        }
        std::size_t l = fwd ? (b.oam + d - b.mode) % d : (b.oam + b.mode) % d;
        return BasisLabel{b.pol, l, b.mode};
    });
    return ElementOp(fwd ? "c" : "c^-1", ElementKind::unitary, d, std::move(p));
}

ElementOp object_attenuator(std::span<const double> transmissions, ObjectPlacement placement) {
    validate_transmissions(transmissions);
    const std::size_t d = transmissions.size();
    if (d == 0) {
        throw std::invalid_argument("object_attenuator: empty transmission list");
    }
    PhotonState probe(d);
    Diagonal g;
    g.factor.resize(probe.size());
    for (std::size_t j = 0; j < probe.size(); j++) {
        auto b = probe.label(j);
        double factor = 1.0;
        if (placement == ObjectPlacement::pixel_paths && b.mode < d) {
            factor = std::sqrt(transmissions[b.mode]);
        } else if (placement == ObjectPlacement::oam_diagonal && b.mode == 0) {
            factor = std::sqrt(transmissions[b.oam]);
        }
        g.factor[j] = factor;
    }
    return ElementOp(placement == ObjectPlacement::pixel_paths ? "object" : "T_OAM", ElementKind::attenuator, d,
                     std::move(g));
}

ElementOp object_attenuator(const PixelPattern &pattern, ObjectPlacement placement) {
    return object_attenuator(pattern.transmissions(), placement);
}

ElementOp pockels_flip(std::size_t d) {
    auto p = permutation_from(d, [](const BasisLabel &b) {
        return BasisLabel{b.pol == Polarisation::H ? Polarisation::V : Polarisation::H, b.oam, b.mode};
    });
    return ElementOp("P", ElementKind::unitary, d, std::move(p));
}

ElementOp mirror_reflect(MirrorKind kind, std::size_t d, Arms arms) {
    auto p = permutation_from(d, [d, kind, arms](const BasisLabel &b) {
        if (kind == MirrorKind::retro || !touches(arms, b.mode, d)) {
            return b;
        }
        return BasisLabel{b.pol, (d - b.oam) % d, b.mode};
    });
    return ElementOp(kind == MirrorKind::retro ? "RR" : "M", ElementKind::unitary, d, std::move(p));
}

ElementOp inverse_permutation(const ElementOp &op) {
    const auto *p = std::get_if<Permutation>(&op.action());
    if (p == nullptr) {
        throw std::invalid_argument("inverse_permutation: element '" + op.label() + "' is not a permutation");
    }
    Permutation inv;
    inv.target.resize(p->target.size());
    for (std::size_t j = 0; j < p->target.size(); j++) {
        inv.target[p->target[j]] = j;
    }
    return ElementOp(op.label() + "^-1", op.kind(), op.dimension(), std::move(inv));
}

}  // namespace ifm
