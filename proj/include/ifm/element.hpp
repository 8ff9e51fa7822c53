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

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "ifm/photon_state.hpp"
#include "ifm/pixel_pattern.hpp"

namespace ifm {

enum class ElementKind { unitary, attenuator };

/// out[target[j]] = in[j].
struct Permutation {
    std::vector<std::size_t> target;
};

struct Diagonal {
    std::vector<Amplitude> factor;
};

/// A 2x2 matrix acting on the pair of basis indices (first, second), stored
/// row-major: [m[0] m[1]; m[2] m[3]]. Indices not covered by any block are
/// left untouched.
struct PairBlock {
    std::size_t first;
    std::size_t second;
    std::array<Amplitude, 4> m;
};

struct PairBlocks {
    std::vector<PairBlock> blocks;
};

struct Dense {
    Eigen::MatrixXcd matrix;
};

using ElementAction = std::variant<Permutation, Diagonal, PairBlocks, Dense>;

/// A linear optical element acting on PhotonState of a fixed dimension d.
class ElementOp {
   public:
    ElementOp(std::string label, ElementKind kind, std::size_t d, ElementAction action);

    const std::string &label() const { return label_; }
    ElementKind kind() const { return kind_; }
    std::size_t dimension() const { return d_; }
    const ElementAction &action() const { return action_; }

    /// "permutation", "diagonal", "block" or "dense".
    std::string_view structure() const;

    PhotonState apply(const PhotonState &state) const;
    PhotonState operator()(const PhotonState &state) const { return apply(state); }
    void apply_in_place(PhotonState &state) const;

    /// Matrix on the full 2*d*(d+1) dimensional basis.
    Eigen::MatrixXcd to_dense() const;

    /// `next` after `*this`, as a single dense element.
    ElementOp then(const ElementOp &next) const;

   private:
    std::string label_;
    ElementKind kind_;
    std::size_t d_;
    ElementAction action_;
};

enum class Direction { forward, inverse };

/// Which spatial modes an element touches.
enum class Arms { all, pixel_paths, reference };

enum class MirrorKind { retro, plain };

/// Where the object sits: on the encoder's pixel paths (path l attenuated by
/// sqrt(T_l) regardless of OAM), or collapsed onto the object arm as the
/// OAM-diagonal transmission matrix of the whole encoder.
enum class ObjectPlacement { pixel_paths, oam_diagonal };

/// 50/50 splitter between modes 0 and d with the Hadamard convention
/// |0> -> (|0> + |d>)/sqrt2, |d> -> (|0> - |d>)/sqrt2.
ElementOp beam_splitter(std::size_t d);

/// Same mode pair, symmetric convention (1/sqrt2)[[1, i], [i, 1]].
ElementOp symmetric_beam_splitter(std::size_t d);

/// Exchanges modes 0 and d for the V component; H is left in place.
ElementOp polarising_beam_splitter(std::size_t d);

/// |H> -> cos t |H> + sin t |V>, |V> -> -sin t |H> + cos t |V> on every (l, m).
ElementOp polarisation_rotator(std::size_t d, double theta);

/// Controlled shift on the pixel paths: |l>|m> -> |l>|m + l mod d> for m < d.
/// The reference arm is untouched.
ElementOp oam_sorter(std::size_t d, Direction direction = Direction::forward);

/// Controlled shift of the OAM by the path: |l>|m> -> |l - m mod d>|m> for
/// m < d, which maps |l>|l_m> to |0>|l_m>.
ElementOp oam_converter(std::size_t d, Direction direction = Direction::forward);

ElementOp object_attenuator(const PixelPattern &pattern, ObjectPlacement placement);
ElementOp object_attenuator(std::span<const double> transmissions, ObjectPlacement placement);

/// H <-> V on every mode.
ElementOp pockels_flip(std::size_t d);

/// Retro-reflection keeps |l>; a plain mirror maps |l> -> |-l mod d>.
ElementOp mirror_reflect(MirrorKind kind, std::size_t d, Arms arms = Arms::all);

/// Permutation elements only; throws std::logic_error otherwise.
ElementOp inverse_permutation(const ElementOp &op);

}  // namespace ifm
