// SPDX-License-Identifier: Apache-2.0
//
// a2g-offload: descent-phase air-to-ground data offload planning
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "a2g/types.hpp"

namespace a2g {

/// Local antenna frame. `forward` is the boresight reference; `up` defines the
/// local horizontal plane (the plane orthogonal to `up`). Azimuth is measured in
/// that plane from the projection of `forward`, elevation above it.
struct Orientation {
  Vec3 forward{1.0, 0.0, 0.0};
  Vec3 up{0.0, 0.0, 1.0};

  /// Horizontal boresight at `azimuth_deg` (counter-clockwise from +x), world z up.
  static Orientation horizontal(double azimuth_deg);
  /// Same frame rotated about `up` by `angle_deg`.
  Orientation rotated(double angle_deg) const;
};

struct AngularDirection {
  double azimuth_deg = 0.0;    // (-180, 180]
  double elevation_deg = 0.0;  // [-90, 90]
};

/// Angles of `direction` (any non-zero vector) in the frame `frame`.
AngularDirection angles_in_frame(const Vec3& direction, const Orientation& frame);

/// Angles of the observer->target ray relative to a boresight with world z up.
/// Throws InputError on coincident points.
AngularDirection relative_angles(const Vec3& observer, const Vec3& boresight, const Vec3& target);

/// Same, with an explicit local frame (needed for non-horizontal boresights).
AngularDirection relative_angles(const Vec3& observer, const Orientation& frame, const Vec3& target);

}  // namespace a2g
