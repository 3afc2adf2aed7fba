// SPDX-License-Identifier: Apache-2.0
//
// irsfso — channel impulse response and equalization simulator for
// IRS-assisted free-space optical links.

#pragma once

namespace irsfso {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Speed of light in air (m/s). All link budgets in this library use the
// rounded value rather than the vacuum constant; delay figures such as the
// 1.4 us LOS delay of a 420 m link depend on it.
inline constexpr double kSpeedOfLightAir = 3.0e8;

// Free-space wave impedance (Ohm).
inline constexpr double kFreeSpaceImpedance = 377.0;

} // namespace irsfso
