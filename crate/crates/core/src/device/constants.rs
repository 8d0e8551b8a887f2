// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! CODATA 2018 constants, SI units.

pub const HBAR: f64 = 1.054_571_817e-34;
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

/// Mass of a singly ionised ⁹Be atom.
pub const BE9_ION_MASS: f64 = 9.012_183_1 * ATOMIC_MASS_UNIT - ELECTRON_MASS;

pub const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
