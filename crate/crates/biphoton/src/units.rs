//! Unit conversions. The crate works in nanoseconds and rad/ns internally;
//! frequencies at the API boundary are usually quoted in MHz.

use std::f64::consts::TAU;

/// Angular frequency (rad/ns) of a linear frequency given in MHz.
///
/// 1 MHz = 1e-3 cycles/ns, so 50 MHz -> 2*pi*0.05 rad/ns.
pub fn rad_per_ns_from_mhz(mhz: f64) -> f64 {
    TAU * mhz * 1e-3
}

/// Linear frequency in MHz of an angular frequency in rad/ns.
pub fn mhz_from_rad_per_ns(omega: f64) -> f64 {
    omega / TAU * 1e3
}

/// Linear frequency in cycles/ns (GHz) of an angular frequency in rad/ns.
pub fn ghz_from_rad_per_ns(omega: f64) -> f64 {
    omega / TAU
}
