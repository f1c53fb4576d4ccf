//! Air-freight arithmetic: volumetric weight and shipment cost.

use super::Kg;

/// Kilograms charged per cubic metre of volume.
pub const CBM_TO_KG: f64 = 167.0;

/// Volumetric weight of `liters` of volume, rounded half-up to whole kg.
pub fn volumetric_weight(liters: f64) -> Kg {
    // liters * 167 / 1000, rounded in thousandths to dodge binary fractions
    let milli_kg = (liters * CBM_TO_KG).round() as i64;
    (milli_kg + 500).div_euclid(1000)
}

/// Chargeable weight: the larger of real and volumetric weight.
pub fn taxable_weight(real: Kg, volumetric: Kg) -> Kg {
    real.max(volumetric)
}

/// `taxable * rate`, rounded to cents.
pub fn shipment_cost(taxable: Kg, rate: f64) -> f64 {
    (taxable as f64 * rate * 100.0).round() / 100.0
}
