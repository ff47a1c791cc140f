//! Cosmological regime labels from `(w, cs2)`.

use std::fmt;

/// Half-width of every `w` band.
pub const W_BAND: f64 = 0.05;
/// Upper sound-speed bound for the pressureless labels.
pub const CS2_COLD: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeLabel {
    RadiationLike,
    DarkMatterLike,
    DarkEnergyMix,
    CosmologicalConstant,
    Unclassified,
}

impl RegimeLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegimeLabel::RadiationLike => "RadiationLike",
            RegimeLabel::DarkMatterLike => "DarkMatterLike",
            RegimeLabel::DarkEnergyMix => "DarkEnergyMix",
            RegimeLabel::CosmologicalConstant => "CosmologicalConstant",
            RegimeLabel::Unclassified => "Unclassified",
        }
    }
}

impl fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime {
    pub label: RegimeLabel,
    pub w: f64,
    pub cs2: f64,
}

/// Threshold table, checked in order:
///
/// | label                | condition                              |
/// |----------------------|----------------------------------------|
/// | CosmologicalConstant | `|w + 1| <= 0.05` and `cs2 <= 0.01`    |
/// | DarkMatterLike       | `|w| <= 0.05` and `cs2 <= 0.01`        |
/// | RadiationLike        | `|w - 1/3| <= 0.05`                    |
/// | DarkEnergyMix        | `-0.95 < w < -0.05`                    |
/// | Unclassified         | anything else, including NaN `w`       |
pub fn classify_regime(w: f64, cs2: f64) -> Regime {
    let cold = cs2 <= CS2_COLD;
    let label = if (w + 1.0).abs() <= W_BAND && cold {
        RegimeLabel::CosmologicalConstant
    } else if w.abs() <= W_BAND && cold {
        RegimeLabel::DarkMatterLike
    } else if (w - 1.0 / 3.0).abs() <= W_BAND {
        RegimeLabel::RadiationLike
    } else if -1.0 + W_BAND < w && w < -W_BAND {
        RegimeLabel::DarkEnergyMix
    } else {
        RegimeLabel::Unclassified
    };
    Regime { label, w, cs2 }
}
