//! Named constructions backed by the bundled prototype files.

use qcdp_core::codes::NestedPair;
use qcdp_core::lattice::{code_dimensions, dmin_bounds, volume_gain, LatticeProfile};
use qcdp_core::qc::ProtoMatrix;

use crate::error::Result;
use crate::formats::{parse_edits, parse_proto};

/// 3×5 prototype with z = 34 (n = 170).
pub const EXAMPLE1_PROTO: &str = include_str!("../data/example1.txt");
/// Unmodified 802.16e rate-1/2 prototype at z = 96 (n = 2304).
pub const WIMAX_R12_2304: &str = include_str!("../data/wimax_r12_2304.txt");
/// Cell replacements for the n = 1152 level-0 code, in z = 48 shifts.
pub const WIMAX_R12_1152_EDITS: &str = include_str!("../data/wimax_r12_1152_edits.txt");
/// Block-row groups summed into the two level-1 bands.
pub const WIMAX_ROW_SUMS: [[usize; 2]; 2] = [[1, 8], [4, 10]];

pub const BUILTIN_NAMES: [&str; 2] = ["example1", "wimax1152"];

/// A nested pair plus the design distances used for the lattice profile.
#[derive(Debug, Clone)]
pub struct Construction {
    pub label: String,
    pub proto: ProtoMatrix,
    pub pair: NestedPair,
    /// Design Hamming distances `(d0, d1)`.
    pub d: (usize, usize),
}

impl Construction {
    /// Profile at dimension `n + 1`, with `d²min` taken as the lower bound
    /// `min{d0, 4·d1}`.
    pub fn profile(&self) -> LatticeProfile {
        let (lo, _) = dmin_bounds(self.d.0, self.d.1);
        volume_gain(code_dimensions(&self.pair), self.pair.n + 1, self.d, lo as f64)
    }
}

pub fn example1_proto() -> ProtoMatrix {
    parse_proto(EXAMPLE1_PROTO).expect("bundled example1 prototype")
}

pub fn wimax2304_proto() -> ProtoMatrix {
    parse_proto(WIMAX_R12_2304).expect("bundled 802.16e prototype")
}

/// Scaled to n = 1152 and modified.
pub fn wimax1152_proto() -> ProtoMatrix {
    let edits = parse_edits(WIMAX_R12_1152_EDITS).expect("bundled edits");
    wimax2304_proto()
        .scale_shifts(1152)
        .and_then(|p| p.apply_edits(&edits))
        .expect("bundled edits are in range")
}

pub fn example1() -> Result<Construction> {
    let proto = example1_proto();
    Ok(Construction {
        label: "example1".into(),
        pair: NestedPair::block_row(&proto, 0)?,
        proto,
        d: (16, 4),
    })
}

pub fn wimax1152() -> Result<Construction> {
    let proto = wimax1152_proto();
    let groups: Vec<Vec<usize>> = WIMAX_ROW_SUMS.iter().map(|g| g.to_vec()).collect();
    Ok(Construction {
        label: "wimax1152".into(),
        pair: NestedPair::row_sums(&proto, &groups)?,
        proto,
        d: (25, 4),
    })
}

pub fn builtin(name: &str) -> Option<Result<Construction>> {
    match name {
        "example1" => Some(example1()),
        "wimax1152" => Some(wimax1152()),
        _ => None,
    }
}
