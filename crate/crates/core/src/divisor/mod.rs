//! Weil and Cartier divisors, sheaf cohomology on the underlying finite
//! space, Picard groups and the exact sequences comparing them.

mod cartier;
mod compare;
mod les;
mod sheaf;
mod units;
mod weil;

pub use cartier::{
    cartier_group, cartier_to_weil, is_locally_factorial, pic_to_cl, weil_to_cartier, CartierDivisor, CartierGroup,
    PicToCl,
};
pub use compare::{
    class_group_product_check, mayer_vietoris, nor_comparison, pic_homotopy_check, pic_sn_check, CheckVerdict,
    MayerVietoris, NorComparison,
};
pub use les::{check_short_exact, long_exact_sequence, LongExactSequence};
pub use sheaf::{Cohomology, PosetSheaf, SheafMap};
pub use units::{global_units, picard_group, units_sheaf};
pub(crate) use units::unit_groups;
pub use weil::{class_group, class_group_data, div, excision, open_complement, ClassGroup, ExcisionReport, WeilDivisor};

#[cfg(test)]
mod tests;
