//! Cell computations, tables and cup products.

mod cell;
pub mod checks;
mod report;
mod ring;

pub use cell::{cell_record, compute_cell, compute_cell_with, CellComputation, CellOptions, CellRecord, CellStatus};
pub use report::{compute_table, CellStore, CohomologyReport, Convention, TableOptions};
pub use ring::{
    commutation_sign, cup_product, equal_mod_coboundaries, equal_up_to_sign_flips, is_coboundary, ring_probe,
    verify_cocycle, ClassMap, Comparison, FlipMatch, ProbeCell, ProbeMonomial, ProbeRelation, RingProbeResult,
};
