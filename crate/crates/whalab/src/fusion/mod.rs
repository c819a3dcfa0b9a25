//! Fusion rings, associators and their coherence checks.

pub mod builtin;
pub mod cocycle;
pub mod fsymbol;
pub mod pentagon;
pub mod ring;

pub use builtin::{fib_f_data, fib_ring, golden_ratio, psu2_f_data, FibFData, FibGauge};
pub use cocycle::{pointed_f_from_cocycle, standard_cocycle, verify_cocycle, Cocycle3};
pub use fsymbol::{FBlock, FSymbolTable, TreeKey};
pub use pentagon::{verify_pentagon, verify_pentagon_with, ActionMults};
pub use ring::{
    perron_frobenius_dims, pointed_fusion_ring, psu2_fusion_ring, quantum_integer, verify_perron_frobenius,
    verify_ring_associativity, FusionRingData, GroupTable,
};
