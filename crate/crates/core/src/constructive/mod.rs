//! Constructive extenders that realize the extendability theorems for
//! product graphs and the bow-tie graph, plus the `C_4 x C_n` obstruction.

pub mod bowtie;
pub mod c4cn;
pub mod separator;

pub use bowtie::{Bowtie, BowtieMatchingPlan, EdgeClass, EdgeClassification};
pub use c4cn::{c4cn_witness, C4CnWitness};
pub use separator::{
    extend_via_separator, find_separator, is_separable, recognize_product, separator_extend, Axis,
    ProductShape, SeparatorChoice, SeparatorRun,
};
