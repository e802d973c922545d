//! The Weyl-ordered operator basis `T[m,n]` and its normal-ordered companion.

mod bracket;
mod convert;
mod index;
mod lincomb;
mod op;
mod product;
mod reorder;

pub use bracket::{
    commutator, commutator_with, gamma_ratio, hyp3f2_terminating, pair_bracket, poisson_bracket, BracketOptions,
};
pub use convert::{normal_to_weyl, weyl_to_normal, word_to_weyl};
pub use index::{WeylIndex, Word};
pub use op::{NormalPoly, WeylOp};
pub use product::weyl_product;
pub(crate) use reorder::factorial;
#[allow(unused_imports)]
pub(crate) use reorder::ihbar_pow;
pub use reorder::reorder_word;
