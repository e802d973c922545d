use super::op::WeylOp;
use crate::error::Result;

/// Operator product, computed through the normal-ordered form.
pub fn weyl_product(x: &WeylOp, y: &WeylOp) -> Result<WeylOp> {
    x.to_normal()?.mul(&y.to_normal()?)?.to_weyl()
}
