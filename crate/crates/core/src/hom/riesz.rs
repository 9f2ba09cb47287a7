use crate::error::{Error, Result};
use crate::lattice::{Element, Space};

/// Splits `x = x1 + x2` with `|x1| ≤ |y1|` and `|x2| ≤ |y2|`, keeping both
/// parts positive when `x` is.
///
/// Requires `|x| ≤ |y1| + |y2|`, which follows from `|x| ≤ |y1 + y2|`.
pub fn riesz_decompose(space: &Space, x: &Element, y1: &Element, y2: &Element) -> Result<(Element, Element)> {
    space.check(x)?;
    space.check(y1)?;
    space.check(y2)?;
    let (a1, a2) = (y1.abs(), y2.abs());
    if !x.abs().leq(&a1.add(&a2)?)? {
        return Err(Error::DecompositionPrereqViolated(x.clone()));
    }
    let x1 = x.join(&a1.neg())?.meet(&a1)?;
    let x2 = x.sub(&x1)?;
    let sound = x1.add(&x2)? == *x
        && x1.abs().leq(&a1)?
        && x2.abs().leq(&a2)?
        && (!x.is_nonneg() || (x1.is_nonneg() && x2.is_nonneg()));
    if !sound {
        return Err(Error::SoundnessBug(format!("decomposition of {x} into {x1} + {x2}")));
    }
    Ok((x1, x2))
}
