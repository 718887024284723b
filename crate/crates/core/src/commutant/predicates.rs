use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::map::{PolyMap, ProjMap};
use crate::poly::Polynomial;
use crate::ring::Ring;

/// `f ∘ g = g ∘ f` with exact coefficient comparison.
pub fn commutes_affine<R: Ring>(f: &PolyMap<R>, g: &PolyMap<R>) -> Result<bool> {
    Ok(f.compose(g)? == g.compose(f)?)
}

/// `φ ∘ ψ` and `ψ ∘ φ` agree up to a scalar: every cross product
/// `(ψ∘φ)_i (φ∘ψ)_j − (ψ∘φ)_j (φ∘ψ)_i` vanishes, over all pairs `i < j`.
pub fn commutes_projective<R: Ring>(phi: &ProjMap<R>, psi: &ProjMap<R>) -> Result<bool> {
    let a = psi.compose_raw(phi)?;
    let b = phi.compose_raw(psi)?;
    Ok(cross_products(&a, &b).iter().all(Polynomial::is_zero))
}

/// The cross products `a_i b_j − a_j b_i` for `i < j`, in pair order.
pub fn cross_products<R: Ring>(a: &[Polynomial<R>], b: &[Polynomial<R>]) -> Vec<Polynomial<R>> {
    let mut out = Vec::new();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            out.push(a[i].mul(&b[j]).sub(&a[j].mul(&b[i])));
        }
    }
    out
}

/// Like [`commutes_affine`] but failing with `NotCommuting`.
pub fn require_commuting<R: Ring>(f: &PolyMap<R>, g: &PolyMap<R>) -> Result<()> {
    if commutes_affine(f, g)? {
        Ok(())
    } else {
        Err(Error::NotCommuting)
    }
}
