use core::fmt::Debug;

/// Commutative ring with unit, as needed by [`crate::poly::Polynomial`].
///
/// Constants are produced from a context value so that the zero of a ring
/// whose elements carry parameters (a field modulus, a number of unknowns)
/// is still well defined.
pub trait Ring: Clone + PartialEq + Debug {
    type Ctx: Clone + PartialEq + Debug;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_one(&self, ctx: &Self::Ctx) -> bool {
        *self == Self::one(ctx)
    }

    fn pow(&self, ctx: &Self::Ctx, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(ctx);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}
