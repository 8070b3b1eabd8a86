//! Small tensor builders for writing identities in `X = ∂i, Y = ∂j, Z = ∂k`.

use super::Field;
use crate::geometry::TensorField;
use crate::symbolic::ScalarField;

/// `(X, Y) ↦ η(Y) aX`.
pub fn eta_y(a: &Field, eta: &Field) -> Field {
    a.tensor(eta)
}

/// `(X, Y) ↦ η(X) aY`.
pub fn eta_x(a: &Field, eta: &Field) -> Field {
    a.tensor(eta).permute_covariant(&[1, 0])
}

/// Lowers the output of a `(1,k)`-tensor into a new last slot:
/// `(…, Z) ↦ g(t(…), Z)`.
pub fn lower_output(t: &Field, g: &Field) -> Field {
    let ctx = t.ctx();
    let d = t.dim();
    let k = t.valence().1;
    TensorField::from_fn(ctx, 0, k + 1, |idx| {
        let z = idx[k];
        let mut src = Vec::with_capacity(k + 1);
        src.push(0);
        src.extend_from_slice(&idx[..k]);
        let mut acc = ScalarField::zero(ctx);
        for a in 0..d {
            let c = g.at2(a, z);
            if c.is_zero() {
                continue;
            }
            src[0] = a;
            let v = t.get(&src);
            if !v.is_zero() {
                acc = &acc + &(v * c);
            }
        }
        acc
    })
}

/// Fills the first covariant slot with the vector `v`.
pub fn insert_first(t: &Field, v: &Field) -> Field {
    let ctx = t.ctx();
    let d = t.dim();
    let (r, s) = t.valence();
    TensorField::from_fn(ctx, r, s - 1, |idx| {
        let mut src = Vec::with_capacity(r + s);
        src.extend_from_slice(&idx[..r]);
        src.push(0);
        src.extend_from_slice(&idx[r..]);
        let mut acc = ScalarField::zero(ctx);
        for k in 0..d {
            if v.at(k).is_zero() {
                continue;
            }
            src[r] = k;
            acc = &acc + &(v.at(k) * t.get(&src));
        }
        acc
    })
}

/// Swaps the two covariant slots of a bilinear form or (1,2)-tensor.
pub fn swap(t: &Field) -> Field {
    t.permute_covariant(&[1, 0])
}

/// `(X, Y, Z) ↦ T(X, Z, Y)`.
pub fn swap_last(t: &Field) -> Field {
    t.permute_covariant(&[0, 2, 1])
}

pub fn scalar_mul(t: &Field, f: &ScalarField) -> Field {
    if f.is_zero() {
        TensorField::zero(t.ctx(), t.valence().0, t.valence().1)
    } else if f.is_one() {
        t.clone()
    } else {
        t.mul_scalar(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{int, Context};

    #[test]
    fn eta_slots() {
        let ctx = Context::coordinates(&["x", "y"]);
        let id = TensorField::<ScalarField>::identity(&ctx);
        let eta = TensorField::basis_vector(&ctx, 1);
        let eta = TensorField::covector(&ctx, eta.comps().to_vec()).unwrap();
        // η(Y)X at (X, Y) = (∂0, ∂1) is ∂0; η(X)Y there is 0
        assert_eq!(eta_y(&id, &eta).at3(0, 0, 1).constant_value(), Some(int(1)));
        assert!(eta_x(&id, &eta).at3(0, 0, 1).is_zero());
        assert_eq!(swap(&eta_y(&id, &eta)), eta_x(&id, &eta));
    }

    #[test]
    fn insert_and_lower() {
        let ctx = Context::coordinates(&["x", "y"]);
        let x = ScalarField::coord(&ctx, 0);
        let id = TensorField::<ScalarField>::identity(&ctx);
        let v = TensorField::vector(&ctx, vec![x.clone(), ScalarField::one(&ctx)]).unwrap();
        assert_eq!(insert_first(&id, &v), v);
        let g = TensorField::bilinear(&ctx, vec![vec![x.clone(), ScalarField::zero(&ctx)], vec![ScalarField::zero(&ctx), ScalarField::one(&ctx)]]).unwrap();
        assert_eq!(lower_output(&id, &g), g);
        assert!(scalar_mul(&g, &ScalarField::zero(&ctx)).is_zero());
    }
}
