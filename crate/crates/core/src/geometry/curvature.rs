use super::connection::Connection;
use super::linalg::{raise_bilinear, trace};
use super::tensor::TensorField;
use crate::symbolic::Scalar;

/// `R^l_{ijk}` at `[l][i][j][k]` with `R(∂i,∂j)∂k = R^l_{ijk} ∂l` and
/// `R(X,Y) = [∇_X, ∇_Y] − ∇_{[X,Y]}`.
pub fn riemann<S: Scalar>(conn: &Connection<S>) -> TensorField<S> {
    let gamma = &conn.gamma;
    let ctx = gamma.ctx();
    let d = gamma.dim();
    let dgamma: Vec<TensorField<S>> = (0..d).map(|k| gamma.map(|c| c.partial(k))).collect();
    TensorField::from_fn(ctx, 1, 3, |ix| {
        let (l, i, j, k) = (ix[0], ix[1], ix[2], ix[3]);
        if i == j {
            return S::zero(ctx);
        }
        let mut acc = dgamma[i].at3(l, j, k).sub(dgamma[j].at3(l, i, k));
        for m in 0..d {
            let a = gamma.at3(m, j, k);
            if !a.is_zero() {
                acc = acc.add(&a.mul(gamma.at3(l, i, m)));
            }
            let b = gamma.at3(m, i, k);
            if !b.is_zero() {
                acc = acc.sub(&b.mul(gamma.at3(l, j, m)));
            }
        }
        acc
    })
}

/// `S_{jk} = R^i_{ijk}`, the trace of `X ↦ R(X,Y)Z`.
pub fn ricci_tensor<S: Scalar>(r: &TensorField<S>) -> TensorField<S> {
    let ctx = r.ctx();
    let d = r.dim();
    TensorField::from_fn(ctx, 0, 2, |ix| {
        (0..d).fold(S::zero(ctx), |acc, i| acc.add(r.at4(i, i, ix[0], ix[1])))
    })
}

/// `Q` with `g(QX, Y) = S(X, Y)`.
pub fn ricci_operator<S: Scalar>(s: &TensorField<S>, ginv: &TensorField<S>) -> TensorField<S> {
    raise_bilinear(ginv, s)
}

pub fn scalar_curvature<S: Scalar>(q: &TensorField<S>) -> S {
    trace(q)
}

/// Lowered curvature `R_{ijkm} = g(R(∂i,∂j)∂k, ∂m)`.
pub fn lowered_riemann<S: Scalar>(r: &TensorField<S>, g: &TensorField<S>) -> TensorField<S> {
    let ctx = r.ctx();
    let d = r.dim();
    TensorField::from_fn(ctx, 0, 4, |ix| {
        (0..d).fold(S::zero(ctx), |acc, l| {
            let c = r.at4(l, ix[0], ix[1], ix[2]);
            if c.is_zero() {
                acc
            } else {
                acc.add(&c.mul(g.at2(l, ix[3])))
            }
        })
    })
}

/// `R(X,Y)Z + R(Y,Z)X + R(Z,X)Y`.
pub fn bianchi_residual<S: Scalar>(r: &TensorField<S>) -> TensorField<S> {
    let ctx = r.ctx();
    TensorField::from_fn(ctx, 1, 3, |ix| {
        let (l, i, j, k) = (ix[0], ix[1], ix[2], ix[3]);
        r.at4(l, i, j, k).add(r.at4(l, j, k, i)).add(r.at4(l, k, i, j))
    })
}

/// Residual of the three-dimensional decomposition
/// `R(X,Y)Z = g(Y,Z)QX − g(X,Z)QY + g(QY,Z)X − g(QX,Z)Y − (r/2)(g(Y,Z)X − g(X,Z)Y)`.
pub fn three_dim_residual<S: Scalar>(r: &TensorField<S>, g: &TensorField<S>, q: &TensorField<S>) -> TensorField<S> {
    let ctx = r.ctx();
    let d = r.dim();
    let s = (0..d).fold(S::zero(ctx), |a, i| a.add(q.at2(i, i)));
    let half_r = s.scale(&crate::symbolic::rat(1, 2));
    let delta = |a: usize, b: usize| if a == b { S::one(ctx) } else { S::zero(ctx) };
    // g(QY, Z) = S(Y, Z) = g_{zm} Q^m_y
    let gq = |y: usize, z: usize| (0..d).fold(S::zero(ctx), |a, m| a.add(&g.at2(m, z).mul(q.at2(m, y))));
    TensorField::from_fn(ctx, 1, 3, |ix| {
        let (l, x, y, z) = (ix[0], ix[1], ix[2], ix[3]);
        let rhs = g
            .at2(y, z)
            .mul(q.at2(l, x))
            .sub(&g.at2(x, z).mul(q.at2(l, y)))
            .add(&gq(y, z).mul(&delta(l, x)))
            .sub(&gq(x, z).mul(&delta(l, y)))
            .sub(&half_r.mul(&g.at2(y, z).mul(&delta(l, x)).sub(&g.at2(x, z).mul(&delta(l, y)))));
        r.at4(l, x, y, z).sub(&rhs)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::linalg::metric_inverse;
    use crate::parser::parse_field;
    use crate::symbolic::{int, Context, ScalarField};

    #[test]
    fn warped_constant_curvature() {
        // (dx² − dy² + dz²)/z², constant curvature −1
        let ctx = Context::coordinates(&["x", "y", "z"]);
        let f = |s: &str| parse_field(s, &ctx).unwrap();
        let z = f("0");
        let w = f("1/z^2");
        let g = TensorField::bilinear(
            &ctx,
            vec![
                vec![w.clone(), z.clone(), z.clone()],
                vec![z.clone(), -&w, z.clone()],
                vec![z.clone(), z.clone(), w.clone()],
            ],
        )
        .unwrap();
        let conn = Connection::levi_civita(&g).unwrap();
        let r = riemann(&conn);
        assert!(bianchi_residual(&r).is_zero());
        let s = ricci_tensor(&r);
        let ginv = metric_inverse(&g).unwrap();
        let q = ricci_operator(&s, &ginv);
        // constant sectional curvature −1 in dimension 3: Q = −2 Id, r = −6
        assert_eq!(scalar_curvature(&q), ScalarField::int(&ctx, -6));
        assert_eq!(q, TensorField::identity(&ctx).scale(&int(-2)));
        assert!(three_dim_residual(&r, &g, &q).is_zero());
    }
}
