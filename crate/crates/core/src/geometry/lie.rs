use super::connection::Connection;
use super::tensor::TensorField;
use crate::symbolic::Scalar;

/// Lie derivative `L_V T` from partial derivatives only.
pub fn lie_derivative<S: Scalar>(v: &TensorField<S>, t: &TensorField<S>) -> TensorField<S> {
    assert_eq!(v.valence(), (1, 0), "Lie derivative needs a vector field");
    let ctx = t.ctx();
    let d = t.dim();
    let (r, s) = t.valence();
    let dv: Vec<Vec<S>> = (0..d)
        .map(|a| (0..d).map(|k| v.at(a).partial(k)).collect())
        .collect();
    let dt: Vec<TensorField<S>> = (0..d)
        .filter(|&k| !v.at(k).is_zero())
        .map(|k| t.map(|c| c.partial(k)))
        .collect();
    let active: Vec<usize> = (0..d).filter(|&k| !v.at(k).is_zero()).collect();
    TensorField::from_fn(ctx, r, s, |idx| {
        let mut acc = S::zero(ctx);
        for (n, &k) in active.iter().enumerate() {
            acc = acc.add(&v.at(k).mul(dt[n].get(idx)));
        }
        let mut src = idx.to_vec();
        for p in 0..r {
            let a = idx[p];
            for k in 0..d {
                let c = &dv[a][k];
                if c.is_zero() {
                    continue;
                }
                src[p] = k;
                acc = acc.sub(&t.get(&src).mul(c));
            }
            src[p] = idx[p];
        }
        for p in r..r + s {
            let b = idx[p];
            for k in 0..d {
                let c = &dv[k][b];
                if c.is_zero() {
                    continue;
                }
                src[p] = k;
                acc = acc.add(&t.get(&src).mul(c));
            }
            src[p] = idx[p];
        }
        acc
    })
}

/// The same derivative through a torsion-free connection:
/// `L_V T = ∇_V T − Σ_upper (∇V) T + Σ_lower T(.., ∇_· V, ..)`.
pub fn lie_derivative_via_connection<S: Scalar>(
    conn: &Connection<S>,
    v: &TensorField<S>,
    t: &TensorField<S>,
) -> TensorField<S> {
    let ctx = t.ctx();
    let d = t.dim();
    let (r, s) = t.valence();
    let nt = conn.covariant_derivative(t);
    let nv = conn.covariant_derivative(v); // (∇_k V)^a at [a][k]
    TensorField::from_fn(ctx, r, s, |idx| {
        let mut acc = S::zero(ctx);
        let mut full = Vec::with_capacity(r + s + 1);
        full.extend_from_slice(&idx[..r]);
        full.push(0);
        full.extend_from_slice(&idx[r..]);
        for k in 0..d {
            if v.at(k).is_zero() {
                continue;
            }
            full[r] = k;
            acc = acc.add(&v.at(k).mul(nt.get(&full)));
        }
        let mut src = idx.to_vec();
        for p in 0..r {
            for k in 0..d {
                src[p] = k;
                acc = acc.sub(&t.get(&src).mul(nv.at2(idx[p], k)));
            }
            src[p] = idx[p];
        }
        for p in r..r + s {
            for k in 0..d {
                src[p] = k;
                acc = acc.add(&t.get(&src).mul(nv.at2(k, idx[p])));
            }
            src[p] = idx[p];
        }
        acc
    })
}

/// `N⁽¹⁾(X,Y) = [φ,φ](X,Y) − 2dη(X,Y)ξ` as a (1,2)-tensor at `[l][i][j]`, where
/// `[φ,φ](X,Y) = φ²[X,Y] + [φX,φY] − φ[φX,Y] − φ[X,φY]`.
pub fn nijenhuis<S: Scalar>(phi: &TensorField<S>, xi: &TensorField<S>, eta: &TensorField<S>) -> TensorField<S> {
    let ctx = phi.ctx();
    let d = phi.dim();
    let dphi: Vec<TensorField<S>> = (0..d).map(|k| phi.map(|c| c.partial(k))).collect();
    TensorField::from_fn(ctx, 1, 2, |ix| {
        let (l, i, j) = (ix[0], ix[1], ix[2]);
        let mut acc = S::zero(ctx);
        for a in 0..d {
            // φ^a_i ∂_a φ^l_j − φ^a_j ∂_a φ^l_i
            acc = acc.add(&phi.at2(a, i).mul(dphi[a].at2(l, j)));
            acc = acc.sub(&phi.at2(a, j).mul(dphi[a].at2(l, i)));
            // φ^l_a (∂_j φ^a_i − ∂_i φ^a_j)
            let c = phi.at2(l, a);
            if !c.is_zero() {
                acc = acc.add(&c.mul(&dphi[j].at2(a, i).sub(dphi[i].at2(a, j))));
            }
        }
        let deta = eta.at(j).partial(i).sub(&eta.at(i).partial(j));
        acc.sub(&deta.mul(xi.at(l)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::linalg::metric_inverse;
    use crate::parser::parse_field;
    use crate::symbolic::{Context, ScalarField};

    #[test]
    fn self_derivative_vanishes() {
        let ctx = Context::coordinates(&["x", "y", "z"]);
        let v = TensorField::vector(
            &ctx,
            ["x*y", "z^2 - x", "1/(1 + x^2)"]
                .iter()
                .map(|s| parse_field(s, &ctx).unwrap())
                .collect(),
        )
        .unwrap();
        assert!(lie_derivative(&v, &v).is_zero());
    }

    #[test]
    fn agrees_with_connection_form() {
        let ctx = Context::coordinates(&["x", "y", "z"]);
        let f = |s: &str| parse_field(s, &ctx).unwrap();
        let g = TensorField::bilinear(
            &ctx,
            vec![
                vec![f("1"), f("0"), f("-x")],
                vec![f("0"), f("-1"), f("y + 2*x")],
                vec![f("-x"), f("y + 2*x"), f("1 - 3*x^2 - 4*x*y - y^2")],
            ],
        )
        .unwrap();
        let conn = Connection::from_metric(&g, &metric_inverse(&g).unwrap());
        let v = TensorField::vector(&ctx, vec![f("x*z"), f("y^2"), f("1 + x")]).unwrap();
        let t = TensorField::<ScalarField>::from_fn(&ctx, 1, 1, |i| {
            f(&format!("x^{}*y + z*{}", i[0] + 1, i[1]))
        });
        assert_eq!(lie_derivative(&v, &t), lie_derivative_via_connection(&conn, &v, &t));
        assert_eq!(lie_derivative(&v, &g), lie_derivative_via_connection(&conn, &v, &g));
    }
}
