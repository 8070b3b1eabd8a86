use crate::symbolic::ScalarField;

/// Solves `Σ_c x_c cols[c] = rhs` exactly over the rational-function field.
/// Returns `None` when inconsistent; a free unknown comes back as `None`.
pub fn solve_linear(cols: &[Vec<ScalarField>], rhs: &[ScalarField]) -> Option<Vec<Option<ScalarField>>> {
    let k = cols.len();
    let mut rows: Vec<Vec<ScalarField>> = (0..rhs.len())
        .map(|r| {
            let mut row: Vec<ScalarField> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .filter(|row| row.iter().any(|v| !v.is_zero()))
        .collect();

    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, column)
    let mut next = 0;
    for col in 0..k {
        // prefer a constant pivot to keep the arithmetic small
        let candidates = (next..rows.len()).filter(|&r| !rows[r][col].is_zero());
        let Some(p) = candidates
            .clone()
            .find(|&r| rows[r][col].is_constant())
            .or_else(|| candidates.clone().next())
        else {
            continue;
        };
        rows.swap(next, p);
        let inv = rows[next][col].recip().ok()?;
        let pivot_row: Vec<ScalarField> = rows[next].iter().map(|v| v * &inv).collect();
        rows[next] = pivot_row.clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !pv.is_zero() {
                    *v = &*v - &(&f * pv);
                }
            }
        }
        pivots.push((next, col));
        next += 1;
    }
    if rows[next..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut sol = vec![None; k];
    for (r, c) in pivots {
        sol[c] = Some(rows[r][k].clone());
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::Context;

    fn f(ctx: &crate::symbolic::Ctx, s: &str) -> ScalarField {
        crate::parser::parse_field(s, ctx).unwrap()
    }

    #[test]
    fn unique_dependent_and_inconsistent() {
        let ctx = Context::coordinates(&["x", "y"]);
        let a = vec![f(&ctx, "1"), f(&ctx, "x"), f(&ctx, "0")];
        let b = vec![f(&ctx, "0"), f(&ctx, "1"), f(&ctx, "y")];
        let rhs = vec![f(&ctx, "2"), f(&ctx, "2*x + 3"), f(&ctx, "3*y")];
        let sol = solve_linear(&[a.clone(), b.clone()], &rhs).unwrap();
        assert_eq!(sol[0], Some(f(&ctx, "2")));
        assert_eq!(sol[1], Some(f(&ctx, "3")));

        let dup = a.iter().map(|v| v.scale(&crate::symbolic::int(2))).collect();
        let sol = solve_linear(&[a.clone(), dup], &a).unwrap();
        assert_eq!(sol[0], Some(f(&ctx, "1")));
        assert_eq!(sol[1], None);

        assert!(solve_linear(&[a], &b).is_none());
    }
}
