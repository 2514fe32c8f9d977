use serde::{Deserialize, Serialize};

use crate::abs::AbsValue;
use crate::error::{Error, Result};
use crate::hilbert::BasisRotation;
use crate::padic::Branch;
use crate::quadratic::ExtensionContext;

use super::block::BlockOperator;

/// `U U* = Id = U* U` and `max |U_mn| = 1`, on the declared block.
pub fn block_is_unitary(u: &BlockOperator) -> bool {
    let id = BlockOperator::identity(*u.context(), u.dim());
    let ua = u.adjoint();
    u.operator_norm() == AbsValue::one(u.context().p())
        && u.compose(&ua).is_ok_and(|x| x == id)
        && ua.compose(u).is_ok_and(|x| x == id)
}

/// `A* A = Id`, i.e. `<Av, Aw> = <v, w>` for all `v, w`.
pub fn block_is_ip_preserving(a: &BlockOperator) -> bool {
    let id = BlockOperator::identity(*a.context(), a.dim());
    a.adjoint().compose(a).is_ok_and(|x| x == id)
}

impl BasisRotation {
    /// The rotation restricted to coordinates `1..=dim`, as a matrix whose
    /// `k`-th column is the image of `e_k`.
    pub fn to_block(&self, dim: usize) -> Result<BlockOperator> {
        if let Some(&(i, j, _)) = self.pairs().iter().find(|&&(i, j, _)| i.max(j) > dim) {
            return Err(Error::InvalidRotation(format!("pair ({i}, {j}) exceeds dimension {dim}")));
        }
        let cols: Vec<_> = (1..=dim).map(|k| self.image_of_basis(k)).collect();
        Ok(BlockOperator::from_fn(*self.context(), dim, |m, n| cols[n - 1].get(m)))
    }
}

/// An integer solution of `x1^2 + x2^2 + x3^2 + x4^2 = p^(2K)` with some
/// `x_i` prime to `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourSquares {
    pub p: u64,
    pub k: u32,
    pub x: [i64; 4],
}

const SOLUTIONS_KEPT: usize = 64;
const SEARCH_LIMIT: u64 = 50_000_000;

/// Enumerates `x1 >= x2 >= x3 >= x4 >= 0`, keeps the first few admissible
/// solutions, and picks one by `seed`.
pub fn four_squares(p: u64, k: u32, seed: u64) -> Result<FourSquares> {
    if p == 2 {
        return Err(Error::RequiresOddP);
    }
    let target = (p as i128).checked_pow(2 * k).filter(|t| *t < i64::MAX as i128).ok_or(Error::SearchExhausted)? as i64;
    let isqrt = |n: i64| -> Option<i64> {
        if n < 0 {
            return None;
        }
        let mut r = (n as f64).sqrt() as i64;
        while r * r > n {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= n {
            r += 1;
        }
        (r * r == n).then_some(r)
    };
    let p = p as i64;
    let mut found = Vec::new();
    let mut steps = 0u64;
    let top = isqrt(target).expect("target is a square");
    'outer: for x1 in (0..=top).rev() {
        let r1 = target - x1 * x1;
        for x2 in (0..=x1).rev() {
            let r2 = r1 - x2 * x2;
            if r2 < 0 {
                continue;
            }
            for x3 in (0..=x2).rev() {
                steps += 1;
                if steps > SEARCH_LIMIT {
                    break 'outer;
                }
                let r3 = r2 - x3 * x3;
                if r3 < 0 {
                    continue;
                }
                if r3 > x3 * x3 {
                    break;
                }
                if let Some(x4) = isqrt(r3) {
                    let x = [x1, x2, x3, x4];
                    if x.iter().any(|xi| xi % p != 0) {
                        found.push(x);
                        if found.len() == SOLUTIONS_KEPT {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    if found.is_empty() {
        return Err(Error::SearchExhausted);
    }
    let x = found[(seed % found.len() as u64) as usize];
    Ok(FourSquares { p: p as u64, k, x })
}

/// `p^-K` times the orthogonal integer pattern built from a four-squares
/// solution. It preserves the inner product but has norm `p^K`, so it is not
/// unitary.
pub fn ip_preserving_non_unitary(ctx: &ExtensionContext, k: u32, seed: u64) -> Result<(BlockOperator, FourSquares)> {
    let sol = four_squares(ctx.p(), k, seed)?;
    let [x1, x2, x3, x4] = sol.x;
    let pattern = [
        [x1, x2, x3, x4],
        [-x2, x1, -x4, x3],
        [-x4, -x3, x2, x1],
        [-x3, x4, x1, -x2],
    ];
    let scale = ctx.base().p_power(-(k as i64));
    let a = BlockOperator::from_fn(*ctx, 4, |m, n| ctx.from_i64(pattern[m - 1][n - 1]).scale(&scale));
    Ok((a, sol))
}

/// The 2x2 unitary `[[a, b], [b, a]]` over `Q_2(sqrt 14)` with
/// `a = sqrt(-7)` and `b = (2 / a) sqrt(14)`.
pub fn dyadic_sqrt14_unitary(precision: u32) -> Result<BlockOperator> {
    let ctx = ExtensionContext::from_params(2, 14, precision)?;
    let a = ctx.base().from_i64(-7).sqrt(Branch::Principal)?;
    let b = ctx.sqrt_mu().scale(&ctx.base().from_i64(2).div(&a)?);
    let a = ctx.embed(a);
    BlockOperator::from_rows(ctx, vec![vec![a, b], vec![b, a]])
}
