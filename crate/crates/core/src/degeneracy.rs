//! Degeneracy detection and the Skolem–Mahler–Lech stride decomposition.
//!
//! A sequence is degenerate when the ratio of two distinct characteristic
//! roots is a root of unity. Striding by the lcm of the orders of all such
//! ratios turns each offending ratio into 1, which merges the two roots, so
//! every stride component is non-degenerate. A non-degenerate sequence is
//! either identically zero or has finitely many zeros.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{cyclotomic, resultant, totient, Polynomial, Rational};
use crate::lrs::Lrs;

/// Default search budget for [`find_nonzero_window`].
pub const DEFAULT_WINDOW_CAP: usize = 10_000;

/// One stride component `n ↦ u_{n·stride + offset}` of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmlComponent {
    pub offset: usize,
    pub stride: usize,
    pub component: Lrs,
    pub identically_zero: bool,
    pub nondegenerate: bool,
}

/// A polynomial whose roots are the ratios `α/β` over all ordered pairs of
/// roots of `p`, including the `deg p` self-ratios equal to 1.
///
/// This is `Res_y(p(y), p(x·y))`, which has degree `d²` in `x`. It is
/// recovered from `d² + 1` univariate resultants at `x = 1, 2, …` by exact
/// interpolation; nonzero nodes keep the `y`-degree of `p(x·y)` at `d`.
pub fn ratio_polynomial(p: &Polynomial) -> Result<Polynomial> {
    let d = p
        .degree()
        .ok_or(Error::ZeroPolynomial("ratio_polynomial"))?;
    if d == 0 {
        return Ok(Polynomial::one());
    }
    let nodes: Vec<Rational> = (1..=(d * d + 1) as i64).map(Rational::from).collect();
    let values = nodes
        .iter()
        .map(|x| resultant(p, &p.scale_argument(x)))
        .collect::<Result<Vec<_>>>()?;
    Polynomial::interpolate(&nodes, &values)
}

/// Every `m ≥ 2` such that some ratio of two distinct characteristic roots is
/// a primitive `m`-th root of unity. Empty means non-degenerate.
pub fn degeneracy_orders(l: &Lrs) -> Result<BTreeSet<usize>> {
    let simple = l.char_poly().squarefree_part()?;
    let d = simple.degree().expect("monic of degree >= 1");
    let mut orders = BTreeSet::new();
    if d < 2 {
        return Ok(orders);
    }
    let self_ratios = Polynomial::linear(&Rational::one()).pow(d as u32);
    let cross = ratio_polynomial(&simple)?.exact_div(&self_ratios)?;
    let cross_degree = cross.degree().unwrap_or(0);
    if cross_degree == 0 {
        return Ok(orders);
    }
    // A ratio lies in a field of degree at most d², and a primitive m-th root
    // of unity has degree φ(m) ≥ sqrt(m/2), so m ≤ 2d⁴ covers every case.
    let field_degree = d * d;
    let search_limit = 2 * field_degree * field_degree;
    for m in 2..=search_limit {
        let phi = totient(m);
        if phi > field_degree || phi > cross_degree {
            continue;
        }
        // Φ_m is irreducible over Q, so a shared root means Φ_m divides.
        let cyc = cyclotomic(m)?;
        if !cross.gcd(&cyc).is_constant() {
            orders.insert(m);
        }
    }
    Ok(orders)
}

pub fn is_nondegenerate(l: &Lrs) -> Result<bool> {
    Ok(degeneracy_orders(l)?.is_empty())
}

/// Splits `l` into `L` non-degenerate stride components, where `L` is the
/// lcm of [`degeneracy_orders`] (1 when the sequence is already
/// non-degenerate). Components are ordered by offset.
pub fn sml_decompose(l: &Lrs) -> Result<Vec<SmlComponent>> {
    let period = degeneracy_orders(l)?
        .into_iter()
        .fold(1usize, num_integer::lcm);
    let mut components = Vec::with_capacity(period);
    for offset in 0..period {
        let component = l.stride_subsequence(period, offset)?;
        let nondegenerate = is_nondegenerate(&component)?;
        if !nondegenerate {
            return Err(Error::Internal(format!(
                "stride {period}, offset {offset} component is still degenerate"
            )));
        }
        components.push(SmlComponent {
            offset,
            stride: period,
            identically_zero: component.is_identically_zero(),
            component,
            nondegenerate,
        });
    }
    Ok(components)
}

/// The least `t ≤ cap` such that `u_t, …, u_{t+k−1}` are all nonzero.
///
/// Terms are generated lazily, so the cost is proportional to the answer
/// rather than the cap.
pub fn find_nonzero_window(l: &Lrs, cap: usize) -> Result<usize> {
    let k = l.order();
    let a = l.coefficients();
    let mut window: VecDeque<Rational> = l.initial().iter().cloned().collect();
    let mut run = 0usize;
    for n in 0..cap + k {
        let next: Rational = a.iter().zip(window.iter()).map(|(c, v)| c * v).sum();
        let u = window.pop_front().expect("window holds k terms");
        window.push_back(next);
        if u.is_zero() {
            run = 0;
            continue;
        }
        run += 1;
        if run == k {
            return Ok(n + 1 - k);
        }
    }
    Err(Error::WindowCapExhausted {
        order: k,
        cap,
        last_index: cap + k - 1,
    })
}
