//! Online sequences `X = (X1, X2)` and `Y = (X1, Y2)` on `C(n, 3)`.
//!
//! With `h = n/2`:
//!
//! * `X1`: `h` flows `(I1, O1)` then `h` flows `(I2, O2)`, on servers `1..=h`.
//! * `X2`: `h` flows `(I1, O2)` on servers `h+1..=n`.
//! * `Y2`: `h` flows `(I3, O1)` from servers `1..=h` to servers `h+1..=n`,
//!   then `h` flows `(I3, O2)` on servers `h+1..=n`.
//!
//! All demands are 1. A link-disjoint routing of `X` needs the two halves of
//! `X1` on the same set of middles ([`satisfies_p1`]); one of `Y` needs them
//! on complementary sets ([`satisfies_p2`]).

use crate::model::{ClosDims, FlowSet, FlowSetBuilder, Routing};
use crate::rational::Rational;

use super::{bad, FlowSequence, InstanceError, NamedInstance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XySequences {
    pub n: usize,
    pub x: FlowSequence,
    pub y: FlowSequence,
    pub x_witness: Routing,
    pub y_witness: Routing,
    /// Length of the shared prefix `X1`.
    pub prefix_len: usize,
}

/// Appends block `X` or `Y` on switches `offset + 1..=offset + 3`, returning
/// its link-disjoint routing.
fn add_block(b: &mut FlowSetBuilder, n: usize, offset: usize, y: bool) -> Vec<usize> {
    let h = n / 2;
    let one = Rational::one;
    let (i1, i2, i3) = (offset + 1, offset + 2, offset + 3);
    let (o1, o2) = (offset + 1, offset + 2);
    let mut middles = Vec::new();
    for s in 1..=h {
        b.add(i1, s, o1, s, one());
        middles.push(s);
    }
    for s in 1..=h {
        b.add(i2, s, o2, s, one());
        middles.push(if y { h + s } else { s });
    }
    if !y {
        for s in h + 1..=n {
            b.add(i1, s, o2, s, one());
            middles.push(s);
        }
    } else {
        for s in 1..=h {
            b.add(i3, s, o1, h + s, one());
            middles.push(h + s);
        }
        for s in h + 1..=n {
            b.add(i3, s, o2, s, one());
            middles.push(s - h);
        }
    }
    middles
}

fn check_even(n: usize) -> Result<(), InstanceError> {
    if n < 2 || n % 2 == 1 {
        return Err(bad(format!("n must be even and at least 2, got {n}")));
    }
    Ok(())
}

pub fn online_sequences(n: usize) -> Result<XySequences, InstanceError> {
    check_even(n)?;
    let dims = ClosDims::new(n, 3)?;
    let mut bx = FlowSet::builder(dims);
    let x_witness = add_block(&mut bx, n, 0, false);
    let mut by = FlowSet::builder(dims);
    let y_witness = add_block(&mut by, n, 0, true);
    Ok(XySequences {
        n,
        x: FlowSequence::in_id_order(bx.build()?),
        y: FlowSequence::in_id_order(by.build()?),
        x_witness: Routing::new(x_witness),
        y_witness: Routing::new(y_witness),
        prefix_len: n,
    })
}

fn halves(n: usize, x1_middles: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    let h = n / 2;
    let mut a = x1_middles.get(..h)?.to_vec();
    let mut b = x1_middles.get(h..2 * h)?.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    let distinct = |v: &[usize]| v.windows(2).all(|w| w[0] != w[1]);
    (distinct(&a) && distinct(&b)).then_some((a, b))
}

/// The `(I1, O1)` flows and the `(I2, O2)` flows of `X1` each use distinct
/// middles, and both groups use the same set.
pub fn satisfies_p1(n: usize, x1_middles: &[usize]) -> bool {
    halves(n, x1_middles).is_some_and(|(a, b)| a == b)
}

/// Each group uses distinct middles and the two sets are disjoint.
pub fn satisfies_p2(n: usize, x1_middles: &[usize]) -> bool {
    halves(n, x1_middles).is_some_and(|(a, b)| a.iter().all(|m| !b.contains(m)))
}

/// All `2^s` supersequences on `C(n, 3s)`. Supersequence `index` puts `Y` in
/// block `j` (switches `3(j-1)+1..=3j`) when bit `j - 1` of `index` is set,
/// and `X` otherwise; blocks arrive in order and flows in id order. Each
/// carries a blockwise link-disjoint witness.
pub fn supersequences(n: usize, s: usize) -> Result<Vec<NamedInstance>, InstanceError> {
    check_even(n)?;
    if s == 0 || s > 16 {
        return Err(bad(format!("s must lie in 1..=16, got {s}")));
    }
    let dims = ClosDims::new(n, 3 * s)?;
    (0..1usize << s)
        .map(|index| {
            let mut b = FlowSet::builder(dims);
            let mut witness = Vec::new();
            for j in 1..=s {
                let y = (index >> (j - 1)) & 1 == 1;
                witness.extend(add_block(&mut b, n, 3 * (j - 1), y));
            }
            Ok(
                NamedInstance::new(format!("super-{n}-{s}-{index}"), b.build()?)
                    .with_witness("link-disjoint", Routing::new(witness), Rational::one())
                    .with_expected("opt", Rational::one()),
            )
        })
        .collect()
}

/// Block `j` of a supersequence on `C(n, r)` as a flow set of its own, with
/// its link-disjoint routing.
pub(crate) fn block(n: usize, r: usize, j: usize, y: bool) -> (FlowSet, Vec<usize>) {
    let mut b = FlowSet::builder(ClosDims::new(n, r).expect("positive dimensions"));
    let witness = add_block(&mut b, n, 3 * (j - 1), y);
    (b.build().expect("block fits the network"), witness)
}

/// Offline version of `X` and `Y` for sorted greedy: `group` flows per
/// switch pair, demand `1 - eps` in `X1` and 1 afterwards. Servers are taken
/// round-robin at every ToR switch, so the hose model holds only when the
/// groups fit, as with `group = n/2`; the result is not validated.
pub fn sorted_greedy_xy(
    n: usize,
    group: usize,
    eps: &Rational,
) -> Result<(NamedInstance, NamedInstance), InstanceError> {
    if group == 0 || !eps.is_positive() || *eps >= Rational::one() {
        return Err(bad("need group >= 1 and 0 < eps < 1"));
    }
    let dims = ClosDims::new(n, 3)?;
    let build = |y: bool| -> Result<FlowSet, InstanceError> {
        let mut next_src = [0usize; 3];
        let mut next_dst = [0usize; 3];
        let mut b = FlowSet::builder(dims);
        let mut add = |i: usize, j: usize, d: Rational| {
            for _ in 0..group {
                let s = next_src[i - 1] % n + 1;
                let t = next_dst[j - 1] % n + 1;
                next_src[i - 1] += 1;
                next_dst[j - 1] += 1;
                b.add(i, s, j, t, d.clone());
            }
        };
        let low = Rational::one() - eps;
        add(1, 1, low.clone());
        add(2, 2, low);
        if y {
            add(3, 1, Rational::one());
            add(3, 2, Rational::one());
        } else {
            add(1, 2, Rational::one());
        }
        Ok(b.build()?)
    };
    Ok((
        NamedInstance::new(format!("sorted-greedy-x-{n}-{group}-{eps}"), build(false)?),
        NamedInstance::new(format!("sorted-greedy-y-{n}-{group}-{eps}"), build(true)?),
    ))
}
