//! Brute-force verification for rational-data IETs.
//!
//! An IET whose interval lengths are all integer multiples of |X|/q permutes
//! the q equal cells of its domain; compose, order, and first-return all
//! reduce to finite permutation arithmetic. This gives an independent
//! ground truth against which the exact machinery is checked.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::iet::Iet;
use crate::scalar::Rational;

/// A permutation of q equal cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellPermutation {
    q: usize,
    map: Vec<usize>,
}

impl CellPermutation {
    pub fn new(map: Vec<usize>) -> Result<CellPermutation> {
        let q = map.len();
        let mut seen = vec![false; q];
        for &t in &map {
            if t >= q || seen[t] {
                return Err(Error::NotCellAligned { q });
            }
            seen[t] = true;
        }
        Ok(CellPermutation { q, map })
    }

    pub fn identity(q: usize) -> CellPermutation {
        CellPermutation { q, map: (0..q).collect() }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, cell: usize) -> usize {
        self.map[cell]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &t)| i == t)
    }
}

/// Encode an IET as a permutation of q equal cells of its domain. Fails with
/// `NotCellAligned` unless every interval length is an integer number of
/// cells.
pub fn to_cells(f: &Iet, q: usize) -> Result<CellPermutation> {
    if q == 0 {
        return Err(Error::NotCellAligned { q });
    }
    let cells_per = |value: &crate::scalar::Scalar| -> Result<BigInt> {
        let ratio = value.try_div(f.total()).map_err(|_| Error::NotCellAligned { q })?;
        let ratio = ratio.as_rational().ok_or(Error::NotCellAligned { q })?.clone();
        let scaled = ratio * Rational::from_integer(BigInt::from(q));
        if !scaled.is_integer() {
            return Err(Error::NotCellAligned { q });
        }
        Ok(scaled.to_integer())
    };
    let mut map = vec![usize::MAX; q];
    let mut cell = 0usize;
    for (len, gamma) in f.lengths().iter().zip(f.gammas()) {
        let count = cells_per(len)?.to_usize().ok_or(Error::NotCellAligned { q })?;
        let shift = cells_per(gamma)?.to_i64().ok_or(Error::NotCellAligned { q })?;
        for _ in 0..count {
            let target = cell as i64 + shift;
            if target < 0 || target >= q as i64 || cell >= q {
                return Err(Error::NotCellAligned { q });
            }
            map[cell] = target as usize;
            cell += 1;
        }
    }
    if cell != q {
        return Err(Error::NotCellAligned { q });
    }
    CellPermutation::new(map)
}

/// Composition a after b (b applied first).
pub fn brute_compose(a: &CellPermutation, b: &CellPermutation) -> Result<CellPermutation> {
    if a.q != b.q {
        return Err(Error::NotCellAligned { q: a.q });
    }
    Ok(CellPermutation {
        q: a.q,
        map: b.map.iter().map(|&t| a.map[t]).collect(),
    })
}

/// Order of the permutation: least common multiple of its cycle lengths.
pub fn brute_order(p: &CellPermutation) -> BigUint {
    let mut seen = vec![false; p.q];
    let mut order = BigUint::one();
    for start in 0..p.q {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p.map[i];
            len += 1;
        }
        order = order.lcm(&BigUint::from(len));
    }
    order
}

/// First-return permutation on the initial `cells` cells, with the return
/// time of each.
pub fn brute_induce(
    p: &CellPermutation,
    cells: usize,
) -> Result<(CellPermutation, Vec<usize>)> {
    if cells == 0 || cells > p.q {
        return Err(Error::NotCellAligned { q: p.q });
    }
    let mut map = Vec::with_capacity(cells);
    let mut times = Vec::with_capacity(cells);
    for start in 0..cells {
        let mut i = p.map[start];
        let mut t = 1usize;
        while i >= cells {
            i = p.map[i];
            t += 1;
            if t > p.q {
                return Err(Error::Inconsistent { reason: "orbit failed to return" });
            }
        }
        map.push(i);
        times.push(t);
    }
    Ok((CellPermutation::new(map)?, times))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_rational, BasisContext, Scalar};
    use alloc::sync::Arc;

    fn rotation(t: &str) -> Iet {
        let ctx = BasisContext::rational();
        let t = Scalar::from_rational(&ctx, parse_rational(t).unwrap());
        let rest = Scalar::one(&ctx).sub(&t).unwrap();
        Iet::rotation(Scalar::zero(&ctx), rest, t).unwrap()
    }

    fn scq(ctx: &Arc<BasisContext>, s: &str) -> Scalar {
        Scalar::from_rational(ctx, parse_rational(s).unwrap())
    }

    #[test]
    fn identity_cells() {
        let ctx = BasisContext::rational();
        let id = Iet::identity(Scalar::zero(&ctx), Scalar::one(&ctx)).unwrap();
        assert_eq!(to_cells(&id, 4).unwrap(), CellPermutation::identity(4));
    }

    #[test]
    fn rotation_cells_cycle() {
        let p = to_cells(&rotation("1/3"), 3).unwrap();
        assert_eq!(p.map(), [1, 2, 0]);
        assert_eq!(brute_order(&p), BigUint::from(3u32));
    }

    #[test]
    fn misaligned_grid_is_rejected() {
        assert_eq!(
            to_cells(&rotation("1/3"), 2).unwrap_err(),
            Error::NotCellAligned { q: 2 }
        );
    }

    #[test]
    fn reversal_cells() {
        let ctx = BasisContext::rational();
        let f = Iet::new(
            Scalar::zero(&ctx),
            vec![scq(&ctx, "1/2"), scq(&ctx, "1/3"), scq(&ctx, "1/6")],
            vec![2, 1, 0],
        )
        .unwrap();
        let p = to_cells(&f, 6).unwrap();
        assert_eq!(p.map(), [3, 4, 5, 1, 2, 0]);
        assert_eq!(brute_order(&p), BigUint::from(6u32));
    }

    #[test]
    fn compose_matches_cells() {
        let f = rotation("1/6");
        let g = rotation("1/3");
        let fg = f.compose(&g).unwrap();
        let pc = brute_compose(&to_cells(&f, 6).unwrap(), &to_cells(&g, 6).unwrap()).unwrap();
        assert_eq!(to_cells(&fg, 6).unwrap(), pc);
    }

    #[test]
    fn brute_order_of_identity() {
        assert_eq!(brute_order(&CellPermutation::identity(5)), BigUint::one());
    }

    #[test]
    fn induce_rotation_on_first_cell() {
        let p = to_cells(&rotation("1/3"), 3).unwrap();
        let (induced, times) = brute_induce(&p, 1).unwrap();
        assert!(induced.is_identity());
        assert_eq!(times, [3]);
    }

    #[test]
    fn induce_rotation_two_fifths() {
        let p = to_cells(&rotation("2/5"), 5).unwrap();
        let (induced, times) = brute_induce(&p, 1).unwrap();
        assert!(induced.is_identity());
        assert_eq!(times, [5]);
    }
}
