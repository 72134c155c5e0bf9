//! Interval exchange transformations and their group structure.
//!
//! An [`Iet`] is stored in canonical form: ordered positive interval lengths,
//! a permutation sending source slot k to target slot perm[k] (0-based), and
//! derived translation constants. Adjacent intervals that travel together
//! are merged, so an r-interval IET has exactly r-1 discontinuities.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::oracle;
use crate::scalar::{BasisContext, Scalar, Sign};

/// Largest cell grid the rational fast path of [`Iet::order`] will build.
const MAX_ORDER_CELLS: usize = 1_000_000;

/// An interval exchange transformation in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Iet {
    ctx: Arc<BasisContext>,
    left: Scalar,
    lengths: Vec<Scalar>,
    perm: Vec<usize>,
    gammas: Vec<Scalar>,
    total: Scalar,
}

/// Which source interval contains a point, and the offset inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointLocation {
    pub index: usize,
    pub offset: Scalar,
}

/// Result of an order computation under an iteration cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderResult {
    Finite(u64),
    ExceedsCap,
}

/// Translation constants from lengths and permutation: interval k moves by
/// the total length placed before it in the image minus the total length
/// before it in the source.
pub fn translation_constants(lengths: &[Scalar], perm: &[usize]) -> Result<Vec<Scalar>> {
    validate_perm(perm, lengths.len())?;
    let ctx = lengths[0].context();
    let mut inv = vec![0usize; perm.len()];
    for (k, &t) in perm.iter().enumerate() {
        inv[t] = k;
    }
    let mut img_start = vec![Scalar::zero(ctx); perm.len()];
    let mut acc = Scalar::zero(ctx);
    for t in 0..perm.len() {
        img_start[t] = acc.clone();
        acc = acc.add(&lengths[inv[t]])?;
    }
    let mut gammas = Vec::with_capacity(perm.len());
    let mut src_start = Scalar::zero(ctx);
    for (k, &t) in perm.iter().enumerate() {
        gammas.push(img_start[t].sub(&src_start)?);
        src_start = src_start.add(&lengths[k])?;
    }
    Ok(gammas)
}

fn validate_perm(perm: &[usize], r: usize) -> Result<()> {
    if perm.len() != r || r == 0 {
        return Err(Error::InvalidPermutation);
    }
    let mut seen = vec![false; r];
    for &t in perm {
        if t >= r || seen[t] {
            return Err(Error::InvalidPermutation);
        }
        seen[t] = true;
    }
    Ok(())
}

impl Iet {
    /// Build and canonicalize an IET from its domain left endpoint, interval
    /// lengths, and permutation (0-based). Adjacent co-moving intervals are
    /// merged, so the stored interval count can be smaller than the input.
    pub fn new(left: Scalar, lengths: Vec<Scalar>, perm: Vec<usize>) -> Result<Iet> {
        validate_perm(&perm, lengths.len())?;
        let ctx = left.context().clone();
        for len in &lengths {
            if !len.same_context(&left) {
                return Err(Error::ContextMismatch);
            }
            if len.sign()? != Sign::Positive {
                return Err(Error::NonPositiveLength);
            }
        }
        let (lengths, perm) = canonicalize(lengths, perm);
        let gammas = translation_constants(&lengths, &perm)?;
        let mut total = Scalar::zero(&ctx);
        for len in &lengths {
            total = total.add(len)?;
        }
        Ok(Iet { ctx, left, lengths, perm, gammas, total })
    }

    /// The identity map on [left, left + total).
    pub fn identity(left: Scalar, total: Scalar) -> Result<Iet> {
        Iet::new(left, vec![total], vec![0])
    }

    /// The 2-IET swapping [first | second] to [second | first].
    pub fn rotation(left: Scalar, first: Scalar, second: Scalar) -> Result<Iet> {
        Iet::new(left, vec![first, second], vec![1, 0])
    }

    pub fn context(&self) -> &Arc<BasisContext> {
        &self.ctx
    }

    pub fn left(&self) -> &Scalar {
        &self.left
    }

    pub fn total(&self) -> &Scalar {
        &self.total
    }

    pub fn right(&self) -> Scalar {
        self.left.add(&self.total).expect("same context")
    }

    pub fn lengths(&self) -> &[Scalar] {
        &self.lengths
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn gammas(&self) -> &[Scalar] {
        &self.gammas
    }

    pub fn num_intervals(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_identity(&self) -> bool {
        self.lengths.len() == 1
    }

    /// Interior discontinuity points, in increasing order (r - 1 of them).
    pub fn boundaries(&self) -> Vec<Scalar> {
        let mut cuts = Vec::with_capacity(self.lengths.len().saturating_sub(1));
        let mut acc = self.left.clone();
        for len in &self.lengths[..self.lengths.len() - 1] {
            acc = acc.add(len).expect("same context");
            cuts.push(acc.clone());
        }
        cuts
    }

    /// Left endpoints of the source intervals (r of them).
    pub fn source_starts(&self) -> Vec<Scalar> {
        let mut starts = Vec::with_capacity(self.lengths.len());
        let mut acc = self.left.clone();
        for len in &self.lengths {
            starts.push(acc.clone());
            acc = acc.add(len).expect("same context");
        }
        starts
    }

    /// Locate `x` in the source partition.
    pub fn locate(&self, x: &Scalar) -> Result<PointLocation> {
        let mut offset = x.sub(&self.left)?;
        if offset.sign()? == Sign::Negative {
            return Err(Error::OutOfDomain);
        }
        for (k, len) in self.lengths.iter().enumerate() {
            if offset.sub(len)?.sign()? == Sign::Negative {
                return Ok(PointLocation { index: k, offset });
            }
            offset = offset.sub(len)?;
        }
        Err(Error::OutOfDomain)
    }

    /// Apply the exchange to a point of the domain.
    pub fn apply(&self, x: &Scalar) -> Result<Scalar> {
        let loc = self.locate(x)?;
        x.add(&self.gammas[loc.index])
    }

    /// Translation constant at a point (the gamma of its interval).
    fn gamma_at(&self, x: &Scalar) -> Result<&Scalar> {
        Ok(&self.gammas[self.locate(x)?.index])
    }

    /// Inverse exchange: image intervals read back in source order.
    pub fn inverse(&self) -> Iet {
        let r = self.lengths.len();
        let mut inv = vec![0usize; r];
        for (k, &t) in self.perm.iter().enumerate() {
            inv[t] = k;
        }
        let lengths = (0..r).map(|t| self.lengths[inv[t]].clone()).collect();
        Iet::new(self.left.clone(), lengths, inv)
            .expect("inverse of a valid IET is valid")
    }

    /// Composition self after g (g applied first). Both maps must share the
    /// same context and domain interval.
    pub fn compose(&self, g: &Iet) -> Result<Iet> {
        if self.ctx != g.ctx {
            return Err(Error::ContextMismatch);
        }
        if self.left != g.left || self.total != g.total {
            return Err(Error::DomainMismatch);
        }
        let ginv = g.inverse();
        let mut cuts = g.boundaries();
        for b in self.boundaries() {
            cuts.push(ginv.apply(&b)?);
        }
        sort_scalars(&mut cuts)?;
        cuts.dedup();
        cuts.retain(|c| *c != g.left);

        let mut starts = vec![g.left.clone()];
        starts.extend(cuts);
        let right = g.right();
        let mut pieces = Vec::with_capacity(starts.len());
        for (i, s) in starts.iter().enumerate() {
            let end = starts.get(i + 1).unwrap_or(&right);
            let len = end.sub(s)?;
            let g_gamma = g.gamma_at(s)?.clone();
            let image = s.add(&g_gamma)?;
            let f_gamma = self.gamma_at(&image)?;
            pieces.push((len, g_gamma.add(f_gamma)?));
        }
        Iet::from_pieces(self.left.clone(), pieces)
    }

    /// Assemble an IET from consecutive source pieces carrying their
    /// translations. The pieces must tile the domain bijectively.
    pub(crate) fn from_pieces(left: Scalar, pieces: Vec<(Scalar, Scalar)>) -> Result<Iet> {
        let mut src_starts = Vec::with_capacity(pieces.len());
        let mut acc = left.clone();
        for (len, _) in &pieces {
            src_starts.push(acc.clone());
            acc = acc.add(len)?;
        }
        let img_lefts: Vec<Scalar> = src_starts
            .iter()
            .zip(&pieces)
            .map(|(s, (_, gamma))| s.add(gamma))
            .collect::<Result<_>>()?;
        // Rank each piece by where its image starts.
        let mut order: Vec<usize> = (0..pieces.len()).collect();
        insertion_sort_by(&mut order, |&a, &b| img_lefts[a].cmp_exact(&img_lefts[b]))?;
        let mut perm = vec![0usize; pieces.len()];
        for (slot, &k) in order.iter().enumerate() {
            perm[k] = slot;
        }
        let gammas_given: Vec<Scalar> = pieces.iter().map(|(_, g)| g.clone()).collect();
        let lengths: Vec<Scalar> = pieces.into_iter().map(|(l, _)| l).collect();
        let derived = translation_constants(&lengths, &perm)?;
        if derived != gammas_given {
            return Err(Error::Inconsistent {
                reason: "pieces do not tile the domain bijectively",
            });
        }
        Iet::new(left, lengths, perm)
    }

    /// Conjugate by the affine order-preserving bijection onto
    /// [y_left, y_left + y_len). Requires the scale factor y_len / |X| to be
    /// exactly representable (always true for a rational ratio, and for any
    /// ratio in a quadratic context).
    pub fn conjugate_affine(&self, y_left: &Scalar, y_len: &Scalar) -> Result<Iet> {
        if !y_left.same_context(&self.left) || !y_len.same_context(&self.left) {
            return Err(Error::ContextMismatch);
        }
        if y_len.sign()? != Sign::Positive {
            return Err(Error::NonPositiveLength);
        }
        let ratio = y_len.try_div(&self.total)?;
        let lengths = self
            .lengths
            .iter()
            .map(|l| l.try_mul(&ratio))
            .collect::<Result<Vec<_>>>()?;
        Iet::new(y_left.clone(), lengths, self.perm.clone())
    }

    /// Least n >= 1 with the n-fold composition equal to the identity, if
    /// n <= cap. When all lengths are rational multiples of the domain the
    /// order is read off the induced permutation of equal cells.
    pub fn order(&self, cap: u64) -> Result<OrderResult> {
        if cap == 0 {
            return Ok(OrderResult::ExceedsCap);
        }
        if self.is_identity() {
            return Ok(OrderResult::Finite(1));
        }
        if let Some(q) = self.common_cell_count() {
            let cells = oracle::to_cells(self, q)?;
            let n = oracle::brute_order(&cells);
            return Ok(if n <= cap.into() {
                OrderResult::Finite(n.to_u64().expect("bounded by cap"))
            } else {
                OrderResult::ExceedsCap
            });
        }
        let mut g = self.clone();
        let mut n = 1u64;
        loop {
            if g.is_identity() {
                return Ok(OrderResult::Finite(n));
            }
            if n >= cap {
                return Ok(OrderResult::ExceedsCap);
            }
            g = g.compose(self)?;
            n += 1;
        }
    }

    /// Cell count for the rational fast paths: the least q such that every
    /// length is an integer multiple of |X|/q, when all length ratios are
    /// rational and q is not absurdly large.
    pub(crate) fn common_cell_count(&self) -> Option<usize> {
        let mut lcm = BigInt::one();
        for len in &self.lengths {
            let ratio = len.try_div(&self.total).ok()?;
            let q = ratio.as_rational()?.clone();
            lcm = lcm.lcm(q.denom());
        }
        lcm.to_usize().filter(|&q| q <= MAX_ORDER_CELLS)
    }

    /// Dimension over the rationals of the span of the interval lengths.
    pub fn rank(&self) -> usize {
        let rows = self.lengths.iter().map(|l| l.coords().to_vec()).collect();
        QMatrix::from_rows(rows).expect("lengths are nonempty").rank()
    }

    /// Re-embed into an extending context.
    pub fn embed(&self, new_ctx: &Arc<BasisContext>) -> Result<Iet> {
        let left = self.left.embed(new_ctx)?;
        let lengths = self
            .lengths
            .iter()
            .map(|l| l.embed(new_ctx))
            .collect::<Result<Vec<_>>>()?;
        Iet::new(left, lengths, self.perm.clone())
    }

    /// Verify the stored invariants: positive lengths, valid permutation,
    /// canonical form (no co-moving adjacent intervals), translation
    /// constants consistent with lengths and permutation, lengths summing to
    /// the stored domain length, and the displacement identity (the tensor
    /// sum of lengths against translations is antisymmetric).
    pub fn check_invariants(&self) -> Result<()> {
        validate_perm(&self.perm, self.lengths.len())?;
        for len in &self.lengths {
            if len.sign()? != Sign::Positive {
                return Err(Error::NonPositiveLength);
            }
        }
        for k in 0..self.perm.len().saturating_sub(1) {
            if self.perm[k + 1] == self.perm[k] + 1 {
                return Err(Error::Inconsistent { reason: "not in canonical form" });
            }
        }
        if translation_constants(&self.lengths, &self.perm)? != self.gammas {
            return Err(Error::Inconsistent { reason: "translation constants are stale" });
        }
        let mut sum = Scalar::zero(&self.ctx);
        for len in &self.lengths {
            sum = sum.add(len)?;
        }
        if sum != self.total {
            return Err(Error::Inconsistent {
                reason: "lengths do not sum to the domain length",
            });
        }
        let n = self.ctx.size();
        let mut tensor = QMatrix::zeros(n, n);
        for (len, gamma) in self.lengths.iter().zip(&self.gammas) {
            for i in 0..n {
                for j in 0..n {
                    let term = &len.coords()[i] * &gamma.coords()[j];
                    *tensor.get_mut(i, j) = tensor.get(i, j) + term;
                }
            }
        }
        if !tensor.is_antisymmetric() {
            return Err(Error::Inconsistent {
                reason: "length/translation tensor is not antisymmetric",
            });
        }
        Ok(())
    }
}

/// Merge adjacent source intervals whose images are adjacent in the same
/// order; such intervals translate rigidly together.
fn canonicalize(mut lengths: Vec<Scalar>, mut perm: Vec<usize>) -> (Vec<Scalar>, Vec<usize>) {
    loop {
        let mergeable =
            (0..perm.len().saturating_sub(1)).find(|&k| perm[k + 1] == perm[k] + 1);
        let Some(k) = mergeable else {
            return (lengths, perm);
        };
        let t = perm[k];
        let tail = lengths.remove(k + 1);
        lengths[k] = lengths[k].add(&tail).expect("same context");
        perm.remove(k + 1);
        for p in perm.iter_mut() {
            if *p > t {
                *p -= 1;
            }
        }
    }
}

/// Exact insertion sort; comparison may fail (ambiguous symbolic sign).
pub(crate) fn insertion_sort_by<T>(
    items: &mut [T],
    mut cmp: impl FnMut(&T, &T) -> Result<Ordering>,
) -> Result<()> {
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 && cmp(&items[j - 1], &items[j])? == Ordering::Greater {
            items.swap(j - 1, j);
            j -= 1;
        }
    }
    Ok(())
}

pub(crate) fn sort_scalars(items: &mut [Scalar]) -> Result<()> {
    insertion_sort_by(items, |a, b| a.cmp_exact(b))
}
