//! Exact real scalars as rational coordinate vectors over a declared basis.
//!
//! A [`BasisContext`] fixes a finite list of real numbers, assumed linearly
//! independent over the rationals, with entry 0 always the constant 1. A
//! [`Scalar`] is a rational coordinate vector over one context. Arithmetic
//! is coordinate-wise and exact; sign determination is exact for rational
//! and quadratic contexts and enclosure-certified for symbolic ones.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number. Always stored reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Default cap on working precision for symbolic sign determination.
pub const DEFAULT_SIGN_CAP_BITS: u32 = 4096;

/// Starting working precision for symbolic sign determination.
const SIGN_START_BITS: u32 = 64;

/// Minimum number of significant digits required of a declared symbolic
/// basis entry.
pub const MIN_SIGNIFICANT_DIGITS: usize = 64;

/// Digits generated when this crate synthesizes a decimal string for an
/// adjoined square root entry.
const GENERATED_DECIMAL_DIGITS: usize = 80;

/// Exact sign of a represented real number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    fn of_rational(q: &Rational) -> Sign {
        if q.is_zero() {
            Sign::Zero
        } else if q.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

/// Kind of a basis context.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContextKind {
    /// Single entry {1}; every scalar is a rational number.
    Rational,
    /// Entries {1, sqrt(d)} for a squarefree d >= 2.
    Quadratic(u64),
    /// Declared entries with certified decimal enclosures.
    Symbolic,
}

/// How a basis entry's numeric value can be evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Refiner {
    /// The constant 1, exactly.
    One,
    /// sqrt(d), refinable to arbitrary precision.
    Sqrt(u64),
    /// Known only through the declared decimal string.
    Decimal,
}

/// One basis entry: a name, a decimal string used for enclosures, and the
/// evaluation strategy.
#[derive(Debug, Clone)]
pub struct BasisEntry {
    name: String,
    decimal: String,
    refiner: Refiner,
}

impl BasisEntry {
    /// Declare a symbolic entry from a decimal string. The string must carry
    /// at least [`MIN_SIGNIFICANT_DIGITS`] significant digits; the true value
    /// is trusted to lie within two units of its last digit.
    pub fn declared(name: &str, decimal: &str) -> Result<BasisEntry> {
        let parsed = DecimalString::parse(decimal)
            .ok_or(Error::InvalidContext { reason: "entry decimal string is malformed" })?;
        if parsed.significant_digits() < MIN_SIGNIFICANT_DIGITS {
            return Err(Error::InvalidContext {
                reason: "entry decimal string has fewer than 64 significant digits",
            });
        }
        if name.is_empty() {
            return Err(Error::InvalidContext { reason: "entry name is empty" });
        }
        Ok(BasisEntry {
            name: name.to_string(),
            decimal: decimal.to_string(),
            refiner: Refiner::Decimal,
        })
    }

    fn one() -> BasisEntry {
        BasisEntry { name: "1".to_string(), decimal: "1".to_string(), refiner: Refiner::One }
    }

    fn sqrt(d: u64) -> BasisEntry {
        BasisEntry {
            name: format!("sqrt{d}"),
            decimal: sqrt_decimal_string(d, GENERATED_DECIMAL_DIGITS),
            refiner: Refiner::Sqrt(d),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn decimal(&self) -> &str {
        &self.decimal
    }

    /// Certified enclosure of the entry value at roughly `bits` of working
    /// precision. The second component reports whether further refinement
    /// can still shrink the interval.
    fn enclosure(&self, bits: u32) -> (RatInterval, bool) {
        match self.refiner {
            Refiner::One => (RatInterval::exact(Rational::one()), false),
            Refiner::Sqrt(d) => (sqrt_enclosure(d, bits), true),
            Refiner::Decimal => {
                let parsed = DecimalString::parse(&self.decimal)
                    .expect("validated at construction");
                let digits = bits_to_digits(bits);
                let saturated = digits >= parsed.significant_digits();
                (parsed.enclosure(digits), !saturated)
            }
        }
    }
}

impl PartialEq for BasisEntry {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.decimal == other.decimal
    }
}

impl Eq for BasisEntry {}

/// A declared finite set of real numbers, linearly independent over the
/// rationals, serving as the coordinate system for [`Scalar`] values.
///
/// Entry 0 is always the constant 1. Independence is true by construction
/// for the `Rational` and `Quadratic` kinds and trusted as declared for the
/// `Symbolic` kind.
#[derive(Debug, Clone)]
pub struct BasisContext {
    kind: ContextKind,
    entries: Vec<BasisEntry>,
    sign_cap_bits: u32,
}

impl PartialEq for BasisContext {
    fn eq(&self, other: &Self) -> bool {
        // The sign precision cap is evaluation configuration, not identity.
        self.kind == other.kind && self.entries == other.entries
    }
}

impl Eq for BasisContext {}

impl BasisContext {
    /// The context {1}: plain rational arithmetic.
    pub fn rational() -> Arc<BasisContext> {
        Arc::new(BasisContext {
            kind: ContextKind::Rational,
            entries: vec![BasisEntry::one()],
            sign_cap_bits: DEFAULT_SIGN_CAP_BITS,
        })
    }

    /// The context {1, sqrt(d)} for squarefree d >= 2.
    pub fn quadratic(d: u64) -> Result<Arc<BasisContext>> {
        if d < 2 || !is_squarefree(d) {
            return Err(Error::InvalidRadicand { d });
        }
        Ok(Arc::new(BasisContext {
            kind: ContextKind::Quadratic(d),
            entries: vec![BasisEntry::one(), BasisEntry::sqrt(d)],
            sign_cap_bits: DEFAULT_SIGN_CAP_BITS,
        }))
    }

    /// A symbolic context from declared entries. `entries` lists the
    /// non-constant entries; the constant 1 is prepended as entry 0.
    pub fn symbolic(entries: Vec<BasisEntry>) -> Result<Arc<BasisContext>> {
        let mut all = vec![BasisEntry::one()];
        all.extend(entries);
        for (i, e) in all.iter().enumerate() {
            for other in &all[..i] {
                if other.name == e.name {
                    return Err(Error::InvalidContext { reason: "duplicate entry name" });
                }
            }
        }
        Ok(Arc::new(BasisContext {
            kind: ContextKind::Symbolic,
            entries: all,
            sign_cap_bits: DEFAULT_SIGN_CAP_BITS,
        }))
    }

    /// Copy of this context with a different sign-precision cap.
    pub fn with_sign_cap(self: &Arc<Self>, cap_bits: u32) -> Arc<BasisContext> {
        let mut ctx = (**self).clone();
        ctx.sign_cap_bits = cap_bits.max(1);
        Arc::new(ctx)
    }

    pub fn kind(&self) -> ContextKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[BasisEntry] {
        &self.entries
    }

    pub fn entry_names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name.as_str()).collect()
    }

    pub fn sign_cap_bits(&self) -> u32 {
        self.sign_cap_bits
    }

    /// Exact coordinates of `value` in this context, or `NotInSpan`.
    pub fn express(self: &Arc<Self>, value: &ExternalReal) -> Result<Scalar> {
        match value.normalized()? {
            NormalReal::Rational(q) => {
                let mut coords = vec![Rational::zero(); self.size()];
                coords[0] = q;
                Ok(Scalar { ctx: self.clone(), coords })
            }
            NormalReal::Surd { a, b, d } => {
                let idx = match self.kind {
                    ContextKind::Rational => None,
                    ContextKind::Quadratic(d0) => (d0 == d).then_some(1),
                    ContextKind::Symbolic => self
                        .entries
                        .iter()
                        .position(|e| e.refiner == Refiner::Sqrt(d)),
                };
                let idx = idx.ok_or(Error::NotInSpan)?;
                let mut coords = vec![Rational::zero(); self.size()];
                coords[0] = a;
                coords[idx] = b;
                Ok(Scalar { ctx: self.clone(), coords })
            }
            NormalReal::Entry(i) => {
                if i >= self.size() {
                    return Err(Error::NotInSpan);
                }
                Ok(Scalar::basis_element(self, i))
            }
        }
    }

    /// Extend this context by a value that `express` rejects, returning the
    /// new context. Existing scalars transfer via [`Scalar::embed`]; the
    /// adjoined value itself becomes expressible in the new context.
    ///
    /// For a quadratic value a + b*sqrt(d) the canonical surd sqrt(d) is
    /// appended (not the composite value), so adjoining sqrt(3)/3 to
    /// {1, sqrt2} yields {1, sqrt2, sqrt3}.
    pub fn adjoin(self: &Arc<Self>, value: &ExternalReal) -> Result<Arc<BasisContext>> {
        if self.express(value).is_ok() {
            return Err(Error::AlreadyInSpan);
        }
        match value.normalized()? {
            NormalReal::Surd { d, .. } => {
                let mut entry = BasisEntry::sqrt(d);
                while self.entries.iter().any(|e| e.name == entry.name) {
                    entry.name.push('_');
                }
                let mut entries = self.entries.clone();
                entries.push(entry);
                Ok(Arc::new(BasisContext {
                    kind: ContextKind::Symbolic,
                    entries,
                    sign_cap_bits: self.sign_cap_bits,
                }))
            }
            // Rationals and entry references are always in span, so express
            // above succeeded and we never get here.
            _ => Err(Error::AlreadyInSpan),
        }
    }

    /// True when `other` extends this context (same leading entries).
    pub fn is_prefix_of(&self, other: &BasisContext) -> bool {
        other.entries.len() >= self.entries.len()
            && self.entries == other.entries[..self.entries.len()]
    }
}

/// An externally supplied real number: a rational, a quadratic surd
/// a + b*sqrt(d), or a reference to an existing basis entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExternalReal {
    Rational(Rational),
    Quadratic { a: Rational, b: Rational, d: u64 },
    Entry(usize),
}

enum NormalReal {
    Rational(Rational),
    Surd { a: Rational, b: Rational, d: u64 },
    Entry(usize),
}

impl ExternalReal {
    /// Pull square factors out of the radicand and collapse degenerate
    /// quadratic values to rationals.
    fn normalized(&self) -> Result<NormalReal> {
        match self {
            ExternalReal::Rational(q) => Ok(NormalReal::Rational(q.clone())),
            ExternalReal::Entry(i) => Ok(NormalReal::Entry(*i)),
            ExternalReal::Quadratic { a, b, d } => {
                if *d == 0 {
                    return Err(Error::InvalidRadicand { d: 0 });
                }
                let (square, rest) = extract_square_part(*d);
                let b = b * Rational::from_integer(BigInt::from(square));
                if rest == 1 || b.is_zero() {
                    let extra = if rest == 1 { b } else { Rational::zero() };
                    Ok(NormalReal::Rational(a + extra))
                } else {
                    Ok(NormalReal::Surd { a: a.clone(), b, d: rest })
                }
            }
        }
    }
}

/// A real number represented exactly as a rational coordinate vector over a
/// basis context.
#[derive(Debug, Clone)]
pub struct Scalar {
    ctx: Arc<BasisContext>,
    coords: Vec<Rational>,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.same_context(other) && self.coords == other.coords
    }
}

impl Eq for Scalar {}

impl Scalar {
    pub fn new(ctx: &Arc<BasisContext>, coords: Vec<Rational>) -> Result<Scalar> {
        if coords.len() != ctx.size() {
            return Err(Error::CoordLength);
        }
        Ok(Scalar { ctx: ctx.clone(), coords })
    }

    pub fn zero(ctx: &Arc<BasisContext>) -> Scalar {
        Scalar { ctx: ctx.clone(), coords: vec![Rational::zero(); ctx.size()] }
    }

    pub fn one(ctx: &Arc<BasisContext>) -> Scalar {
        Scalar::from_rational(ctx, Rational::one())
    }

    pub fn from_rational(ctx: &Arc<BasisContext>, q: Rational) -> Scalar {
        let mut coords = vec![Rational::zero(); ctx.size()];
        coords[0] = q;
        Scalar { ctx: ctx.clone(), coords }
    }

    pub fn from_integer(ctx: &Arc<BasisContext>, n: i64) -> Scalar {
        Scalar::from_rational(ctx, Rational::from_integer(BigInt::from(n)))
    }

    /// The i-th basis entry as a scalar (unit coordinate vector).
    pub fn basis_element(ctx: &Arc<BasisContext>, i: usize) -> Scalar {
        let mut coords = vec![Rational::zero(); ctx.size()];
        coords[i] = Rational::one();
        Scalar { ctx: ctx.clone(), coords }
    }

    pub fn context(&self) -> &Arc<BasisContext> {
        &self.ctx
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn same_context(&self, other: &Scalar) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx
    }

    fn check_context(&self, other: &Scalar) -> Result<()> {
        if self.same_context(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_context(other)?;
        let coords =
            self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(Scalar { ctx: self.ctx.clone(), coords })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check_context(other)?;
        let coords =
            self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(Scalar { ctx: self.ctx.clone(), coords })
    }

    pub fn neg(&self) -> Scalar {
        Scalar { ctx: self.ctx.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }

    /// Multiply by a rational, coordinate-wise.
    pub fn scale(&self, q: &Rational) -> Scalar {
        Scalar { ctx: self.ctx.clone(), coords: self.coords.iter().map(|c| c * q).collect() }
    }

    /// True iff all coordinates vanish. By linear independence of the basis
    /// this is equivalent to the represented real being zero.
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    /// True when the scalar is a rational number (all non-constant
    /// coordinates vanish).
    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Rational::is_zero)
    }

    /// The rational value, if [`Scalar::is_rational`].
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.coords[0])
    }

    /// Exact sign of the represented real.
    ///
    /// Zero iff all coordinates are zero. Rational and quadratic contexts
    /// decide by exact rational case analysis. Symbolic contexts evaluate
    /// certified enclosures, doubling the working precision from 64 bits up
    /// to the context's cap, and return `AmbiguousSign` when the cap is
    /// reached without separating from zero.
    pub fn sign(&self) -> Result<Sign> {
        if self.is_zero() {
            return Ok(Sign::Zero);
        }
        match self.ctx.kind {
            ContextKind::Rational => Ok(Sign::of_rational(&self.coords[0])),
            ContextKind::Quadratic(d) => {
                Ok(quadratic_sign(&self.coords[0], &self.coords[1], d))
            }
            ContextKind::Symbolic => self.symbolic_sign(),
        }
    }

    fn symbolic_sign(&self) -> Result<Sign> {
        let cap = self.ctx.sign_cap_bits;
        let mut bits = SIGN_START_BITS.min(cap);
        loop {
            let (interval, refinable) = self.enclosure_at(bits);
            match interval.sign() {
                Some(sign) => return Ok(sign),
                None => {
                    if !refinable || bits >= cap {
                        return Err(Error::AmbiguousSign { cap_bits: cap });
                    }
                    bits = bits.saturating_mul(2).min(cap);
                }
            }
        }
    }

    /// Certified rational enclosure of the represented real at roughly
    /// `bits` of working precision.
    pub fn enclosure(&self, bits: u32) -> (Rational, Rational) {
        let (interval, _) = self.enclosure_at(bits);
        (interval.lo, interval.hi)
    }

    fn enclosure_at(&self, bits: u32) -> (RatInterval, bool) {
        let mut total = RatInterval::exact(Rational::zero());
        let mut refinable = false;
        for (q, entry) in self.coords.iter().zip(&self.ctx.entries) {
            if q.is_zero() {
                continue;
            }
            let (enc, can_refine) = entry.enclosure(bits);
            if can_refine {
                refinable = true;
            }
            total = total.add(&enc.scale(q));
        }
        (total, refinable)
    }

    /// Exact comparison via the sign of the difference.
    pub fn cmp_exact(&self, other: &Scalar) -> Result<Ordering> {
        Ok(match self.sub(other)?.sign()? {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        })
    }

    pub fn is_positive(&self) -> Result<bool> {
        Ok(self.sign()? == Sign::Positive)
    }

    /// Exact product, when representable in this context: one factor
    /// rational, or both factors in a quadratic context.
    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_context(other)?;
        if let Some(q) = other.as_rational() {
            return Ok(self.scale(q));
        }
        if let Some(q) = self.as_rational() {
            return Ok(other.scale(q));
        }
        if let ContextKind::Quadratic(d) = self.ctx.kind {
            let d = Rational::from_integer(BigInt::from(d));
            let (a1, b1) = (&self.coords[0], &self.coords[1]);
            let (a2, b2) = (&other.coords[0], &other.coords[1]);
            let coords = vec![a1 * a2 + b1 * b2 * d, a1 * b2 + b1 * a2];
            return Ok(Scalar { ctx: self.ctx.clone(), coords });
        }
        Err(Error::NotRepresentable)
    }

    /// Exact quotient self/other, when representable: rational divisor,
    /// quadratic field division, or a coordinate-proportional pair (the
    /// quotient then being rational).
    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_context(other)?;
        if other.is_zero() {
            return Err(Error::ZeroScalar);
        }
        if let Some(q) = other.as_rational() {
            return Ok(self.scale(&q.recip()));
        }
        if let ContextKind::Quadratic(d) = self.ctx.kind {
            let d = Rational::from_integer(BigInt::from(d));
            let (a, b) = (&other.coords[0], &other.coords[1]);
            // 1/(a + b*sqrt(d)) = (a - b*sqrt(d)) / (a^2 - b^2 d); the norm
            // is nonzero because sqrt(d) is irrational.
            let norm = a * a - b * b * d;
            let inv = Scalar {
                ctx: self.ctx.clone(),
                coords: vec![a / &norm, -b / &norm],
            };
            return self.try_mul(&inv);
        }
        // Proportional coordinate vectors have a rational quotient.
        if let Some(j) = other.coords.iter().position(|c| !c.is_zero()) {
            let q = &self.coords[j] / &other.coords[j];
            let proportional = self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(a, b)| *a == b * &q);
            if proportional {
                return Ok(Scalar::from_rational(&self.ctx, q));
            }
        }
        Err(Error::NotRepresentable)
    }

    /// Re-embed into a context that extends this scalar's context, appending
    /// zero coordinates for the new entries.
    pub fn embed(&self, new_ctx: &Arc<BasisContext>) -> Result<Scalar> {
        if !self.ctx.is_prefix_of(new_ctx) {
            return Err(Error::ContextMismatch);
        }
        let mut coords = self.coords.clone();
        coords.resize(new_ctx.size(), Rational::zero());
        Ok(Scalar { ctx: new_ctx.clone(), coords })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (q, entry) in self.coords.iter().zip(&self.ctx.entries) {
            if q.is_zero() {
                continue;
            }
            if wrote {
                if q.is_negative() {
                    write!(f, " - {}", format_coefficient(&-q, &entry.name))?;
                } else {
                    write!(f, " + {}", format_coefficient(q, &entry.name))?;
                }
            } else {
                if q.is_negative() {
                    write!(f, "-{}", format_coefficient(&-q, &entry.name))?;
                } else {
                    write!(f, "{}", format_coefficient(q, &entry.name))?;
                }
                wrote = true;
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn format_coefficient(q: &Rational, name: &str) -> String {
    if name == "1" {
        format!("{q}")
    } else if q.is_one() {
        name.to_string()
    } else {
        format!("{q}*{name}")
    }
}

/// Parse a wire rational: "p/q" or a bare integer "p".
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Format a rational for the wire: always "p/q", reduced, denominator
/// positive.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

// ---------------------------------------------------------------------------
// Sign machinery
// ---------------------------------------------------------------------------

/// Exact sign of a + b*sqrt(d) for squarefree d >= 2, by rational case
/// analysis: when a and b have opposite signs the comparison reduces to
/// a^2 vs b^2 d.
fn quadratic_sign(a: &Rational, b: &Rational, d: u64) -> Sign {
    let sa = Sign::of_rational(a);
    let sb = Sign::of_rational(b);
    match (sa, sb) {
        (Sign::Zero, s) | (s, Sign::Zero) => s,
        (Sign::Positive, Sign::Positive) => Sign::Positive,
        (Sign::Negative, Sign::Negative) => Sign::Negative,
        (sa, _) => {
            let lhs = a * a;
            let rhs = b * b * Rational::from_integer(BigInt::from(d));
            // |a| vs |b|sqrt(d); equality would make sqrt(d) rational.
            match lhs.cmp(&rhs) {
                Ordering::Greater => sa,
                Ordering::Less => sa.flip(),
                Ordering::Equal => Sign::Zero,
            }
        }
    }
}

/// Closed rational interval used for certified enclosures.
#[derive(Debug, Clone)]
struct RatInterval {
    lo: Rational,
    hi: Rational,
}

impl RatInterval {
    fn exact(q: Rational) -> RatInterval {
        RatInterval { lo: q.clone(), hi: q }
    }

    fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    fn scale(&self, q: &Rational) -> RatInterval {
        if q.is_negative() {
            RatInterval { lo: &self.hi * q, hi: &self.lo * q }
        } else {
            RatInterval { lo: &self.lo * q, hi: &self.hi * q }
        }
    }

    fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

/// Enclosure of sqrt(d) of width 2^-bits: floor-sqrt on d << 2*bits.
fn sqrt_enclosure(d: u64, bits: u32) -> RatInterval {
    let shifted = BigInt::from(d) << (2 * bits as usize);
    let root = shifted.sqrt();
    let denom = BigInt::one() << bits as usize;
    RatInterval {
        lo: Rational::new(root.clone(), denom.clone()),
        hi: Rational::new(root + 1, denom),
    }
}

/// Decimal digits needed to match `bits` of binary precision, with margin.
fn bits_to_digits(bits: u32) -> usize {
    (bits as usize) * 302 / 1000 + 2
}

/// sqrt(d) as a truncated decimal string with `frac_digits` fractional
/// digits.
fn sqrt_decimal_string(d: u64, frac_digits: usize) -> String {
    let scaled = BigInt::from(d) * pow10(2 * frac_digits);
    let root = scaled.sqrt().to_string();
    if root.len() <= frac_digits {
        let mut s = String::from("0.");
        for _ in 0..(frac_digits - root.len()) {
            s.push('0');
        }
        s.push_str(&root);
        s
    } else {
        let split = root.len() - frac_digits;
        format!("{}.{}", &root[..split], &root[split..])
    }
}

fn pow10(k: usize) -> BigInt {
    let mut n = BigInt::one();
    let ten = BigInt::from(10);
    for _ in 0..k {
        n *= &ten;
    }
    n
}

/// A validated decimal literal: optional sign, digits, optional fraction.
struct DecimalString {
    negative: bool,
    digits: Vec<u8>,
    frac_len: usize,
}

impl DecimalString {
    fn parse(s: &str) -> Option<DecimalString> {
        let s = s.trim();
        let (negative, rest) = match s.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, s),
        };
        let (int_part, frac_part) = match rest.split_once('.') {
            Some((i, f)) => (i, f),
            None => (rest, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let mut digits = Vec::with_capacity(int_part.len() + frac_part.len());
        for c in int_part.chars().chain(frac_part.chars()) {
            digits.push(c.to_digit(10)? as u8);
        }
        Some(DecimalString { negative, digits, frac_len: frac_part.len() })
    }

    /// Digits counted from the first nonzero digit.
    fn significant_digits(&self) -> usize {
        match self.digits.iter().position(|&d| d != 0) {
            Some(i) => self.digits.len() - i,
            None => 0,
        }
    }

    /// Enclosure using at most `max_sig` significant digits of the string.
    /// The true value is trusted to lie within one unit of the declared
    /// last digit, and truncation adds at most one more unit at the kept
    /// position.
    fn enclosure(&self, max_sig: usize) -> RatInterval {
        let lead = self.digits.iter().position(|&d| d != 0).unwrap_or(self.digits.len());
        let keep = self.digits.len().min(lead + max_sig.max(1));
        let dropped_frac = self.digits.len() - keep;
        let frac_kept = self.frac_len.saturating_sub(dropped_frac);
        let mut value = BigInt::zero();
        for &d in &self.digits[..keep] {
            value = value * 10 + BigInt::from(d);
        }
        // Digits dropped from the integer part would change magnitude;
        // only fractional digits may be dropped.
        let int_len = self.digits.len() - self.frac_len;
        debug_assert!(keep >= int_len);
        let denom = pow10(frac_kept);
        let v = Rational::new(value, denom.clone());
        let ulp = Rational::new(BigInt::from(2), denom);
        let (lo, hi) = (&v - &ulp, &v + &ulp);
        if self.negative {
            RatInterval { lo: -hi, hi: -lo }
        } else {
            RatInterval { lo, hi }
        }
    }
}

// ---------------------------------------------------------------------------
// Number theory helpers
// ---------------------------------------------------------------------------

fn is_squarefree(d: u64) -> bool {
    extract_square_part(d).0 == 1
}

/// Write d = s^2 * rest with rest squarefree; returns (s, rest).
fn extract_square_part(d: u64) -> (u64, u64) {
    let mut rest = 1u64;
    let mut square = 1u64;
    let mut n = d;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            for _ in 0..e / 2 {
                square *= p;
            }
            if e % 2 == 1 {
                rest *= p;
            }
        }
        p += 1;
    }
    (square, rest * n)
}
