//! Exact scalars and dense linear algebra.
//!
//! Every value carries enough information to do its own arithmetic, but the
//! zero and one of a ring have to come from a [`ScalarDomain`]. Mixing values
//! from two different domains in one operation is a programming error and
//! panics; all public constructors check domains at their boundary.

mod map;
mod matrix;
mod parse;
mod poly;

pub use map::ScalarMap;
pub(crate) use map::int_coeffs;
pub use matrix::{Matrix, RowEchelon};
pub use parse::{parse_permutation, parse_univariate};
pub use poly::{linear_pencil, poly_det, MultiPoly};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{bail, ensure, Result};

/// A simple extension `Q[x]/(f)` of the rationals.
///
/// `f` is monic. Irreducibility is the caller's claim; construction only
/// rules out rational roots when `deg f <= 3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumberField {
    modulus: Vec<BigRational>,
    generator: String,
}

impl NumberField {
    /// `modulus` lists coefficients from the constant term upwards.
    pub fn new(modulus: Vec<BigRational>, generator: &str) -> Result<Self> {
        let mut modulus = modulus;
        while modulus.last().is_some_and(|c| c.is_zero()) {
            modulus.pop();
        }
        ensure!(modulus.len() >= 2, Validation, "extension modulus must have degree >= 1");
        ensure!(
            modulus.last().unwrap().is_one(),
            Validation,
            "extension modulus must be monic"
        );
        ensure!(
            !generator.is_empty() && generator.chars().all(|c| c.is_ascii_alphabetic()),
            Parse,
            "generator name must be alphabetic, got {generator:?}"
        );
        let field = NumberField { modulus, generator: generator.to_string() };
        if field.degree() <= 3 {
            if let Some(root) = field.rational_root() {
                bail!(Validation, "extension modulus has the rational root {root}");
            }
        }
        Ok(field)
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigRational] {
        &self.modulus
    }

    pub fn generator(&self) -> &str {
        &self.generator
    }

    // Rational root test on the integral multiple of the modulus.
    fn rational_root(&self) -> Option<BigRational> {
        let lcm = self
            .modulus
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .modulus
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        if ints[0].is_zero() {
            return Some(BigRational::zero());
        }
        let lead = ints.last().unwrap().abs();
        let constant = ints[0].abs();
        let divisors = |n: &BigInt| -> Vec<BigInt> {
            let n = n.to_u64().unwrap_or(0);
            (1..=n.min(1_000_000)).filter(|k| n.is_multiple_of(*k)).map(BigInt::from).collect()
        };
        for p in divisors(&constant) {
            for q in divisors(&lead) {
                for sign in [1, -1] {
                    let cand = BigRational::new(p.clone() * sign, q.clone());
                    let mut acc = BigRational::zero();
                    for c in ints.iter().rev() {
                        acc = acc * &cand + BigRational::from_integer(c.clone());
                    }
                    if acc.is_zero() {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }

    fn reduce(&self, mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
        let n = self.degree();
        while coeffs.len() > n {
            let top = coeffs.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = coeffs.len() - n;
            for (i, m) in self.modulus[..n].iter().enumerate() {
                coeffs[shift + i] -= &top * m;
            }
        }
        coeffs.resize(n, BigRational::zero());
        coeffs
    }

    fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        self.reduce(out)
    }

    // Inverse through the regular representation: solve L_a c = 1.
    fn inverse(&self, a: &[BigRational]) -> Option<Vec<BigRational>> {
        let n = self.degree();
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        let mut power = {
            let mut v = vec![BigRational::zero(); n];
            v[0] = BigRational::one();
            v
        };
        let x = {
            let mut v = vec![BigRational::zero(); n];
            if n > 1 {
                v[1] = BigRational::one();
                v
            } else {
                vec![-self.modulus[0].clone()]
            }
        };
        for _ in 0..n {
            cols.push(self.mul(a, &power));
            power = self.mul(&power, &x);
        }
        // augmented system rows
        let mut rows: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut r: Vec<BigRational> = cols.iter().map(|c| c[i].clone()).collect();
                r.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                r
            })
            .collect();
        for c in 0..n {
            let pivot = (c..n).find(|&r| !rows[r][c].is_zero())?;
            rows.swap(c, pivot);
            let inv = rows[c][c].recip();
            for v in rows[c].iter_mut() {
                *v *= &inv;
            }
            let pivot = rows[c].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != c && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                        *x -= &f * p;
                    }
                }
            }
        }
        Some(rows.into_iter().map(|r| r[n].clone()).collect())
    }
}

/// An exact base ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ScalarDomain {
    Rationals,
    PrimeField(u64),
    Integers,
    Extension(Arc<NumberField>),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

impl ScalarDomain {
    pub fn prime_field(p: u64) -> Result<Self> {
        ensure!(is_prime(p), Validation, "{p} is not prime");
        ensure!(p < (1 << 62), UnsupportedDomain, "prime {p} too large for word arithmetic");
        Ok(ScalarDomain::PrimeField(p))
    }

    pub fn extension(modulus: Vec<BigRational>, generator: &str) -> Result<Self> {
        Ok(ScalarDomain::Extension(Arc::new(NumberField::new(modulus, generator)?)))
    }

    /// `Q[x]/(x^2 - c)`.
    pub fn quadratic(c: i64, generator: &str) -> Result<Self> {
        Self::extension(
            vec![BigRational::from_integer((-c).into()), BigRational::zero(), BigRational::one()],
            generator,
        )
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, ScalarDomain::Integers)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            ScalarDomain::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ScalarDomain::PrimeField(_))
    }

    /// Whether 2 is a unit.
    pub fn two_invertible(&self) -> bool {
        self.is_field() && self.characteristic() != 2
    }

    pub fn require_field(&self, what: &str) -> Result<()> {
        ensure!(self.is_field(), UnsupportedDomain, "{what} needs a field, got {self}");
        Ok(())
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            ScalarDomain::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            ScalarDomain::Integers => Scalar::Integer(n.clone()),
            ScalarDomain::PrimeField(p) => {
                let v = n.mod_floor(&BigInt::from(*p)).to_u64().unwrap();
                Scalar::Modular { value: v, modulus: *p }
            }
            ScalarDomain::Extension(f) => {
                let mut coeffs = vec![BigRational::zero(); f.degree()];
                coeffs[0] = BigRational::from_integer(n.clone());
                Scalar::Algebraic(AlgebraicNumber { field: f.clone(), coeffs })
            }
        }
    }

    /// Image of a rational number; fails over the integers for non-integers
    /// and over `F_p` when p divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            ScalarDomain::Rationals => Ok(Scalar::Rational(q.clone())),
            ScalarDomain::Integers => {
                ensure!(q.is_integer(), Validation, "{q} is not an integer");
                Ok(Scalar::Integer(q.to_integer()))
            }
            ScalarDomain::PrimeField(_) => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                match den.inv() {
                    Some(inv) => Ok(&num * &inv),
                    None => bail!(Validation, "denominator of {q} vanishes in {self}"),
                }
            }
            ScalarDomain::Extension(f) => {
                let mut coeffs = vec![BigRational::zero(); f.degree()];
                coeffs[0] = q.clone();
                Ok(Scalar::Algebraic(AlgebraicNumber { field: f.clone(), coeffs }))
            }
        }
    }

    /// Element `c_0 + c_1 x + ...` of an extension field.
    pub fn from_coeffs(&self, coeffs: &[BigRational]) -> Result<Scalar> {
        match self {
            ScalarDomain::Extension(f) => {
                Ok(Scalar::Algebraic(AlgebraicNumber { field: f.clone(), coeffs: f.reduce(coeffs.to_vec()) }))
            }
            _ => {
                let mut acc = self.zero();
                for (i, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    ensure!(i == 0, Validation, "{self} has no generator");
                    acc = self.from_rational(c)?;
                }
                Ok(acc)
            }
        }
    }

    /// The generator `x` of an extension field.
    pub fn generator(&self) -> Option<Scalar> {
        match self {
            ScalarDomain::Extension(f) => {
                let mut c = vec![BigRational::zero(); f.degree() + 1];
                c[1] = BigRational::one();
                Some(Scalar::Algebraic(AlgebraicNumber { field: f.clone(), coeffs: f.reduce(c) }))
            }
            _ => None,
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (ScalarDomain::Rationals, Scalar::Rational(_)) => true,
            (ScalarDomain::Integers, Scalar::Integer(_)) => true,
            (ScalarDomain::PrimeField(p), Scalar::Modular { modulus, .. }) => p == modulus,
            (ScalarDomain::Extension(f), Scalar::Algebraic(a)) => **f == *a.field,
            _ => false,
        }
    }

    /// Parses `"3/7"`, `"-2"`, or for extensions a polynomial in the
    /// generator such as `"1/2*i + 3"`.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let var = match self {
            ScalarDomain::Extension(f) => f.generator().to_string(),
            _ => String::new(),
        };
        let coeffs = parse::parse_polynomial(text, if var.is_empty() { None } else { Some(&var) })?;
        self.from_coeffs(&coeffs)
    }

    /// Small pseudo-random element; rationals are drawn with numerators in
    /// `[-9, 9]` and occasional denominators up to 4.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        let small_rational = |rng: &mut R| -> BigRational {
            let num: i64 = rng.gen_range(-9..=9);
            let den: i64 = if rng.gen_bool(0.25) { rng.gen_range(1..=4) } else { 1 };
            BigRational::new(num.into(), den.into())
        };
        match self {
            ScalarDomain::Rationals => Scalar::Rational(small_rational(rng)),
            ScalarDomain::Integers => Scalar::Integer(BigInt::from(rng.gen_range(-9i64..=9))),
            ScalarDomain::PrimeField(p) => Scalar::Modular { value: rng.gen_range(0..*p), modulus: *p },
            ScalarDomain::Extension(f) => {
                let coeffs = (0..f.degree()).map(|_| small_rational(rng)).collect();
                Scalar::Algebraic(AlgebraicNumber { field: f.clone(), coeffs })
            }
        }
    }

    /// Every element of a prime field, in increasing order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            ScalarDomain::PrimeField(p) => {
                Some((0..*p).map(|v| Scalar::Modular { value: v, modulus: *p }).collect())
            }
            _ => None,
        }
    }
}

impl fmt::Display for ScalarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarDomain::Rationals => write!(f, "Q"),
            ScalarDomain::Integers => write!(f, "Z"),
            ScalarDomain::PrimeField(p) => write!(f, "F{p}"),
            ScalarDomain::Extension(nf) => {
                let poly = format_univariate(nf.modulus(), nf.generator());
                write!(f, "Q[{}]/({poly})", nf.generator())
            }
        }
    }
}

/// An element of a [`NumberField`], stored by coordinates in the power basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraicNumber {
    field: Arc<NumberField>,
    coeffs: Vec<BigRational>,
}

impl AlgebraicNumber {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }
}

/// An exact scalar.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Integer(BigInt),
    Modular { value: u64, modulus: u64 },
    Algebraic(AlgebraicNumber),
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar domain mismatch: {a} vs {b}")
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Integer(n) => n.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
            Scalar::Algebraic(a) => a.coeffs.iter().all(|c| c.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Integer(n) => n.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
            Scalar::Algebraic(a) => a.coeffs[0].is_one() && a.coeffs[1..].iter().all(|c| c.is_zero()),
        }
    }

    pub fn domain(&self) -> ScalarDomain {
        match self {
            Scalar::Rational(_) => ScalarDomain::Rationals,
            Scalar::Integer(_) => ScalarDomain::Integers,
            Scalar::Modular { modulus, .. } => ScalarDomain::PrimeField(*modulus),
            Scalar::Algebraic(a) => ScalarDomain::Extension(a.field.clone()),
        }
    }

    /// Multiplicative inverse; `None` for zero and for non-units of `Z`.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Rational(q) => Some(Scalar::Rational(q.recip())),
            Scalar::Integer(n) => {
                if n.abs().is_one() {
                    Some(Scalar::Integer(n.clone()))
                } else {
                    None
                }
            }
            Scalar::Modular { value, modulus } => {
                Some(Scalar::Modular { value: mod_pow(*value, modulus - 2, *modulus), modulus: *modulus })
            }
            Scalar::Algebraic(a) => a
                .field
                .inverse(&a.coeffs)
                .map(|coeffs| Scalar::Algebraic(AlgebraicNumber { field: a.field.clone(), coeffs })),
        }
    }

    /// Exact quotient `self / other`: field division, or exact integer
    /// division over `Z`.
    pub fn checked_div(&self, other: &Scalar) -> Option<Scalar> {
        match (self, other) {
            (Scalar::Integer(a), Scalar::Integer(b)) => {
                if b.is_zero() {
                    return None;
                }
                let (q, r) = a.div_rem(b);
                r.is_zero().then_some(Scalar::Integer(q))
            }
            _ => other.inv().map(|i| self * &i),
        }
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = self.domain().one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Rational value, if this scalar lies in the prime subring of `Q`,
    /// `Z`, or an extension.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(q) => Some(q.clone()),
            Scalar::Integer(n) => Some(BigRational::from_integer(n.clone())),
            Scalar::Modular { .. } => None,
            Scalar::Algebraic(a) => a.coeffs[1..].iter().all(|c| c.is_zero()).then(|| a.coeffs[0].clone()),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a + b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) if p == q => {
                Scalar::Modular { value: ((*a as u128 + *b as u128) % *p as u128) as u64, modulus: *p }
            }
            (Scalar::Algebraic(a), Scalar::Algebraic(b)) if a.field == b.field => Scalar::Algebraic(AlgebraicNumber {
                field: a.field.clone(),
                coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
            }),
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Integer(a) => Scalar::Integer(-a),
            Scalar::Modular { value, modulus } => {
                Scalar::Modular { value: (modulus - value) % modulus, modulus: *modulus }
            }
            Scalar::Algebraic(a) => Scalar::Algebraic(AlgebraicNumber {
                field: a.field.clone(),
                coeffs: a.coeffs.iter().map(|x| -x).collect(),
            }),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a - b),
            _ => self + &(-rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a * b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) if p == q => {
                Scalar::Modular { value: ((*a as u128 * *b as u128) % *p as u128) as u64, modulus: *p }
            }
            (Scalar::Algebraic(a), Scalar::Algebraic(b)) if a.field == b.field => Scalar::Algebraic(AlgebraicNumber {
                field: a.field.clone(),
                coeffs: a.field.mul(&a.coeffs, &b.coeffs),
            }),
            _ => mismatch(self, rhs),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

pub(crate) fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn format_univariate(coeffs: &[BigRational], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { "-" } else { "+" });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&format_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{mono}", format_rational(&abs)));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}", format_rational(q)),
            Scalar::Integer(n) => write!(f, "{n}"),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
            Scalar::Algebraic(a) => write!(f, "{}", format_univariate(&a.coeffs, a.field.generator())),
        }
    }
}
