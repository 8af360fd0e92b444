//! Commutative polynomials over Q(i) in d variables z_1..z_d together with
//! their formal conjugates zb_1..zb_d. Two involutions matter here: the
//! symbol conjugation (swap z and zb, conjugate coefficients), used for
//! leading symbols of Weyl elements, and the coefficient-only conjugation
//! that makes Q(i)[x_1..x_d] a *-ring with every variable symmetric.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Rational};
use crate::star_poly::join_terms;

/// Exponent pair: powers of z and of zb, each of fixed length d.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Exponents {
    pub z: Vec<u32>,
    pub zbar: Vec<u32>,
}

impl Exponents {
    pub fn constant(d: usize) -> Self {
        Exponents {
            z: vec![0; d],
            zbar: vec![0; d],
        }
    }

    pub fn degree(&self) -> usize {
        self.z.iter().chain(self.zbar.iter()).map(|&e| e as usize).sum()
    }

    fn add(&self, rhs: &Self) -> Self {
        Exponents {
            z: self.z.iter().zip(&rhs.z).map(|(a, b)| a + b).collect(),
            zbar: self
                .zbar
                .iter()
                .zip(&rhs.zbar)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn swap(&self) -> Self {
        Exponents {
            z: self.zbar.clone(),
            zbar: self.z.clone(),
        }
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.z.cmp(&other.z))
            .then_with(|| self.zbar.cmp(&other.zbar))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommutativePolynomial {
    d: usize,
    terms: BTreeMap<Exponents, GaussianRational>,
}

impl CommutativePolynomial {
    pub fn zero(d: usize) -> Self {
        CommutativePolynomial {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(d: usize) -> Self {
        Self::scalar(d, GaussianRational::one())
    }

    pub fn scalar(d: usize, c: GaussianRational) -> Self {
        let mut p = Self::zero(d);
        if !c.is_zero() {
            p.terms.insert(Exponents::constant(d), c);
        }
        p
    }

    /// The variable z_j (0-based).
    pub fn variable(d: usize, j: usize) -> Result<Self> {
        if j >= d {
            return Err(Error::DimensionMismatch(format!(
                "variable index {j} out of range for d = {d}"
            )));
        }
        let mut e = Exponents::constant(d);
        e.z[j] = 1;
        let mut p = Self::zero(d);
        p.terms.insert(e, GaussianRational::one());
        Ok(p)
    }

    /// The conjugate variable zb_j (0-based).
    pub fn conj_variable(d: usize, j: usize) -> Result<Self> {
        Ok(Self::variable(d, j)?.conj_symbol())
    }

    pub fn monomial(d: usize, e: Exponents, c: GaussianRational) -> Self {
        let mut p = Self::zero(d);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn var_count(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponents) -> GaussianRational {
        self.terms.get(e).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zbar_free(&self) -> bool {
        self.terms.keys().all(|e| e.zbar.iter().all(|&x| x == 0))
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.last_key_value().map(|(e, _)| e.degree())
    }

    fn add_term(&mut self, e: Exponents, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, rhs: &Self) -> Result<()> {
        if self.d != rhs.d {
            return Err(Error::DimensionMismatch(format!(
                "variable counts {} vs {}",
                self.d, rhs.d
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        CommutativePolynomial {
            d: self.d,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.d);
        }
        CommutativePolynomial {
            d: self.d,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let mut out = Self::zero(self.d);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.d);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Symbol conjugation: swaps z with zb and conjugates coefficients.
    pub fn conj_symbol(&self) -> Self {
        CommutativePolynomial {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.swap(), c.conj()))
                .collect(),
        }
    }

    /// The *-ring involution of Q(i)[x_1..x_d] with trivial action on the
    /// variables: coefficients are conjugated, exponents untouched.
    pub fn star_trivial(&self) -> Self {
        CommutativePolynomial {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.conj()))
                .collect(),
        }
    }

    /// Evaluate with zb_j bound to the conjugate of z_j.
    pub fn eval_conjugate(&self, z: &[GaussianRational]) -> Result<GaussianRational> {
        if z.len() != self.d {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, polynomial has {}",
                z.len(),
                self.d
            )));
        }
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for j in 0..self.d {
                for _ in 0..e.z[j] {
                    term *= &z[j];
                }
                for _ in 0..e.zbar[j] {
                    term *= &z[j].conj();
                }
            }
            acc += &term;
        }
        Ok(acc)
    }

    /// Render with ring-variable names x1..xd; requires a zb-free polynomial.
    pub fn to_ring_string(&self) -> String {
        debug_assert!(self.is_zbar_free());
        self.render(&|j| format!("x{}", j + 1), &|j| format!("xb{}", j + 1))
    }

    /// Render with symbol names z1..zd / zb1..zbd.
    pub fn to_symbol_string(&self) -> String {
        self.render(&|j| format!("z{}", j + 1), &|j| format!("zb{}", j + 1))
    }

    fn render(&self, zname: &dyn Fn(usize) -> String, zbname: &dyn Fn(usize) -> String) -> String {
        let items = self.terms.iter().rev().map(|(e, c)| {
            let mut factors: Vec<String> = Vec::new();
            for j in 0..self.d {
                if e.z[j] == 1 {
                    factors.push(zname(j));
                } else if e.z[j] > 1 {
                    factors.push(format!("{}^{}", zname(j), e.z[j]));
                }
            }
            for j in 0..self.d {
                if e.zbar[j] == 1 {
                    factors.push(zbname(j));
                } else if e.zbar[j] > 1 {
                    factors.push(format!("{}^{}", zbname(j), e.zbar[j]));
                }
            }
            (factors.join(" * "), c.clone())
        });
        join_terms(items)
    }
}

impl fmt::Display for CommutativePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zbar_free() {
            write!(f, "{}", self.to_ring_string())
        } else {
            write!(f, "{}", self.to_symbol_string())
        }
    }
}

// ---- univariate helpers (used by the localization module) ----

/// Degree of a univariate zb-free polynomial; None for 0.
pub fn univariate_degree(p: &CommutativePolynomial) -> Option<usize> {
    debug_assert!(p.var_count() == 1 && p.is_zbar_free());
    p.total_degree()
}

/// Leading coefficient of a univariate zb-free polynomial.
pub fn univariate_leading(p: &CommutativePolynomial) -> GaussianRational {
    p.terms()
        .last()
        .map(|(_, c)| c.clone())
        .unwrap_or_else(GaussianRational::zero)
}

/// Exact division with remainder in Q(i)[x]: returns (q, r) with
/// a = q*b + r and deg r < deg b.
pub fn univariate_divrem(
    a: &CommutativePolynomial,
    b: &CommutativePolynomial,
) -> Result<(CommutativePolynomial, CommutativePolynomial)> {
    if b.is_zero() {
        return Err(Error::Invalid("polynomial division by zero".into()));
    }
    debug_assert!(a.var_count() == 1 && b.var_count() == 1);
    let mut rem = a.clone();
    let mut quo = CommutativePolynomial::zero(1);
    let db = univariate_degree(b).unwrap();
    let lb = univariate_leading(b);
    while let Some(dr) = univariate_degree(&rem) {
        if dr < db {
            break;
        }
        let lr = univariate_leading(&rem);
        let c = &lr * &lb.inv()?;
        let mut e = Exponents::constant(1);
        e.z[0] = (dr - db) as u32;
        let t = CommutativePolynomial::monomial(1, e, c);
        quo = quo.add(&t)?;
        rem = rem.sub(&t.mul(b)?)?;
    }
    Ok((quo, rem))
}

/// Monic gcd in Q(i)[x] by the Euclidean algorithm.
pub fn univariate_gcd(
    a: &CommutativePolynomial,
    b: &CommutativePolynomial,
) -> Result<CommutativePolynomial> {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let (_, r) = univariate_divrem(&x, &y)?;
        x = y;
        y = r;
    }
    if x.is_zero() {
        return Ok(x);
    }
    let lead = univariate_leading(&x);
    Ok(x.scale(&lead.inv()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn x() -> CommutativePolynomial {
        CommutativePolynomial::variable(1, 0).unwrap()
    }

    fn c(n: i64) -> CommutativePolynomial {
        CommutativePolynomial::scalar(1, GaussianRational::from_int(n))
    }

    #[test]
    fn ring_ops() {
        // (x+1)^2 = x^2 + 2x + 1
        let p = x().add(&c(1)).unwrap();
        let sq = p.pow(2).unwrap();
        let expected = x()
            .pow(2)
            .unwrap()
            .add(&x().scale(&GaussianRational::from_int(2)))
            .unwrap()
            .add(&c(1))
            .unwrap();
        assert_eq!(sq, expected);
        assert_eq!(sq.total_degree(), Some(2));
        assert_eq!(sq.to_ring_string(), "x1^2 + 2*x1 + 1");
    }

    #[test]
    fn symbol_conjugation_swaps() {
        let d = 2;
        let z1 = CommutativePolynomial::variable(d, 0).unwrap();
        let zb2 = CommutativePolynomial::conj_variable(d, 1).unwrap();
        let p = z1.scale(&GaussianRational::i()).add(&zb2).unwrap();
        let q = p.conj_symbol();
        let zb1 = CommutativePolynomial::conj_variable(d, 0).unwrap();
        let z2 = CommutativePolynomial::variable(d, 1).unwrap();
        let expected = zb1.scale(&-GaussianRational::i()).add(&z2).unwrap();
        assert_eq!(q, expected);
        assert_eq!(q.conj_symbol(), p);
    }

    #[test]
    fn eval_with_conjugates() {
        // z*zb evaluated at z = 1+i equals |1+i|^2 = 2
        let d = 1;
        let z = CommutativePolynomial::variable(d, 0).unwrap();
        let zb = CommutativePolynomial::conj_variable(d, 0).unwrap();
        let p = z.mul(&zb).unwrap();
        let pt = GaussianRational::new(rat_int(1), rat_int(1));
        assert_eq!(
            p.eval_conjugate(&[pt]).unwrap(),
            GaussianRational::from_int(2)
        );
    }

    #[test]
    fn divrem_and_gcd() {
        // (x^3) / (x^2): q = x, r = 0; gcd(x^3, x^2) = x^2
        let a = x().pow(3).unwrap();
        let b = x().pow(2).unwrap();
        let (q, r) = univariate_divrem(&a, &b).unwrap();
        assert_eq!(q, x());
        assert!(r.is_zero());
        assert_eq!(univariate_gcd(&a, &b).unwrap(), b);

        // (x^2 + 1) = (x)(x) + 1
        let a = x().pow(2).unwrap().add(&c(1)).unwrap();
        let (q, r) = univariate_divrem(&a, &x()).unwrap();
        assert_eq!(q, x());
        assert_eq!(r, c(1));
        // gcd with scaled argument is monic
        let g = univariate_gcd(
            &a.scale(&GaussianRational::from_rational(rat(3, 7))),
            &CommutativePolynomial::zero(1),
        )
        .unwrap();
        assert_eq!(g, a);
    }
}
