//! The Weyl algebra W(d): the quotient of the free *-algebra by the
//! relations a_k a_{-k} - a_{-k} a_k = 1 and a_k a_l = a_l a_k (k != -l).
//! Elements are kept in normal-ordered canonical form (all adjoint
//! generators on the left), so equality is map equality. The exact
//! Bargmann action (a_k as d/dz_k, a_k^* as multiplication by z_k) plays
//! the role of the Schroedinger representation throughout.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::commutative::{CommutativePolynomial, Exponents};
use crate::error::{Error, Result};
use crate::linalg::{congruence_diagonalize, HermitianMatrix};
use crate::scalar::{GaussianRational, Rational};
use crate::star_poly::{join_terms, StarPolynomial, Word};

/// Normal-ordered basis monomial a_{-1}^{alpha_1}..a_{-d}^{alpha_d} *
/// a_1^{beta_1}..a_d^{beta_d}.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NormalMonomial {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
}

impl NormalMonomial {
    pub fn constant(d: usize) -> Self {
        NormalMonomial {
            alpha: vec![0; d],
            beta: vec![0; d],
        }
    }

    pub fn degree(&self) -> usize {
        self.alpha
            .iter()
            .chain(self.beta.iter())
            .map(|&e| e as usize)
            .sum()
    }

    /// (alpha, beta)^* = (beta, alpha); same-sign blocks commute internally,
    /// so the starred monomial is again normal-ordered.
    pub fn involution(&self) -> Self {
        NormalMonomial {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    fn to_word(&self) -> Word {
        let mut idx = Vec::with_capacity(self.degree());
        for (j, &e) in self.alpha.iter().enumerate() {
            for _ in 0..e {
                idx.push(-(j as i32 + 1));
            }
        }
        for (j, &e) in self.beta.iter().enumerate() {
            for _ in 0..e {
                idx.push(j as i32 + 1);
            }
        }
        Word::from_indices(idx)
    }
}

impl Ord for NormalMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.alpha.cmp(&other.alpha))
            .then_with(|| self.beta.cmp(&other.beta))
    }
}

impl PartialOrd for NormalMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Weyl-algebra element in canonical normal-ordered form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylElement {
    d: usize,
    terms: BTreeMap<NormalMonomial, GaussianRational>,
}

impl WeylElement {
    pub fn zero(d: usize) -> Self {
        WeylElement {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(d: usize) -> Self {
        Self::scalar(d, GaussianRational::one())
    }

    pub fn scalar(d: usize, c: GaussianRational) -> Self {
        let mut x = Self::zero(d);
        if !c.is_zero() {
            x.terms.insert(NormalMonomial::constant(d), c);
        }
        x
    }

    pub fn monomial(d: usize, m: NormalMonomial, c: GaussianRational) -> Self {
        let mut x = Self::zero(d);
        if !c.is_zero() {
            x.terms.insert(m, c);
        }
        x
    }

    /// The generator a_k (k > 0) or a_{-k} (k < 0) as a normal form.
    pub fn generator(d: usize, k: i32) -> Result<Self> {
        if k == 0 || k.unsigned_abs() as usize > d {
            return Err(Error::DimensionMismatch(format!(
                "generator index {k} out of range for d = {d}"
            )));
        }
        let mut m = NormalMonomial::constant(d);
        if k > 0 {
            m.beta[(k - 1) as usize] = 1;
        } else {
            m.alpha[(-k - 1) as usize] = 1;
        }
        Ok(Self::monomial(d, m, GaussianRational::one()))
    }

    /// N = a_1^* a_1 + ... + a_d^* a_d.
    pub fn number_operator(d: usize) -> Self {
        let mut x = Self::zero(d);
        for j in 0..d {
            let mut m = NormalMonomial::constant(d);
            m.alpha[j] = 1;
            m.beta[j] = 1;
            x.terms.insert(m, GaussianRational::one());
        }
        x
    }

    pub fn gen_count(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalMonomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &NormalMonomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: NormalMonomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_dim(&self, rhs: &Self) -> Result<()> {
        if self.d != rhs.d {
            return Err(Error::DimensionMismatch(format!(
                "generator counts {} vs {}",
                self.d, rhs.d
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        WeylElement {
            d: self.d,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.d);
        }
        WeylElement {
            d: self.d,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Product in normal form.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let mut memo = HashMap::new();
        let mut out = Self::zero(self.d);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let word = m1.to_word().concat(&m2.to_word());
                let nf = normal_order_word(self.d, word.indices(), &mut memo);
                let c = c1 * c2;
                for (m, x) in &nf.terms {
                    out.add_term(m.clone(), x * &c);
                }
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

    /// Termwise star; the result is already normal-ordered.
    pub fn involution(&self) -> Self {
        WeylElement {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.involution(), c.conj()))
                .collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.involution()
    }

    /// Total degree; None for the zero element.
    pub fn degree(&self) -> Option<usize> {
        self.terms.last_key_value().map(|(m, _)| m.degree())
    }

    /// Degree-j part under (alpha, beta) -> zb^alpha z^beta.
    pub fn graded_component(&self, j: usize) -> CommutativePolynomial {
        let mut p = CommutativePolynomial::zero(self.d);
        for (m, c) in &self.terms {
            if m.degree() == j {
                let e = Exponents {
                    z: m.beta.clone(),
                    zbar: m.alpha.clone(),
                };
                p = p
                    .add(&CommutativePolynomial::monomial(self.d, e, c.clone()))
                    .expect("matching dimension");
            }
        }
        p
    }

    /// Leading symbol: the graded component at the total degree.
    pub fn leading_symbol(&self) -> CommutativePolynomial {
        match self.degree() {
            Some(t) => self.graded_component(t),
            None => CommutativePolynomial::zero(self.d),
        }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items = self.terms.iter().rev().map(|(m, c)| {
            let mut factors = Vec::new();
            for (j, &e) in m.alpha.iter().enumerate() {
                if e == 1 {
                    factors.push(format!("a{}^*", j + 1));
                } else if e > 1 {
                    factors.push(format!("a{}^*^{}", j + 1, e));
                }
            }
            for (j, &e) in m.beta.iter().enumerate() {
                if e == 1 {
                    factors.push(format!("a{}", j + 1));
                } else if e > 1 {
                    factors.push(format!("a{}^{}", j + 1, e));
                }
            }
            (factors.join(" * "), c.clone())
        });
        write!(f, "{}", join_terms(items))
    }
}

/// Normal-order a word by structural recursion with memoized subwords:
/// the leftmost a_k a_{-l} adjacency is swapped (plus the contraction term
/// when k = l), which strictly reduces the inversion count.
fn normal_order_word(
    d: usize,
    word: &[i32],
    memo: &mut HashMap<Vec<i32>, WeylElement>,
) -> WeylElement {
    if let Some(hit) = memo.get(word) {
        return hit.clone();
    }
    let disorder = (0..word.len().saturating_sub(1))
        .find(|&i| word[i] > 0 && word[i + 1] < 0);
    let result = match disorder {
        None => {
            // all adjoints precede plain generators: read off (alpha, beta)
            let mut m = NormalMonomial::constant(d);
            for &k in word {
                if k > 0 {
                    m.beta[(k - 1) as usize] += 1;
                } else {
                    m.alpha[(-k - 1) as usize] += 1;
                }
            }
            WeylElement::monomial(d, m, GaussianRational::one())
        }
        Some(i) => {
            let mut swapped = word.to_vec();
            swapped.swap(i, i + 1);
            let mut res = normal_order_word(d, &swapped, memo);
            if word[i] == -word[i + 1] {
                // a_k a_{-k} = a_{-k} a_k + 1
                let mut contracted = word.to_vec();
                contracted.drain(i..=i + 1);
                let extra = normal_order_word(d, &contracted, memo);
                res = res.add(&extra).expect("same dimension");
            }
            res
        }
    };
    memo.insert(word.to_vec(), result.clone());
    result
}

/// Image of a free *-polynomial under the quotient map onto W(d), in
/// canonical normal-ordered form. A unital *-algebra homomorphism.
pub fn normalize(p: &StarPolynomial) -> WeylElement {
    let d = p.gen_count();
    let mut memo = HashMap::new();
    let mut out = WeylElement::zero(d);
    for (w, c) in p.terms() {
        let nf = normal_order_word(d, w.indices(), &mut memo);
        for (m, x) in &nf.terms {
            out.add_term(m.clone(), x * c);
        }
    }
    out
}

/// Product of shifted number operators prod_i (N + beta_i); the empty list
/// gives 1. These are the invertible "denominators" of Weyl certificates.
pub fn shifted_number_product(d: usize, shifts: &[Rational]) -> WeylElement {
    let mut acc = WeylElement::one(d);
    let n = WeylElement::number_operator(d);
    for b in shifts {
        let factor = n
            .add(&WeylElement::scalar(
                d,
                GaussianRational::from_rational(b.clone()),
            ))
            .expect("same dimension");
        acc = acc.mul(&factor).expect("same dimension");
    }
    acc
}

fn falling_factorial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= BigInt::from(n - j);
    }
    acc
}

fn factorial(exps: &[u32]) -> BigInt {
    let mut acc = BigInt::one();
    for &e in exps {
        for j in 2..=e {
            acc *= BigInt::from(j);
        }
    }
    acc
}

/// Exact Bargmann action: a_k acts as d/dz_k and a_k^* as multiplication by
/// z_k on polynomials in z only. An algebra homomorphism.
pub fn bargmann_apply(
    x: &WeylElement,
    f: &CommutativePolynomial,
) -> Result<CommutativePolynomial> {
    if x.gen_count() != f.var_count() {
        return Err(Error::DimensionMismatch(format!(
            "element over d = {}, polynomial over d = {}",
            x.gen_count(),
            f.var_count()
        )));
    }
    if !f.is_zbar_free() {
        return Err(Error::Invalid(
            "Bargmann action is defined on polynomials in z only".into(),
        ));
    }
    let d = x.gen_count();
    let mut out = CommutativePolynomial::zero(d);
    for (m, c) in x.terms() {
        for (e, fc) in f.terms() {
            // differentiate: beta tells how often each d/dz_k applies
            if e.z.iter().zip(&m.beta).any(|(g, b)| g < b) {
                continue;
            }
            let mut scale = BigInt::one();
            for j in 0..d {
                scale *= falling_factorial(e.z[j], m.beta[j]);
            }
            let mut exps = Exponents::constant(d);
            for j in 0..d {
                exps.z[j] = e.z[j] - m.beta[j] + m.alpha[j];
            }
            let coeff = &(c * fc)
                * &GaussianRational::from_rational(Rational::from_integer(scale));
            out = out.add(&CommutativePolynomial::monomial(d, exps, coeff))?;
        }
    }
    Ok(out)
}

/// All z-monomial exponent vectors with |gamma| <= t, in graded-lex order.
pub fn fock_basis(d: usize, t: usize) -> Vec<Vec<u32>> {
    fn extend(d: usize, left: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == d {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=left {
            prefix.push(e as u32);
            extend(d, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    for total in 0..=t {
        let mut layer = Vec::new();
        extend(d, total, &mut Vec::new(), &mut layer);
        layer.retain(|g| g.iter().map(|&e| e as usize).sum::<usize>() == total);
        layer.sort();
        raw.extend(layer);
    }
    raw
}

/// Exact finite-dimensional compression of the Bargmann form of a symmetric
/// element: H[b][g] = b! * (coefficient of z^b in c applied to z^g), over the
/// monomial basis of degree <= truncation.
#[derive(Clone, Debug)]
pub struct FockForm {
    pub truncation: usize,
    pub basis: Vec<Vec<u32>>,
    pub form: HermitianMatrix,
}

pub fn fock_form(c: &WeylElement, truncation: usize) -> Result<FockForm> {
    if !c.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let d = c.gen_count();
    let basis = fock_basis(d, truncation);
    let n = basis.len();
    let mut images = Vec::with_capacity(n);
    for gamma in &basis {
        let mono = CommutativePolynomial::monomial(
            d,
            Exponents {
                z: gamma.clone(),
                zbar: vec![0; d],
            },
            GaussianRational::one(),
        );
        images.push(bargmann_apply(c, &mono)?);
    }
    let mut rows = vec![vec![GaussianRational::zero(); n]; n];
    for (col, image) in images.iter().enumerate() {
        for (row, beta) in basis.iter().enumerate() {
            let e = Exponents {
                z: beta.clone(),
                zbar: vec![0; d],
            };
            let coeff = image.coefficient(&e);
            let fact = GaussianRational::from_rational(Rational::from_integer(factorial(beta)));
            rows[row][col] = &coeff * &fact;
        }
    }
    let matrix = crate::linalg::Matrix::from_rows(rows)?;
    let form = HermitianMatrix::new(matrix)
        .expect("Bargmann form of a symmetric element is Hermitian");
    Ok(FockForm {
        truncation,
        basis,
        form,
    })
}

/// Exact positivity witness from a Fock form.
#[derive(Clone, Debug, PartialEq)]
pub enum WitnessOutcome {
    /// phi with <pi(c) phi, phi> = value > 0, exactly.
    Witness {
        phi: CommutativePolynomial,
        value: Rational,
    },
    /// Inconclusive: no positive direction up to this truncation.
    NoneFound,
}

/// Search for phi with phi^dagger H phi > 0: first the basis diagonal, then
/// coordinate pairs, then exact congruence diagonalization (complete at the
/// given truncation).
pub fn positivity_witness(c: &WeylElement, truncation: usize) -> Result<WitnessOutcome> {
    let ff = fock_form(c, truncation)?;
    let d = c.gen_count();
    let n = ff.basis.len();
    let h = &ff.form;
    let mono = |gamma: &[u32], coeff: GaussianRational| {
        CommutativePolynomial::monomial(
            d,
            Exponents {
                z: gamma.to_vec(),
                zbar: vec![0; d],
            },
            coeff,
        )
    };

    // basis vectors
    for (j, gamma) in ff.basis.iter().enumerate() {
        let diag = h.at(j, j).re.clone();
        if diag.is_positive() {
            return Ok(WitnessOutcome::Witness {
                phi: mono(gamma, GaussianRational::one()),
                value: diag,
            });
        }
    }
    // coordinate pairs: an indefinite 2x2 principal block yields a rational
    // combination with positive value
    for j in 0..n {
        for k in j + 1..n {
            let a = h.at(j, j).re.clone();
            let dkk = h.at(k, k).re.clone();
            let off = h.at(j, k).clone();
            let hh = off.abs_sq();
            if hh <= &a * &dkk {
                continue;
            }
            let (t, value) = if dkk.is_negative() {
                let s = -dkk.recip();
                let value = (&(&a * &dkk) - &hh) / dkk.clone();
                (
                    off.conj().scale_rat(&s),
                    value,
                )
            } else {
                // dkk = 0 here (positive diagonals were caught above)
                let s = (Rational::one() - &a) / (&hh + &hh);
                ((off.conj()).scale_rat(&s), Rational::one())
            };
            let phi = mono(&ff.basis[j], GaussianRational::one())
                .add(&mono(&ff.basis[k], t))
                .expect("same dimension");
            return Ok(WitnessOutcome::Witness { phi, value });
        }
    }
    // exact fallback: congruence diagonalization sees every positive direction
    let (p, diag) = congruence_diagonalize(h);
    for (j, v) in diag.iter().enumerate() {
        if v.is_positive() {
            let mut phi = CommutativePolynomial::zero(d);
            for (col, gamma) in ff.basis.iter().enumerate() {
                let coeff = p.at(j, col).conj();
                if !coeff.is_zero() {
                    phi = phi.add(&mono(gamma, coeff)).expect("same dimension");
                }
            }
            return Ok(WitnessOutcome::Witness {
                phi,
                value: v.clone(),
            });
        }
    }
    Ok(WitnessOutcome::NoneFound)
}

/// Evaluate a witness against the Fock form it came from (test support and
/// report generation): phi^dagger H phi as an exact rational.
pub fn witness_value(ff: &FockForm, phi: &CommutativePolynomial) -> Result<Rational> {
    let d = ff.basis.first().map(|b| b.len()).unwrap_or(0);
    let mut coords = vec![GaussianRational::zero(); ff.basis.len()];
    for (e, c) in phi.terms() {
        if e.zbar.iter().any(|&x| x != 0) {
            return Err(Error::Invalid("witness must be a polynomial in z".into()));
        }
        let pos = ff
            .basis
            .iter()
            .position(|g| g == &e.z)
            .ok_or_else(|| Error::Invalid("witness exceeds the truncation".into()))?;
        coords[pos] = c.clone();
        let _ = d;
    }
    let v = ff.form.as_matrix().quadratic_form(&coords)?;
    debug_assert!(v.is_real());
    Ok(v.re)
}
