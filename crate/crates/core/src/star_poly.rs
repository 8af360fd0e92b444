//! The free unital *-algebra over Q(i) on generators a_1..a_d and their
//! adjoints. A positive index k stands for a_k, a negative index for
//! a_{-k} = a_k^*; the involution reverses words, negates indices and
//! conjugates coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// Signed generator index: k in {-d..-1, 1..d}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GeneratorIndex(i32);

impl GeneratorIndex {
    pub fn new(k: i32, d: usize) -> Result<Self> {
        if k == 0 || k.unsigned_abs() as usize > d {
            return Err(Error::DimensionMismatch(format!(
                "generator index {k} out of range for d = {d}"
            )));
        }
        Ok(GeneratorIndex(k))
    }

    pub fn value(self) -> i32 {
        self.0
    }
}

/// Product of generators; the empty word is 1. Ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(k: i32) -> Self {
        Word(vec![k])
    }

    pub fn from_indices(idx: Vec<i32>) -> Self {
        Word(idx)
    }

    pub fn indices(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, rhs: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&rhs.0);
        Word(v)
    }

    /// Reversal with index negation: (a_j a_k)^* = a_{-k} a_{-j}.
    pub fn involution(&self) -> Word {
        Word(self.0.iter().rev().map(|k| -k).collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Free *-algebra element: finite word -> coefficient map, no zero
/// coefficients stored, so map equality is element equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StarPolynomial {
    d: usize,
    terms: BTreeMap<Word, GaussianRational>,
}

impl StarPolynomial {
    pub fn zero(d: usize) -> Self {
        StarPolynomial {
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
            p.terms.insert(Word::empty(), c);
        }
        p
    }

    /// The generator a_k (k > 0) or a_{-k} = a_k^* (k < 0).
    pub fn generator(d: usize, k: i32) -> Result<Self> {
        let idx = GeneratorIndex::new(k, d)?;
        let mut p = Self::zero(d);
        p.terms.insert(Word::single(idx.value()), GaussianRational::one());
        Ok(p)
    }

    pub fn from_terms(
        d: usize,
        terms: impl IntoIterator<Item = (Word, GaussianRational)>,
    ) -> Self {
        let mut p = Self::zero(d);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn gen_count(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> GaussianRational {
        self.terms.get(w).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: Word, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        StarPolynomial {
            d: self.d,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.d);
        }
        StarPolynomial {
            d: self.d,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Bilinear extension of word concatenation.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let mut out = Self::zero(self.d);
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.concat(v), a * b);
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

    /// Antilinear antihomomorphism with involution^2 = identity.
    pub fn involution(&self) -> Self {
        StarPolynomial {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.involution(), c.conj()))
                .collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.involution()
    }

    /// Total degree; `None` plays the role of minus infinity for 0.
    pub fn free_degree(&self) -> Option<usize> {
        self.terms.last_key_value().map(|(w, _)| w.degree())
    }
}

fn word_factors(w: &Word) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut run: Option<(i32, usize)> = None;
    let flush = |parts: &mut Vec<String>, run: Option<(i32, usize)>| {
        if let Some((k, cnt)) = run {
            let base = if k < 0 {
                format!("a{}^*", -k)
            } else {
                format!("a{k}")
            };
            if cnt > 1 {
                parts.push(format!("{base}^{cnt}"));
            } else {
                parts.push(base);
            }
        }
    };
    for &k in w.indices() {
        match run {
            Some((rk, cnt)) if rk == k => run = Some((rk, cnt + 1)),
            other => {
                flush(&mut parts, other);
                run = Some((k, 1));
            }
        }
    }
    flush(&mut parts, run);
    parts.join(" * ")
}

/// Shared term joiner: renders a sum of (monomial-string, coefficient) pairs
/// in a form the expression parser accepts back.
pub(crate) fn join_terms(items: impl Iterator<Item = (String, GaussianRational)>) -> String {
    let mut out = String::new();
    for (word, coeff) in items {
        debug_assert!(!coeff.is_zero());
        let (negative, fragment) = if word.is_empty() {
            // constant term: print the scalar itself
            let s = coeff.to_exact_string();
            match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            }
        } else if coeff.is_real() {
            let mag = if coeff.re < num_traits::Zero::zero() {
                -coeff.re.clone()
            } else {
                coeff.re.clone()
            };
            let frag = if num_traits::One::is_one(&mag) {
                word
            } else {
                format!("{mag}*{word}")
            };
            (coeff.re < num_traits::Zero::zero(), frag)
        } else if num_traits::Zero::is_zero(&coeff.re) {
            let mag = if coeff.im < num_traits::Zero::zero() {
                -coeff.im.clone()
            } else {
                coeff.im.clone()
            };
            let frag = if num_traits::One::is_one(&mag) {
                format!("i*{word}")
            } else {
                format!("{mag}*i*{word}")
            };
            (coeff.im < num_traits::Zero::zero(), frag)
        } else {
            (false, format!("({})*{word}", coeff.to_exact_string()))
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
            out.push_str(&fragment);
        } else {
            out.push_str(if negative { " - " } else { " + " });
            out.push_str(&fragment);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for StarPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items = self
            .terms
            .iter()
            .rev()
            .map(|(w, c)| (word_factors(w), c.clone()));
        write!(f, "{}", join_terms(items))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn gen(k: i32) -> StarPolynomial {
        StarPolynomial::generator(2, k).unwrap()
    }

    #[test]
    fn free_product_of_conjugates() {
        // (a1 + 1)(a1 - 1) = a1^2 - 1 (a1 commutes with itself)
        let a1 = gen(1);
        let one = StarPolynomial::one(2);
        let p = a1.add(&one).unwrap();
        let q = a1.sub(&one).unwrap();
        let prod = p.mul(&q).unwrap();
        let expected = a1.mul(&a1).unwrap().sub(&one).unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn one_is_identity() {
        let p = gen(1).add(&gen(-2)).unwrap().scale(&GaussianRational::i());
        assert_eq!(StarPolynomial::one(2).mul(&p).unwrap(), p);
        assert_eq!(p.mul(&StarPolynomial::one(2)).unwrap(), p);
    }

    #[test]
    fn square_of_symmetric_sum_has_four_words() {
        // (a1 + a1^*)^2 = a1 a1 + a1 a1^* + a1^* a1 + a1^* a1^*, all distinct
        let s = gen(1).add(&gen(-1)).unwrap();
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq.terms().count(), 4);
        for (_, c) in sq.terms() {
            assert_eq!(*c, GaussianRational::one());
        }
        assert_eq!(
            sq.coefficient(&Word::from_indices(vec![1, -1])),
            GaussianRational::one()
        );
        assert_eq!(
            sq.coefficient(&Word::from_indices(vec![-1, 1])),
            GaussianRational::one()
        );
    }

    #[test]
    fn involution_examples() {
        // (a1 a2)^* = a2^* a1^* = a_{-2} a_{-1}
        let p = gen(1).mul(&gen(2)).unwrap();
        let expected = gen(-2).mul(&gen(-1)).unwrap();
        assert_eq!(p.involution(), expected);

        // (i*1)^* = -i*1
        let iu = StarPolynomial::scalar(2, GaussianRational::i());
        assert_eq!(
            iu.involution(),
            StarPolynomial::scalar(2, -GaussianRational::i())
        );

        // a1 + a1^* is symmetric
        let s = gen(1).add(&gen(-1)).unwrap();
        assert!(s.is_symmetric());
    }

    #[test]
    fn symmetry_of_a1_a1star() {
        // word (1,-1): reversal gives (-1,1), negation gives (1,-1) again
        let p = gen(1).mul(&gen(-1)).unwrap();
        assert!(p.is_symmetric());
    }

    #[test]
    fn free_degree_examples() {
        assert_eq!(StarPolynomial::one(2).free_degree(), Some(0));
        assert_eq!(StarPolynomial::zero(2).free_degree(), None);
        let p = gen(1)
            .mul(&gen(2))
            .unwrap()
            .mul(&gen(-1))
            .unwrap()
            .add(&gen(1))
            .unwrap();
        assert_eq!(p.free_degree(), Some(3));
    }

    #[test]
    fn display_is_parseable_shape() {
        let p = gen(-1)
            .mul(&gen(-1))
            .unwrap()
            .mul(&gen(1))
            .unwrap()
            .scale(&GaussianRational::from_rational(rat(1, 2)))
            .add(&StarPolynomial::scalar(2, GaussianRational::new(rat(1, 1), rat(1, 1))))
            .unwrap();
        assert_eq!(p.to_string(), "1/2*a1^*^2 * a1 + 1+i");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = StarPolynomial> {
            proptest::collection::vec(
                (
                    proptest::collection::vec((-2i32..=2).prop_filter("nonzero", |k| *k != 0), 0..4),
                    (-3i64..=3, 1i64..=2, -3i64..=3, 1i64..=2),
                ),
                0..5,
            )
            .prop_map(|raw| {
                StarPolynomial::from_terms(
                    2,
                    raw.into_iter().map(|(idx, (a, b, c, d))| {
                        (
                            Word::from_indices(idx),
                            GaussianRational::new(rat(a, b), rat(c, d)),
                        )
                    }),
                )
            })
        }

        proptest! {
            #[test]
            fn involution_is_antihomomorphism(p in arb_poly(), q in arb_poly()) {
                let lhs = p.mul(&q).unwrap().involution();
                let rhs = q.involution().mul(&p.involution()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn involution_is_an_involution(p in arb_poly()) {
                prop_assert_eq!(p.involution().involution(), p);
            }

            #[test]
            fn hermitian_combinations_are_symmetric(p in arb_poly()) {
                prop_assert!(p.add(&p.involution()).unwrap().is_symmetric());
                prop_assert!(p.mul(&p.involution()).unwrap().is_symmetric());
            }

            #[test]
            fn degree_is_additive(p in arb_poly(), q in arb_poly()) {
                prop_assume!(!p.is_zero() && !q.is_zero());
                let prod = p.mul(&q).unwrap();
                prop_assert_eq!(
                    prod.free_degree(),
                    Some(p.free_degree().unwrap() + q.free_degree().unwrap())
                );
            }
        }
    }
}
