//! Exact dense linear algebra over the Gaussian rationals: general square
//! matrices, Hermitian matrices, the PSD decision with exact witnesses,
//! congruence diagonalization and the weighted-square (LDL*) decomposition.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Rational};

/// Square matrix over Q(i), row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    entries: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix {
            n,
            entries: vec![GaussianRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for j in 0..n {
            m.set(j, j, GaussianRational::one());
        }
        m
    }

    /// Matrix unit E_{jk}: 1 in entry (j,k), zero elsewhere.
    pub fn unit(n: usize, j: usize, k: usize) -> Self {
        let mut m = Self::zero(n);
        m.set(j, k, GaussianRational::one());
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "expected {n} columns, found {}",
                    row.len()
                )));
            }
            entries.extend(row.iter().cloned());
        }
        Ok(Matrix { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn at(&self, j: usize, k: usize) -> &GaussianRational {
        &self.entries[j * self.n + k]
    }

    pub fn set(&mut self, j: usize, k: usize, v: GaussianRational) {
        self.entries[j * self.n + k] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_hermitian(&self) -> bool {
        for j in 0..self.n {
            for k in j..self.n {
                if *self.at(j, k) != self.at(k, j).conj() {
                    return false;
                }
            }
        }
        true
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let mut out = Matrix::zero(self.n);
        for j in 0..self.n {
            for k in 0..self.n {
                out.set(k, j, self.at(j, k).conj());
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_dim(rhs)?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Matrix {
            n: self.n,
            entries,
        })
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_dim(rhs)?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Matrix {
            n: self.n,
            entries,
        })
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Matrix {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_dim(rhs)?;
        let n = self.n;
        let mut out = Matrix::zero(n);
        for j in 0..n {
            for k in 0..n {
                let mut acc = GaussianRational::zero();
                for l in 0..n {
                    if !self.at(j, l).is_zero() && !rhs.at(l, k).is_zero() {
                        acc += &(self.at(j, l) * rhs.at(l, k));
                    }
                }
                out.set(j, k, acc);
            }
        }
        Ok(out)
    }

    /// Exact determinant by fraction-full Gaussian elimination.
    pub fn determinant(&self) -> GaussianRational {
        let n = self.n;
        let mut m = self.clone();
        let mut det = GaussianRational::one();
        for j in 0..n {
            let pivot_row = (j..n).find(|&r| !m.at(r, j).is_zero());
            let Some(p) = pivot_row else {
                return GaussianRational::zero();
            };
            if p != j {
                for c in 0..n {
                    let tmp = m.at(p, c).clone();
                    m.set(p, c, m.at(j, c).clone());
                    m.set(j, c, tmp);
                }
                det = -det;
            }
            let piv = m.at(j, j).clone();
            det *= &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for r in j + 1..n {
                let f = m.at(r, j) * &inv;
                if f.is_zero() {
                    continue;
                }
                for c in j..n {
                    let upd = &(m.at(r, c).clone()) - &(&f * m.at(j, c));
                    m.set(r, c, upd);
                }
            }
        }
        det
    }

    /// v^dagger A v, exact.
    pub fn quadratic_form(&self, v: &[GaussianRational]) -> Result<GaussianRational> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} vs matrix dimension {}",
                v.len(),
                self.n
            )));
        }
        let mut acc = GaussianRational::zero();
        for j in 0..self.n {
            for k in 0..self.n {
                if self.at(j, k).is_zero() {
                    continue;
                }
                acc += &(&(&v[j].conj() * self.at(j, k)) * &v[k]);
            }
        }
        Ok(acc)
    }

    /// Plain text grid form: one row per line, entries whitespace-separated.
    pub fn parse_grid(text: &str) -> Result<Matrix> {
        let rows: Vec<Vec<GaussianRational>> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(GaussianRational::parse)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Err(Error::Invalid("empty matrix".into()));
        }
        Matrix::from_rows(rows)
    }

    fn check_dim(&self, rhs: &Matrix) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {}",
                self.n, rhs.n
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.n {
            for k in 0..self.n {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(j, k))?;
            }
            if j + 1 < self.n {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix({}x{})[\n{}\n]", self.n, self.n, self)
    }
}

/// Square matrix equal to its conjugate transpose; diagonal entries are real.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HermitianMatrix(Matrix);

impl HermitianMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_hermitian() {
            return Err(Error::Invalid("matrix is not hermitian".into()));
        }
        Ok(HermitianMatrix(m))
    }

    /// Build from the upper triangle (j <= k); the lower triangle is filled
    /// by conjugation. Errors if a diagonal value has an imaginary part.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Result<Self> {
        let mut m = Matrix::zero(n);
        for j in 0..n {
            for k in j..n {
                let v = f(j, k);
                if j == k && !v.is_real() {
                    return Err(Error::Invalid(format!(
                        "diagonal entry ({j},{j}) = {v} is not real"
                    )));
                }
                m.set(k, j, v.conj());
                m.set(j, k, v);
            }
        }
        Ok(HermitianMatrix(m))
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let n = values.len();
        let mut m = Matrix::zero(n);
        for (j, v) in values.iter().enumerate() {
            m.set(j, j, GaussianRational::from_rational(v.clone()));
        }
        HermitianMatrix(m)
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn at(&self, j: usize, k: usize) -> &GaussianRational {
        self.0.at(j, k)
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }
}

/// Outcome of the exact PSD decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsdOutcome {
    Psd,
    /// Witness v with v^dagger A v < 0, exactly.
    NotPsd(Vec<GaussianRational>),
}

impl PsdOutcome {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdOutcome::Psd)
    }
}

/// Hermitian pivoting pass shared by `psd_check` and `ldlt_decompose`.
///
/// Walks the diagonal: a negative pivot or a zero pivot with a nonzero row
/// yields an exact negativity witness; a positive pivot contributes a
/// weighted-square term and the elimination continues on the Schur
/// complement.
fn psd_pivoting(a: &HermitianMatrix) -> std::result::Result<Vec<(Rational, Vec<GaussianRational>)>, Vec<GaussianRational>> {
    let n = a.dim();
    let mut s = a.as_matrix().clone();
    // cumulative transform t with s = t * a * t^dagger; witnesses in current
    // coordinates map back through t^dagger
    let mut t = Matrix::identity(n);
    let mut terms = Vec::new();

    let back_map = |t: &Matrix, v: &[(usize, GaussianRational)]| -> Vec<GaussianRational> {
        let mut w = vec![GaussianRational::zero(); n];
        for (j, c) in v {
            for a_idx in 0..n {
                w[a_idx] += &(&t.at(*j, a_idx).conj() * c);
            }
        }
        w
    };

    for j in 0..n {
        let d = s.at(j, j).clone();
        debug_assert!(d.is_real(), "hermitian congruence kept diagonal real");
        let d = d.re;
        if d.is_negative() {
            return Err(back_map(&t, &[(j, GaussianRational::one())]));
        }
        if d.is_zero() {
            // zero pivot: a nonzero entry in the trailing row refutes PSD
            if let Some(k) = (j + 1..n).find(|&k| !s.at(j, k).is_zero()) {
                let h = s.at(j, k).abs_sq();
                let dk = s.at(k, k).re.clone();
                let scale = if dk.is_positive() {
                    dk.recip()
                } else {
                    Rational::from_integer(1.into())
                };
                // v = e_j - scale*conj(S_jk) e_k gives v^dagger S v = -2*scale*h + scale^2*h*dk < 0
                let tk = -(&GaussianRational::from_rational(scale) * &s.at(j, k).conj());
                debug_assert!({
                    let val = s
                        .quadratic_form(&{
                            let mut v = vec![GaussianRational::zero(); n];
                            v[j] = GaussianRational::one();
                            v[k] = tk.clone();
                            v
                        })
                        .unwrap();
                    let _ = h;
                    val.is_real() && val.re.is_negative()
                });
                return Err(back_map(&t, &[(j, GaussianRational::one()), (k, tk)]));
            }
            continue; // zero row: contributes nothing
        }
        // positive pivot: record the square and eliminate
        let inv = GaussianRational::from_rational(d.recip());
        let factors: Vec<GaussianRational> =
            (j + 1..n).map(|k| s.at(k, j) * &inv).collect();
        let mut col = vec![GaussianRational::zero(); n];
        col[j] = GaussianRational::one();
        for (off, f) in factors.iter().enumerate() {
            col[j + 1 + off] = f.clone();
        }
        terms.push((d.clone(), col));
        let dg = GaussianRational::from_rational(d);
        for k in j + 1..n {
            let fk = factors[k - j - 1].clone();
            for l in j + 1..n {
                let fl = &factors[l - j - 1];
                if fk.is_zero() || fl.is_zero() {
                    continue;
                }
                let upd = &s.at(k, l).clone() - &(&(&fk * &fl.conj()) * &dg);
                s.set(k, l, upd);
            }
            s.set(k, j, GaussianRational::zero());
            s.set(j, k, GaussianRational::zero());
            // t <- L t with L = I - f_k E_{kj}
            if !fk.is_zero() {
                for c in 0..n {
                    let upd = &t.at(k, c).clone() - &(&fk * t.at(j, c));
                    t.set(k, c, upd);
                }
            }
        }
    }
    Ok(terms)
}

/// Exact PSD decision. Total on Hermitian input; a `NotPsd` verdict carries a
/// vector v with v^dagger A v < 0, exactly.
pub fn psd_check(a: &HermitianMatrix) -> PsdOutcome {
    match psd_pivoting(a) {
        Ok(_) => PsdOutcome::Psd,
        Err(w) => PsdOutcome::NotPsd(w),
    }
}

/// Weighted-square decomposition A = sum_j w_j c_j c_j^dagger of a PSD
/// matrix, with positive rational weights and at most n terms. Fails with
/// `NotPsd` when the input is not PSD (same pivoting pass as `psd_check`).
pub fn ldlt_decompose(a: &HermitianMatrix) -> Result<Vec<(Rational, Vec<GaussianRational>)>> {
    psd_pivoting(a).map_err(|_| Error::NotPsd)
}

/// Exact congruence diagonalization: returns (P, D) with P*A*P^dagger = D,
/// P invertible and D real diagonal. Zero pivots are repaired by swapping in
/// a nonzero trailing diagonal entry, or failing that by a row addition
/// e_j += e_k (or e_j += i*e_k) on a nonzero off-diagonal entry.
pub fn congruence_diagonalize(a: &HermitianMatrix) -> (Matrix, Vec<Rational>) {
    let n = a.dim();
    let mut s = a.as_matrix().clone();
    let mut p = Matrix::identity(n);
    let mut d = vec![Rational::zero(); n];

    let swap_rows_cols = |s: &mut Matrix, p: &mut Matrix, x: usize, y: usize| {
        if x == y {
            return;
        }
        let n = s.dim();
        for c in 0..n {
            let tmp = s.at(x, c).clone();
            s.set(x, c, s.at(y, c).clone());
            s.set(y, c, tmp);
        }
        for r in 0..n {
            let tmp = s.at(r, x).clone();
            s.set(r, x, s.at(r, y).clone());
            s.set(r, y, tmp);
        }
        for c in 0..n {
            let tmp = p.at(x, c).clone();
            p.set(x, c, p.at(y, c).clone());
            p.set(y, c, tmp);
        }
    };
    // congruence e_x += c*e_y applied to s (rows and columns) and p (rows)
    let add_row = |s: &mut Matrix, p: &mut Matrix, x: usize, y: usize, c: &GaussianRational| {
        let n = s.dim();
        for col in 0..n {
            let upd = &s.at(x, col).clone() + &(c * s.at(y, col));
            s.set(x, col, upd);
        }
        for row in 0..n {
            let upd = &s.at(row, x).clone() + &(&c.conj() * s.at(row, y));
            s.set(row, x, upd);
        }
        for col in 0..n {
            let upd = &p.at(x, col).clone() + &(c * p.at(y, col));
            p.set(x, col, upd);
        }
    };

    for j in 0..n {
        if s.at(j, j).is_zero() {
            if let Some(k) = (j + 1..n).find(|&k| !s.at(k, k).is_zero()) {
                swap_rows_cols(&mut s, &mut p, j, k);
            } else {
                // all trailing diagonal entries vanish; look off-diagonal
                let mut found = None;
                'scan: for x in j..n {
                    for y in x + 1..n {
                        if !s.at(x, y).is_zero() {
                            found = Some((x, y));
                            break 'scan;
                        }
                    }
                }
                let Some((x, y)) = found else {
                    break; // trailing block is zero; D stays zero there
                };
                swap_rows_cols(&mut s, &mut p, j, x);
                // with both diagonals zero, one of the two additions must
                // produce a nonzero diagonal since S_jy != 0
                if !s.at(j, y).re.is_zero() {
                    add_row(&mut s, &mut p, j, y, &GaussianRational::one());
                } else {
                    add_row(&mut s, &mut p, j, y, &GaussianRational::i());
                }
            }
        }
        let piv = s.at(j, j).clone();
        debug_assert!(piv.is_real());
        if piv.is_zero() {
            continue;
        }
        let inv = piv.inv().expect("nonzero pivot");
        for k in j + 1..n {
            let f = s.at(k, j) * &inv;
            if !f.is_zero() {
                add_row(&mut s, &mut p, k, j, &(-&f));
            }
        }
        d[j] = s.at(j, j).re.clone();
    }
    (p, d)
}

/// Signature of a real diagonal: (positive, negative, zero) counts.
pub fn inertia(d: &[Rational]) -> (usize, usize, usize) {
    let mut sig = (0, 0, 0);
    for v in d {
        if v.is_positive() {
            sig.0 += 1;
        } else if v.is_negative() {
            sig.1 += 1;
        } else {
            sig.2 += 1;
        }
    }
    sig
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn g(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_rational(rat(n, d))
    }

    fn gi(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
        GaussianRational::new(rat(re.0, re.1), rat(im.0, im.1))
    }

    fn herm(rows: Vec<Vec<GaussianRational>>) -> HermitianMatrix {
        HermitianMatrix::new(Matrix::from_rows(rows).unwrap()).unwrap()
    }

    /// [[2, 1+i], [1-i, 1]]: PSD with eigenvalues 0 and 3.
    fn example_rank_one_plus() -> HermitianMatrix {
        herm(vec![
            vec![g(2, 1), gi((1, 1), (1, 1))],
            vec![gi((1, 1), (-1, 1)), g(1, 1)],
        ])
    }

    #[test]
    fn psd_identity() {
        let a = HermitianMatrix::diagonal(&[rat(1, 1), rat(1, 1)]);
        assert_eq!(psd_check(&a), PsdOutcome::Psd);
    }

    #[test]
    fn psd_diag_negative_gives_coordinate_witness() {
        let a = HermitianMatrix::diagonal(&[rat(1, 1), rat(-1, 1)]);
        match psd_check(&a) {
            PsdOutcome::NotPsd(w) => {
                assert_eq!(w, vec![g(0, 1), g(1, 1)]);
                let val = a.as_matrix().quadratic_form(&w).unwrap();
                assert_eq!(val, g(-1, 1));
            }
            PsdOutcome::Psd => panic!("diag(1,-1) is not PSD"),
        }
    }

    #[test]
    fn psd_complex_example() {
        assert_eq!(psd_check(&example_rank_one_plus()), PsdOutcome::Psd);
        // float eigenvalue oracle: roots of x^2 - 3x are 0 and 3
        let m = example_rank_one_plus();
        let na = nalgebra::DMatrix::from_fn(2, 2, |j, k| {
            let (re, im) = m.at(j, k).to_complex_f64();
            nalgebra::Complex::new(re, im)
        });
        let eig = na.symmetric_eigenvalues();
        let mut ev: Vec<f64> = eig.iter().cloned().collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ev[0] - 0.0).abs() < 1e-12 && (ev[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn psd_zero_diagonal_nonzero_row() {
        let a = herm(vec![vec![g(0, 1), g(1, 1)], vec![g(1, 1), g(0, 1)]]);
        match psd_check(&a) {
            PsdOutcome::NotPsd(w) => {
                let val = a.as_matrix().quadratic_form(&w).unwrap();
                assert!(val.is_real() && val.re.is_negative());
                assert_eq!(w.iter().filter(|c| !c.is_zero()).count(), 2);
            }
            PsdOutcome::Psd => panic!("[[0,1],[1,0]] is not PSD"),
        }
    }

    #[test]
    fn ldlt_examples() {
        let a = HermitianMatrix::diagonal(&[rat(4, 1), rat(9, 1)]);
        let terms = ldlt_decompose(&a).unwrap();
        assert_eq!(
            terms,
            vec![
                (rat(4, 1), vec![g(1, 1), g(0, 1)]),
                (rat(9, 1), vec![g(0, 1), g(1, 1)]),
            ]
        );

        let a = herm(vec![vec![g(1, 1), g(1, 1)], vec![g(1, 1), g(1, 1)]]);
        let terms = ldlt_decompose(&a).unwrap();
        assert_eq!(terms, vec![(rat(1, 1), vec![g(1, 1), g(1, 1)])]);

        let a = example_rank_one_plus();
        let terms = ldlt_decompose(&a).unwrap();
        assert_eq!(
            terms,
            vec![(rat(2, 1), vec![g(1, 1), gi((1, 2), (-1, 2))])]
        );
        // exact re-multiplication: A = sum w c c^dagger
        assert_remultiplies(&a, &terms);
    }

    #[test]
    fn ldlt_rejects_indefinite() {
        let a = HermitianMatrix::diagonal(&[rat(1, 1), rat(-1, 1)]);
        assert_eq!(ldlt_decompose(&a), Err(Error::NotPsd));
    }

    fn assert_remultiplies(a: &HermitianMatrix, terms: &[(Rational, Vec<GaussianRational>)]) {
        let n = a.dim();
        let mut acc = Matrix::zero(n);
        for (w, c) in terms {
            let wg = GaussianRational::from_rational(w.clone());
            for j in 0..n {
                for k in 0..n {
                    let v = &acc.at(j, k).clone() + &(&(&(&c[j] * &c[k].conj()) * &wg)).clone();
                    acc.set(j, k, v);
                }
            }
        }
        assert_eq!(&acc, a.as_matrix());
    }

    #[test]
    fn congruence_diagonal_is_fixed_point() {
        let a = HermitianMatrix::diagonal(&[rat(-1, 1), rat(5, 1)]);
        let (p, d) = congruence_diagonalize(&a);
        assert_eq!(p, Matrix::identity(2));
        assert_eq!(d, vec![rat(-1, 1), rat(5, 1)]);
    }

    #[test]
    fn congruence_offdiagonal_example() {
        let a = herm(vec![vec![g(0, 1), g(1, 1)], vec![g(1, 1), g(0, 1)]]);
        let (p, d) = congruence_diagonalize(&a);
        assert_congruence(&a, &p, &d);
        assert_eq!(inertia(&d), (1, 1, 0));
    }

    #[test]
    fn congruence_schur_example() {
        let a = example_rank_one_plus();
        let (p, d) = congruence_diagonalize(&a);
        assert_congruence(&a, &p, &d);
        assert_eq!(d, vec![rat(2, 1), rat(0, 1)]);
    }

    fn assert_congruence(a: &HermitianMatrix, p: &Matrix, d: &[Rational]) {
        assert!(!p.determinant().is_zero(), "P must be invertible");
        let pap = p
            .mul(a.as_matrix())
            .unwrap()
            .mul(&p.adjoint())
            .unwrap();
        let dm = HermitianMatrix::diagonal(d);
        assert_eq!(pap, *dm.as_matrix());
    }

    #[test]
    fn inertia_invariant_under_permutation() {
        // Sylvester: sign counts agree for A and a permuted copy
        let a = herm(vec![
            vec![g(0, 1), g(2, 1), g(1, 1)],
            vec![g(2, 1), g(-3, 1), g(0, 1)],
            vec![g(1, 1), g(0, 1), g(1, 2)],
        ]);
        let (p1, d1) = congruence_diagonalize(&a);
        assert_congruence(&a, &p1, &d1);
        let perm = [2usize, 0, 1];
        let b = HermitianMatrix::from_upper(3, |j, k| {
            let (pj, pk) = (perm[j], perm[k]);
            if pj <= pk {
                a.at(pj, pk).clone()
            } else {
                a.at(pk, pj).conj()
            }
        })
        .unwrap();
        let (p2, d2) = congruence_diagonalize(&b);
        assert_congruence(&b, &p2, &d2);
        assert_eq!(inertia(&d1), inertia(&d2));
    }

    #[test]
    fn grid_round_trip() {
        let a = example_rank_one_plus();
        let text = a.as_matrix().to_string();
        let back = Matrix::parse_grid(&text).unwrap();
        assert_eq!(&back, a.as_matrix());
    }
}
